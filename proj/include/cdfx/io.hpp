// Copyright 2026 The cdfx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace cdfx::io {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

nlohmann::json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline; stable for identical input.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string digest(std::string_view bytes);
std::string file_digest(const std::filesystem::path& path);

}  // namespace cdfx::io

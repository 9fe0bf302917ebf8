/*
 * Copyright 2026 The Claimgate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace claimgate {

using Json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path);

// Writes through a sibling temp file and renames it into place, so readers
// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

void append_line(const std::filesystem::path& path, std::string_view line);

// Calls `visit(line_number, json)` for every non-blank line. Line numbers are
// 1-based. Malformed JSON raises a schema-violation naming the line.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const Json&)>& visit);

std::vector<Json> read_jsonl(const std::filesystem::path& path);

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows);

std::string sha256_hex(std::string_view data);

std::string base64_encode(std::string_view data);

std::string utc_timestamp();

// First JSON object embedded in free text (model replies often wrap JSON in
// prose or markdown fences). Returns nullopt when none parses.
std::optional<Json> extract_json_object(std::string_view text);

}  // namespace claimgate

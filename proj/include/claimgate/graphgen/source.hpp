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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "claimgate/common/io.hpp"

namespace claimgate::graphgen {

enum class Domain { kNli4ct, kScitab, kSciver };

const char* to_string(Domain d);
Domain domain_from_string(const std::string& s);

struct ClinicalEvidence {
  std::string excerpt;
  std::string full_document;
};

struct TableEvidence {
  std::string caption;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ChartEvidence {
  std::filesystem::path image;
  std::string caption;
};

using Evidence = std::variant<ClinicalEvidence, TableEvidence, ChartEvidence>;

// Domain each evidence shape belongs to.
Domain evidence_domain(const Evidence& e);

// Plain-text rendering used in prompts and text screens. Tables render as a
// pipe-separated grid; charts contribute only their caption.
std::string evidence_text(const Evidence& e);
std::optional<std::filesystem::path> evidence_image(const Evidence& e);

// {"kind": "clinical", "excerpt", "full_document"}
// {"kind": "table", "caption", "columns": [...], "rows": [[...]]}
// {"kind": "chart", "image", "caption"}
// Relative image paths resolve against `base_dir` and must exist.
Json evidence_to_json(const Evidence& e);
Evidence evidence_from_json(const Json& j, const std::filesystem::path& base_dir = {});

struct SourceRecord {
  std::string id;
  Domain domain = Domain::kNli4ct;
  Evidence evidence;
  std::string feasible_claim;

  Json to_json() const;
  // Checks that the domain tag matches the evidence shape (schema-violation).
  static SourceRecord from_json(const Json& j, const std::filesystem::path& base_dir = {});
};

// JSONL loader; errors name the offending line.
std::vector<SourceRecord> load_sources(const std::filesystem::path& path);

}  // namespace claimgate::graphgen

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

#include "claimgate/graphgen/source.hpp"

#include "claimgate/common/error.hpp"

namespace claimgate::graphgen {

namespace fs = std::filesystem;

const char* to_string(Domain d) {
  switch (d) {
    case Domain::kNli4ct: return "nli4ct";
    case Domain::kScitab: return "scitab";
    case Domain::kSciver: return "sciver";
  }
  return "nli4ct";
}

Domain domain_from_string(const std::string& s) {
  if (s == "nli4ct") return Domain::kNli4ct;
  if (s == "scitab") return Domain::kScitab;
  if (s == "sciver") return Domain::kSciver;
  throw Error(ErrorCode::kSchemaViolation, "unknown domain '" + s + "'");
}

Domain evidence_domain(const Evidence& e) {
  if (std::holds_alternative<ClinicalEvidence>(e)) return Domain::kNli4ct;
  if (std::holds_alternative<TableEvidence>(e)) return Domain::kScitab;
  return Domain::kSciver;
}

std::string evidence_text(const Evidence& e) {
  if (const auto* c = std::get_if<ClinicalEvidence>(&e)) {
    if (c->full_document.empty()) return c->excerpt;
    return c->excerpt + "\n\n" + c->full_document;
  }
  if (const auto* t = std::get_if<TableEvidence>(&e)) {
    std::string out;
    if (!t->caption.empty()) out += "Caption: " + t->caption + "\n";
    auto row_line = [&](const std::vector<std::string>& cells) {
      out += "|";
      for (const auto& c : cells) out += " " + c + " |";
      out += "\n";
    };
    if (!t->columns.empty()) row_line(t->columns);
    for (const auto& r : t->rows) row_line(r);
    return out;
  }
  const auto& ch = std::get<ChartEvidence>(e);
  return ch.caption;
}

std::optional<fs::path> evidence_image(const Evidence& e) {
  if (const auto* ch = std::get_if<ChartEvidence>(&e)) return ch->image;
  return std::nullopt;
}

Json evidence_to_json(const Evidence& e) {
  if (const auto* c = std::get_if<ClinicalEvidence>(&e)) {
    return {{"kind", "clinical"}, {"excerpt", c->excerpt}, {"full_document", c->full_document}};
  }
  if (const auto* t = std::get_if<TableEvidence>(&e)) {
    return {{"kind", "table"}, {"caption", t->caption}, {"columns", t->columns}, {"rows", t->rows}};
  }
  const auto& ch = std::get<ChartEvidence>(e);
  return {{"kind", "chart"}, {"image", ch.image.string()}, {"caption", ch.caption}};
}

Evidence evidence_from_json(const Json& j, const fs::path& base_dir) {
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "clinical") {
      return ClinicalEvidence{j.at("excerpt").get<std::string>(), j.value("full_document", "")};
    }
    if (kind == "table") {
      TableEvidence t;
      t.caption = j.value("caption", "");
      t.columns = j.value("columns", std::vector<std::string>{});
      t.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
      return t;
    }
    if (kind == "chart") {
      fs::path image = j.at("image").get<std::string>();
      if (image.is_relative() && !base_dir.empty()) image = base_dir / image;
      if (!fs::exists(image)) {
        throw Error(ErrorCode::kAttachmentUnreadable, "chart image not found: " + image.string());
      }
      return ChartEvidence{image, j.value("caption", "")};
    }
    throw Error(ErrorCode::kSchemaViolation, "unknown evidence kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("evidence: ") + e.what());
  }
}

Json SourceRecord::to_json() const {
  return {{"id", id},
          {"domain", to_string(domain)},
          {"evidence", evidence_to_json(evidence)},
          {"feasible_claim", feasible_claim}};
}

SourceRecord SourceRecord::from_json(const Json& j, const fs::path& base_dir) {
  SourceRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.domain = domain_from_string(j.at("domain").get<std::string>());
    r.evidence = evidence_from_json(j.at("evidence"), base_dir);
    r.feasible_claim = j.value("feasible_claim", "");
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("source record: ") + e.what());
  }
  if (evidence_domain(r.evidence) != r.domain) {
    throw Error(ErrorCode::kSchemaViolation, "source '" + r.id + "': domain " +
                                                 to_string(r.domain) +
                                                 " does not match its evidence payload");
  }
  return r;
}

std::vector<SourceRecord> load_sources(const fs::path& path) {
  std::vector<SourceRecord> out;
  fs::path base = path.parent_path();
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      out.push_back(SourceRecord::from_json(j, base));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace claimgate::graphgen

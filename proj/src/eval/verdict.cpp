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

#include "claimgate/eval/verdict.hpp"

#include <cctype>

#include "claimgate/common/error.hpp"

namespace claimgate::eval {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

// Drops markdown emphasis, code and heading marks, lowercases, trims.
std::string normalize(const std::string& line) {
  std::string out;
  for (unsigned char c : line) {
    if (c == '*' || c == '_' || c == '`' || c == '#') continue;
    out += static_cast<char>(std::tolower(c));
  }
  auto b = out.find_first_not_of(" \t>");
  if (b == std::string::npos) return "";
  auto e = out.find_last_not_of(" \t");
  return out.substr(b, e - b + 1);
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-'; }

// Last standalone feasible/infeasible token in `s`, if any.
std::optional<Verdict> last_token(const std::string& s) {
  std::optional<Verdict> found;
  for (std::size_t pos = s.find("feasible"); pos != std::string::npos;
       pos = s.find("feasible", pos + 1)) {
    std::size_t begin = pos;
    bool infeasible = pos >= 2 && s.compare(pos - 2, 2, "in") == 0;
    if (infeasible) begin = pos - 2;
    std::size_t end = pos + 8;
    if (begin > 0 && is_word_char(s[begin - 1])) continue;
    if (end < s.size() && is_word_char(s[end])) continue;
    bool negated = !infeasible && begin >= 4 && s.compare(begin - 4, 4, "not ") == 0;
    found = (infeasible || negated) ? Verdict::kInfeasible : Verdict::kFeasible;
  }
  return found;
}

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

// Content after "<key>:" when the line starts with that key.
std::optional<std::string> after_key(const std::string& norm, std::string_view key) {
  if (!starts_with(norm, key)) return std::nullopt;
  auto rest = norm.substr(key.size());
  auto b = rest.find_first_not_of(" \t");
  if (b == std::string::npos || rest[b] != ':') return std::nullopt;
  return rest.substr(b + 1);
}

// Text after the last "verdict:" label on the line, which may follow other
// text ("Reason: ... Verdict: INFEASIBLE").
std::optional<std::string> after_verdict_label(const std::string& norm) {
  std::optional<std::string> found;
  for (std::size_t pos = norm.find("verdict"); pos != std::string::npos;
       pos = norm.find("verdict", pos + 1)) {
    if (pos > 0 && is_word_char(norm[pos - 1])) continue;
    auto colon = norm.find_first_not_of(" \t", pos + 7);
    if (colon == std::string::npos || norm[colon] != ':') continue;
    found = norm.substr(colon + 1);
  }
  return found;
}

std::string strip_bullet(const std::string& raw) {
  std::size_t i = raw.find_first_not_of(" \t");
  if (i == std::string::npos) return "";
  if (raw[i] == '-' || raw[i] == '*' || raw[i] == '+') {
    ++i;
  } else if (std::isdigit(static_cast<unsigned char>(raw[i]))) {
    while (i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i]))) ++i;
    if (i < raw.size() && (raw[i] == '.' || raw[i] == ')')) ++i;
  } else {
    return "";
  }
  auto b = raw.find_first_not_of(" \t", i);
  if (b == std::string::npos) return "";
  auto e = raw.find_last_not_of(" \t");
  return raw.substr(b, e - b + 1);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return "feasible";
    case Verdict::kInfeasible: return "infeasible";
    case Verdict::kUnparseable: return "unparseable";
  }
  return "unparseable";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "feasible") return Verdict::kFeasible;
  if (s == "infeasible") return Verdict::kInfeasible;
  if (s == "unparseable") return Verdict::kUnparseable;
  throw Error(ErrorCode::kSchemaViolation, "unknown verdict '" + s + "'");
}

std::optional<Label> as_label(Verdict v) {
  if (v == Verdict::kFeasible) return Label::kFeasible;
  if (v == Verdict::kInfeasible) return Label::kInfeasible;
  return std::nullopt;
}

ParsedVerdict parse_verdict(std::string_view response) {
  ParsedVerdict out;
  auto lines = split_lines(response);
  std::vector<std::string> norm;
  norm.reserve(lines.size());
  for (const auto& l : lines) norm.push_back(normalize(l));

  for (std::size_t i = lines.size(); i-- > 0;) {
    auto rest = after_verdict_label(norm[i]);
    if (!rest) continue;
    auto v = last_token(*rest);
    if (!v && rest->find_first_not_of(" \t") == std::string::npos) {
      for (std::size_t k = i + 1; k < lines.size(); ++k) {
        if (norm[k].empty()) continue;
        v = last_token(norm[k]);
        break;
      }
    }
    if (v) out.verdict = *v;
    break;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (after_key(norm[i], "reason")) {
      auto colon = lines[i].find(':');
      std::string reason = colon == std::string::npos ? "" : lines[i].substr(colon + 1);
      for (std::size_t k = i + 1; k < lines.size() && !after_verdict_label(norm[k]); ++k) {
        reason += "\n" + lines[k];
      }
      auto b = reason.find_first_not_of(" \t\n*");
      auto e = reason.find_last_not_of(" \t\n");
      out.reason = b == std::string::npos ? "" : reason.substr(b, e - b + 1);
    }
    if (starts_with(norm[i], "subclaims")) {
      for (std::size_t k = i + 1; k < lines.size(); ++k) {
        if (after_key(norm[k], "reason") || after_verdict_label(norm[k])) break;
        if (norm[k].empty()) {
          if (out.subclaims.empty()) continue;
          break;
        }
        auto item = strip_bullet(lines[k]);
        if (item.empty()) break;
        out.subclaims.push_back(item);
      }
    }
  }
  return out;
}

}  // namespace claimgate::eval

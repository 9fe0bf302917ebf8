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

#include "claimgate/graphgen/screen.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

namespace claimgate::graphgen {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string strip_punct(const std::string& t) {
  static const std::string kEdge = ",.;:!?()[]{}\"'`*";
  auto b = t.find_first_not_of(kEdge);
  if (b == std::string::npos) return "";
  auto e = t.find_last_not_of(kEdge);
  return t.substr(b, e - b + 1);
}

std::set<std::string> numbers_in(const std::string& text) {
  static const std::regex kNum(R"(\d+(?:\.\d+)?)");
  std::set<std::string> out;
  for (std::sregex_iterator it(text.begin(), text.end(), kNum), end; it != end; ++it) {
    out.insert(it->str());
  }
  return out;
}

bool has_digit(const std::string& t) {
  return std::any_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
}

const std::set<std::string>& stopwords() {
  static const std::set<std::string> kWords = {
      "a",     "about", "across", "all",   "also",  "an",    "and",   "any",   "are",   "as",
      "at",    "be",    "been",   "being", "both",  "but",   "by",    "can",   "could", "did",
      "do",    "does",  "each",   "either", "for",  "from",  "had",   "has",   "have",  "in",
      "into",  "is",    "it",     "its",   "may",   "more",  "most",  "must",  "no",    "not",
      "of",    "on",    "only",   "or",    "other", "over",  "per",   "should", "so",   "such",
      "than",  "that",  "the",    "their", "then",  "there", "these", "they",  "this",  "those",
      "to",    "under", "very",   "was",   "were",  "what",  "when",  "where", "which", "while",
      "who",   "will",  "with",   "would",
  };
  return kWords;
}

std::set<std::string> content_words(const std::string& text) {
  std::set<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && !stopwords().count(cur)) out.insert(cur);
    cur.clear();
  };
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '_' || c == '.' || c == '-') {
      cur += static_cast<char>(std::tolower(c));
    } else {
      flush();
    }
  }
  flush();
  // Trailing periods belong to the sentence, not the word.
  std::set<std::string> cleaned;
  for (auto w : out) {
    while (!w.empty() && (w.back() == '.' || w.back() == '-')) w.pop_back();
    if (!w.empty() && !stopwords().count(w)) cleaned.insert(w);
  }
  return cleaned;
}

void split_sentences(const std::string& text, std::vector<std::string>& out) {
  std::string cur;
  auto flush = [&] {
    if (cur.find_first_not_of(" \t\r|") != std::string::npos) out.push_back(cur);
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    cur += c;
    bool boundary = c == '\n' || c == ';' || c == '!' || c == '?' ||
                    (c == '.' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]))));
    if (boundary) flush();
  }
  flush();
}

}  // namespace

std::vector<std::string> unknown_entities(const std::string& claim, const std::string& reference) {
  std::string ref = lower(reference);
  auto ref_numbers = numbers_in(reference);
  static const std::regex kBareNumber(R"([+-]?\d+(?:\.\d+)?%?)");

  std::vector<std::string> unknown;
  std::istringstream in(claim);
  std::string raw;
  bool sentence_start = true;
  while (in >> raw) {
    std::string tok = strip_punct(raw);
    bool initial = sentence_start;
    sentence_start = !raw.empty() && (raw.back() == '.' || raw.back() == '!' || raw.back() == '?');
    if (tok.empty()) continue;

    if (std::regex_match(tok, kBareNumber)) {
      for (const auto& n : numbers_in(tok)) {
        if (!ref_numbers.count(n)) unknown.push_back(tok);
      }
      continue;
    }
    bool inner_caps = std::any_of(tok.begin() + 1, tok.end(),
                                  [](unsigned char c) { return std::isupper(c); });
    bool capitalized = std::isupper(static_cast<unsigned char>(tok[0])) && !initial;
    bool entity_like = has_digit(tok) || tok.find('_') != std::string::npos || inner_caps || capitalized;
    if (entity_like && ref.find(lower(tok)) == std::string::npos) unknown.push_back(tok);
  }
  std::sort(unknown.begin(), unknown.end());
  unknown.erase(std::unique(unknown.begin(), unknown.end()), unknown.end());
  return unknown;
}

std::string screen_reference(const SourceRecord& source, const ReasoningGraph& graph) {
  std::string out = evidence_text(source.evidence) + "\n" + source.feasible_claim + "\n";
  for (const auto& n : graph.nodes) out += n.text + "\n";
  return out;
}

std::vector<std::string> evidence_units(const SourceRecord& source, const ReasoningGraph& graph) {
  std::vector<std::string> units;
  split_sentences(evidence_text(source.evidence), units);
  for (const auto* n : graph.layer(Layer::kObservation)) units.push_back(n->text);
  return units;
}

std::optional<std::string> single_step_cover(const std::string& claim,
                                             const std::vector<std::string>& units) {
  auto need = content_words(claim);
  if (need.empty()) return std::nullopt;
  for (const auto& u : units) {
    auto have = content_words(u);
    if (std::includes(have.begin(), have.end(), need.begin(), need.end())) return u;
  }
  return std::nullopt;
}

}  // namespace claimgate::graphgen

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

#include <string>
#include <vector>

#include "claimgate/eval/metrics.hpp"

namespace claimgate::eval {

struct MetricsRow {
  std::string model;
  graphgen::Domain domain = graphgen::Domain::kNli4ct;
  MetricsReport metrics;
};

// One line per model, domains side by side as Pos/Neg/F1/Adv/Δ groups. Drops
// are shown with a down arrow and bolded past 10 points; raw counts follow
// the table.
std::string render_markdown(const std::vector<MetricsRow>& rows);
std::string render_csv(const std::vector<MetricsRow>& rows);
Json render_json(const std::vector<MetricsRow>& rows);
// Inverse of render_json. Errors: schema-violation.
std::vector<MetricsRow> parse_metrics_rows(const Json& j);

std::string render_roc_markdown(const std::string& model, const std::vector<RocPoint>& points);
std::string render_roc_csv(const std::string& model, const std::vector<RocPoint>& points);

// Fixed-precision formatting shared by the renderers ("80.2", "0.86").
std::string fixed(double value, int decimals);
// "↓5.4", "↑1.0", "0.0"; rounding happens before the sign is chosen.
std::string format_delta(double delta);

}  // namespace claimgate::eval

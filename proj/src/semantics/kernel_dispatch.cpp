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

#include <cstdlib>
#include <string_view>

#include "claimgate/semantics/kernels.hpp"

namespace claimgate::semantics {

std::vector<const TruthTableKernels*> available_kernels() {
  std::vector<const TruthTableKernels*> out{&scalar_kernels()};
  if (const auto* k = avx2_kernels()) out.push_back(k);
  if (const auto* k = neon_kernels()) out.push_back(k);
  return out;
}

namespace {

const TruthTableKernels& select_kernels() {
  const char* env = std::getenv("CLAIMGATE_KERNELS");
  std::string_view want = env ? env : "auto";
  if (want == "scalar") return scalar_kernels();
  if (want == "avx2") {
    const auto* k = avx2_kernels();
    return k ? *k : scalar_kernels();
  }
  if (want == "neon") {
    const auto* k = neon_kernels();
    return k ? *k : scalar_kernels();
  }
  if (const auto* k = avx2_kernels()) return *k;
  if (const auto* k = neon_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const TruthTableKernels& active_kernels() {
  static const TruthTableKernels& chosen = select_kernels();
  return chosen;
}

}  // namespace claimgate::semantics

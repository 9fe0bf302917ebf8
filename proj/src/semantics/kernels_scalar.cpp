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

#include "claimgate/semantics/kernels.hpp"

namespace claimgate::semantics {
namespace {

void and_scalar(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

void or_scalar(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

void not_scalar(std::span<std::uint64_t> dst) {
  for (auto& w : dst) w = ~w;
}

bool any_andnot_scalar(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return true;
  }
  return false;
}

bool any_set_scalar(std::span<const std::uint64_t> a) {
  for (auto w : a) {
    if (w) return true;
  }
  return false;
}

}  // namespace

const TruthTableKernels& scalar_kernels() {
  static const TruthTableKernels k{"scalar", and_scalar, or_scalar, not_scalar,
                                   any_andnot_scalar, any_set_scalar};
  return k;
}

}  // namespace claimgate::semantics

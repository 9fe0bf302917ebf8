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

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace claimgate::semantics {

// Word-parallel primitives over packed truth tables. Every variant must give
// bit-identical results to the scalar reference; tests/semantics checks this
// for each variant the host can execute.
//
// Binary operations require dst.size() == src.size().
struct TruthTableKernels {
  std::string_view name;
  void (*bit_and)(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
  void (*bit_or)(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
  void (*bit_not)(std::span<std::uint64_t> dst);
  // True iff some bit is set in `a` and clear in `b` (a & ~b != 0).
  bool (*any_andnot)(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
  bool (*any_set)(std::span<const std::uint64_t> a);
};

const TruthTableKernels& scalar_kernels();

// Null when the variant was not compiled for this target or the CPU lacks it.
const TruthTableKernels* avx2_kernels();
const TruthTableKernels* neon_kernels();

// Every variant usable on this host, scalar first.
std::vector<const TruthTableKernels*> available_kernels();

// Fastest available variant. CLAIMGATE_KERNELS=scalar|avx2|neon overrides
// the choice; an unavailable override falls back to scalar.
const TruthTableKernels& active_kernels();

}  // namespace claimgate::semantics

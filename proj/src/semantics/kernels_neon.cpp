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

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace claimgate::semantics {

#if defined(__aarch64__)
namespace {

// NEON is baseline on AArch64, so no runtime probe is needed.

void and_neon(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_u64(dst.data() + i, vandq_u64(vld1q_u64(dst.data() + i), vld1q_u64(src.data() + i)));
  }
  for (; i < n; ++i) dst[i] &= src[i];
}

void or_neon(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_u64(dst.data() + i, vorrq_u64(vld1q_u64(dst.data() + i), vld1q_u64(src.data() + i)));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

void not_neon(std::span<std::uint64_t> dst) {
  std::size_t n = dst.size();
  std::size_t i = 0;
  const uint64x2_t ones = vdupq_n_u64(~std::uint64_t{0});
  for (; i + 2 <= n; i += 2) {
    vst1q_u64(dst.data() + i, veorq_u64(vld1q_u64(dst.data() + i), ones));
  }
  for (; i < n; ++i) dst[i] = ~dst[i];
}

bool any_andnot_neon(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t diff = vbicq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i));
    if (vgetq_lane_u64(diff, 0) | vgetq_lane_u64(diff, 1)) return true;
  }
  for (; i < n; ++i) {
    if (a[i] & ~b[i]) return true;
  }
  return false;
}

bool any_set_neon(std::span<const std::uint64_t> a) {
  std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t v = vld1q_u64(a.data() + i);
    if (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) return true;
  }
  for (; i < n; ++i) {
    if (a[i]) return true;
  }
  return false;
}

}  // namespace

const TruthTableKernels* neon_kernels() {
  static const TruthTableKernels k{"neon", and_neon, or_neon, not_neon, any_andnot_neon,
                                   any_set_neon};
  return &k;
}

#else

const TruthTableKernels* neon_kernels() { return nullptr; }

#endif

}  // namespace claimgate::semantics

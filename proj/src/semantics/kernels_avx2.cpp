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

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define CLAIMGATE_HAVE_AVX2_TU 1
#define CLAIMGATE_TARGET_AVX2 __attribute__((target("avx2")))
#endif

namespace claimgate::semantics {

#ifdef CLAIMGATE_HAVE_AVX2_TU
namespace {

// 4 words per 256-bit lane group; tails fall through to plain word loops.

CLAIMGATE_TARGET_AVX2
void and_avx2(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    __m256i a = _mm256_loadu_si256(d);
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    _mm256_storeu_si256(d, _mm256_and_si256(a, b));
  }
  for (; i < n; ++i) dst[i] &= src[i];
}

CLAIMGATE_TARGET_AVX2
void or_avx2(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    __m256i a = _mm256_loadu_si256(d);
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    _mm256_storeu_si256(d, _mm256_or_si256(a, b));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

CLAIMGATE_TARGET_AVX2
void not_avx2(std::span<std::uint64_t> dst) {
  std::size_t n = dst.size();
  std::size_t i = 0;
  const __m256i ones = _mm256_set1_epi64x(-1);
  for (; i + 4 <= n; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    _mm256_storeu_si256(d, _mm256_xor_si256(_mm256_loadu_si256(d), ones));
  }
  for (; i < n; ++i) dst[i] = ~dst[i];
}

CLAIMGATE_TARGET_AVX2
bool any_andnot_avx2(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    // testc(vb, va) == 1 iff (~vb & va) == 0.
    if (!_mm256_testc_si256(vb, va)) return true;
  }
  for (; i < n; ++i) {
    if (a[i] & ~b[i]) return true;
  }
  return false;
}

CLAIMGATE_TARGET_AVX2
bool any_set_avx2(std::span<const std::uint64_t> a) {
  std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    if (!_mm256_testz_si256(va, va)) return true;
  }
  for (; i < n; ++i) {
    if (a[i]) return true;
  }
  return false;
}

}  // namespace

const TruthTableKernels* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const TruthTableKernels k{"avx2", and_avx2, or_avx2, not_avx2, any_andnot_avx2,
                                   any_set_avx2};
  return supported ? &k : nullptr;
}

#else

const TruthTableKernels* avx2_kernels() { return nullptr; }

#endif

}  // namespace claimgate::semantics

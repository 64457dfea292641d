// Copyright 2026 The bosonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOSONSIM_PERMANENT_HPP
#define BOSONSIM_PERMANENT_HPP

#include <cstddef>
#include <cstdint>

#include "bosonsim/matrix.hpp"

namespace bosonsim {

/// Largest size accepted by `permanent_naive` (9! ~ 3.6e5 terms).
inline constexpr std::size_t kNaivePermanentLimit = 9;

/// Largest size accepted by `permanent_ryser`. Runtime grows as 2^n * n:
/// about 10 ms at n = 20, a few seconds at n = 24, and roughly an hour
/// per core at n = 30.
inline constexpr std::size_t kRyserPermanentLimit = 30;

/// Sum over all permutations of the products M[i, sigma(i)].
/// Throws DimensionError for non-square input, SizeLimitError for n > 9.
Complex permanent_naive(const ComplexMatrix& m);

struct RyserOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  /// The result does not depend on this value.
  unsigned threads = 0;
};

/// Ryser inclusion-exclusion with Gray-code ordered column subsets, O(2^n n).
///
/// The subset range is cut into a fixed number of contiguous chunks that
/// depends on n only. Chunks are reduced sequentially and their partial sums
/// combined in chunk order, so the value is bit-identical for every thread
/// count.
Complex permanent_ryser(const ComplexMatrix& m, RyserOptions options = {});

/// max |(M^dagger M - I)_{rc}| <= tol. Throws DimensionError if not square.
bool is_unitary(const ComplexMatrix& m, double tol);

/// Haar-random m x m unitary: complex Gaussian matrix, Householder QR, and
/// the phase fix Q * diag(R_ii / |R_ii|). Identical output for identical
/// (m, seed). Throws DimensionError for m = 0.
ComplexMatrix random_unitary(std::size_t m, std::uint64_t seed);

}  // namespace bosonsim

#endif  // BOSONSIM_PERMANENT_HPP

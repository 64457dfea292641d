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

#include "bosonsim/permanent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "bosonsim/error.hpp"

namespace bosonsim {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

// Chunk count depends on n only so the reduction order is fixed.
std::uint64_t ryser_chunks(std::size_t n) { return n < 14 ? 1 : 64; }

// Signed Ryser sum over Gray-code indices [lo, hi), lo >= 1.
Complex ryser_range(const std::vector<Complex>& columns, std::size_t n, std::uint64_t lo,
                    std::uint64_t hi) {
  std::vector<Complex> row_sums(n);
  std::uint64_t gray = lo ^ (lo >> 1);
  for (std::size_t j = 0; j < n; ++j) {
    if ((gray >> j) & 1U) {
      const Complex* col = &columns[j * n];
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += col[i];
    }
  }

  auto term = [&] {
    Complex prod = row_sums[0];
    for (std::size_t i = 1; i < n; ++i) prod *= row_sums[i];
    return (std::popcount(gray) & 1) ? -prod : prod;
  };

  Complex total = term();
  for (std::uint64_t k = lo + 1; k < hi; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    gray ^= std::uint64_t{1} << j;
    const Complex* col = &columns[j * n];
    if ((gray >> j) & 1U) {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += col[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] -= col[i];
    }
    total += term();
  }
  return total;
}

}  // namespace

Complex permanent_naive(const ComplexMatrix& m) {
  require_square(m, "permanent_naive");
  const std::size_t n = m.rows();
  if (n > kNaivePermanentLimit) {
    throw SizeLimitError("permanent_naive: n = " + std::to_string(n) + " exceeds limit " +
                         std::to_string(kNaivePermanentLimit));
  }
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  Complex total{};
  do {
    Complex prod{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) prod *= m(i, sigma[i]);
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

Complex permanent_ryser(const ComplexMatrix& m, RyserOptions options) {
  require_square(m, "permanent_ryser");
  const std::size_t n = m.rows();
  if (n > kRyserPermanentLimit) {
    throw SizeLimitError("permanent_ryser: n = " + std::to_string(n) + " exceeds limit " +
                         std::to_string(kRyserPermanentLimit));
  }
  if (n == 1) return m(0, 0);

  std::vector<Complex> columns(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) columns[j * n + i] = m(i, j);
  }

  const std::uint64_t end = std::uint64_t{1} << n;
  const std::uint64_t chunks = ryser_chunks(n);
  const std::uint64_t span = (end - 1 + chunks - 1) / chunks;
  std::vector<Complex> partial(chunks);
  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t lo = 1 + c * span;
    const std::uint64_t hi = std::min(end, lo + span);
    if (lo < hi) partial[c] = ryser_range(columns, n, lo, hi);
  };

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, chunks));
  if (threads == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t c = t; c < chunks; c += threads) run_chunk(c);
      });
    }
  }

  Complex total{};
  for (const Complex& p : partial) total += p;
  return (n & 1U) ? -total : total;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  require_square(m, "is_unitary");
  const std::size_t n = m.rows();
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Complex dot{};
      for (std::size_t k = 0; k < n; ++k) dot += std::conj(m(k, r)) * m(k, c);
      if (r == c) dot -= 1.0;
      worst = std::max(worst, std::abs(dot));
    }
  }
  return worst <= tol;
}

ComplexMatrix random_unitary(std::size_t m, std::uint64_t seed) {
  if (m == 0) throw DimensionError("random_unitary: m must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Eigen::MatrixXcd gaussian(m, m);
  for (Eigen::Index r = 0; r < gaussian.rows(); ++r) {
    for (Eigen::Index c = 0; c < gaussian.cols(); ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      gaussian(r, c) = Complex(re, im);
    }
  }

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }

  ComplexMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out(i, j) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

}  // namespace bosonsim

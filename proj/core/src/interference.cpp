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

#include "bosonsim/interference.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "bosonsim/error.hpp"

namespace bosonsim {

namespace {

constexpr double kGramTol = 1e-10;

void check_modes(std::span<const std::size_t> modes, std::size_t limit, const char* which) {
  for (std::size_t a = 0; a < modes.size(); ++a) {
    if (modes[a] >= limit) {
      throw DomainError(std::string(which) + " mode " + std::to_string(modes[a]) +
                        " out of range");
    }
    for (std::size_t b = a + 1; b < modes.size(); ++b) {
      if (modes[a] == modes[b]) {
        throw DomainError(std::string(which) + " modes must be distinct");
      }
    }
  }
}

}  // namespace

OverlapMatrix::OverlapMatrix(ComplexMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_square()) throw DomainError("overlap matrix must be square");
  const std::size_t n = gram_.rows();
  Eigen::MatrixXcd dense(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(gram_(j, j) - 1.0) > kGramTol) {
      throw DomainError("overlap matrix diagonal must be 1");
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(gram_(j, k) - std::conj(gram_(k, j))) > kGramTol) {
        throw DomainError("overlap matrix must be Hermitian");
      }
      if (std::abs(gram_(j, k)) > 1.0 + kGramTol) {
        throw DomainError("overlap magnitude exceeds 1");
      }
      dense(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = gram_(j, k);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dense, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kGramTol) {
    throw DomainError("overlap matrix is not positive semidefinite");
  }
}

OverlapMatrix OverlapMatrix::ones(std::size_t n) {
  return OverlapMatrix(ComplexMatrix(n, n, std::vector<Complex>(n * n, 1.0)));
}

OverlapMatrix OverlapMatrix::identity(std::size_t n) {
  return OverlapMatrix(ComplexMatrix::identity(n));
}

double default_sigma_fs(double filter_fwhm_nm, double center_nm) {
  constexpr double kSpeedOfLight = 299792458.0;  // m/s
  const double bandwidth_hz = kSpeedOfLight * filter_fwhm_nm * 1e-9 / std::pow(center_nm * 1e-9, 2);
  // Gaussian time-bandwidth product 2 ln2 / pi.
  const double fwhm_s = 2.0 * std::numbers::ln2 / std::numbers::pi / bandwidth_hz;
  return fwhm_s / (2.0 * std::sqrt(2.0 * std::numbers::ln2)) * 1e15;
}

OverlapMatrix overlap_from_delays(const DelayConfig& config) {
  if (!(config.sigma > 0.0) || !std::isfinite(config.sigma)) {
    throw DomainError("sigma must be positive and finite");
  }
  const std::size_t n = config.delays.size();
  if (n == 0) throw DomainError("need at least one delay");
  for (double d : config.delays) {
    if (!std::isfinite(d)) throw DomainError("delays must be finite");
  }
  ComplexMatrix s(n, n);
  const double scale = 4.0 * config.sigma * config.sigma;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double d = config.delays[j] - config.delays[k];
      s(j, k) = std::exp(-d * d / scale);
    }
  }
  return OverlapMatrix(std::move(s));
}

double coincidence_rate(const ComplexMatrix& u, std::span<const std::size_t> in_modes,
                        std::span<const std::size_t> out_modes, const OverlapMatrix& overlap) {
  const std::size_t n = in_modes.size();
  if (!u.is_square()) throw DomainError("coincidence_rate: matrix must be square");
  if (n == 0 || out_modes.size() != n || overlap.size() != n) {
    throw DomainError("coincidence_rate: need equal, non-zero numbers of input modes, "
                      "output modes and overlap rows");
  }
  if (n > kCoincidenceLimit) {
    throw SizeLimitError("coincidence_rate: n = " + std::to_string(n) + " exceeds limit 7");
  }
  check_modes(in_modes, u.rows(), "input");
  check_modes(out_modes, u.rows(), "output");

  // amps[p][k] = U[o_k, i_{sigma_p(k)}] and perms[p] = sigma_p.
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::vector<Complex>> amps;
  do {
    perms.push_back(sigma);
    std::vector<Complex> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = u(out_modes[k], in_modes[sigma[k]]);
    amps.push_back(std::move(a));
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  Complex total{};
  for (std::size_t p = 0; p < perms.size(); ++p) {
    for (std::size_t q = 0; q < perms.size(); ++q) {
      Complex term{1.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) {
        term *= overlap(perms[p][k], perms[q][k]) * amps[p][k] * std::conj(amps[q][k]);
      }
      total += term;
    }
  }
  return std::max(0.0, total.real());
}

std::vector<ScanPoint> hom_scan(const ComplexMatrix& u, std::span<const std::size_t> in_modes,
                                std::span<const std::size_t> out_modes,
                                std::span<const DelayConfig> grid) {
  std::vector<ScanPoint> curve;
  curve.reserve(grid.size());
  for (const DelayConfig& config : grid) {
    if (config.delays.size() != in_modes.size()) {
      throw DomainError("delay grid point has " + std::to_string(config.delays.size()) +
                        " delays for " + std::to_string(in_modes.size()) + " photons");
    }
    curve.push_back({config, coincidence_rate(u, in_modes, out_modes, overlap_from_delays(config))});
  }
  return curve;
}

PairRates pair_rates(const ComplexMatrix& u, ModePair in_pair, ModePair out_pair) {
  check_modes(in_pair, u.rows(), "input");
  check_modes(out_pair, u.rows(), "output");
  const Complex a = u(out_pair[0], in_pair[0]);
  const Complex b = u(out_pair[0], in_pair[1]);
  const Complex c = u(out_pair[1], in_pair[0]);
  const Complex d = u(out_pair[1], in_pair[1]);
  return {std::norm(a * d + b * c), std::norm(a) * std::norm(d) + std::norm(b) * std::norm(c)};
}

double visibility(const ComplexMatrix& u, ModePair in_pair, ModePair out_pair) {
  const PairRates rates = pair_rates(u, in_pair, out_pair);
  if (rates.classical <= kMinClassicalRate) {
    throw UndefinedVisibilityError("classical coincidence rate vanishes for this pair");
  }
  return (rates.classical - rates.quantum) / rates.classical;
}

}  // namespace bosonsim

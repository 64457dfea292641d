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

#ifndef BOSONSIM_INTERFERENCE_HPP
#define BOSONSIM_INTERFERENCE_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bosonsim/matrix.hpp"

namespace bosonsim {

/// Gram matrix of the photons' internal wavepackets. Entry (j, k) is the
/// overlap of the photons entering the j-th and k-th listed input modes.
/// Hermitian, unit diagonal, |S_jk| <= 1 and positive semidefinite.
class OverlapMatrix {
 public:
  /// Throws DomainError unless the invariants hold (to 1e-10).
  explicit OverlapMatrix(ComplexMatrix gram);

  /// Fully indistinguishable photons.
  static OverlapMatrix ones(std::size_t n);
  /// Fully distinguishable photons.
  static OverlapMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return gram_.rows(); }
  const Complex& operator()(std::size_t j, std::size_t k) const noexcept { return gram_(j, k); }
  const ComplexMatrix& matrix() const noexcept { return gram_; }

 private:
  ComplexMatrix gram_;
};

struct DelayConfig {
  std::vector<double> delays;  // one per photon, same time unit as sigma
  double sigma;
};

/// Transform-limited Gaussian width (fs) for a filter of the given FWHM
/// bandwidth. Defaults are the 3 nm filters at 789 nm used for the
/// three-photon experiments; about 130 fs.
double default_sigma_fs(double filter_fwhm_nm = 3.0, double center_nm = 789.0);

/// S_jk = exp(-(tau_j - tau_k)^2 / (4 sigma^2)). Throws DomainError for
/// sigma <= 0 or non-finite delays.
OverlapMatrix overlap_from_delays(const DelayConfig& config);

/// Largest n accepted by `coincidence_rate`; cost is (n!)^2.
inline constexpr std::size_t kCoincidenceLimit = 7;

/// Probability of one photon in each of `out_modes` for photons entering
/// `in_modes` with internal-state overlaps S:
///
///   sum_{sigma, rho} prod_k S[sigma(k), rho(k)] U[o_k, i_sigma(k)] conj(U[o_k, i_rho(k)])
///
/// S = ones gives |Per|^2 of the submatrix; S = identity gives the permanent
/// of its elementwise |.|^2. Modes are 0-based. Throws DomainError for
/// repeated modes or size mismatches and SizeLimitError for n > 7.
double coincidence_rate(const ComplexMatrix& u, std::span<const std::size_t> in_modes,
                        std::span<const std::size_t> out_modes, const OverlapMatrix& overlap);

struct ScanPoint {
  DelayConfig config;
  double rate;
};

/// `coincidence_rate` at each grid point, in grid order.
std::vector<ScanPoint> hom_scan(const ComplexMatrix& u, std::span<const std::size_t> in_modes,
                                std::span<const std::size_t> out_modes,
                                std::span<const DelayConfig> grid);

using ModePair = std::array<std::size_t, 2>;

struct PairRates {
  double quantum;      // S = ones
  double classical;    // S = identity
};

/// Both limit rates for a two-photon (in, out) pair.
PairRates pair_rates(const ComplexMatrix& u, ModePair in_pair, ModePair out_pair);

/// Classical rates at or below this make the visibility undefined.
inline constexpr double kMinClassicalRate = 1e-12;

/// V = (P_D - P_Q) / P_D. Throws UndefinedVisibilityError when P_D <= 1e-12.
double visibility(const ComplexMatrix& u, ModePair in_pair, ModePair out_pair);

}  // namespace bosonsim

#endif  // BOSONSIM_INTERFERENCE_HPP

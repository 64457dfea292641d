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

#ifndef BOSONSIM_RECONSTRUCTION_HPP
#define BOSONSIM_RECONSTRUCTION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bosonsim/circuit.hpp"
#include "bosonsim/interference.hpp"
#include "bosonsim/matrix.hpp"

namespace bosonsim {

struct VisibilityPair {
  ModePair in;
  ModePair out;

  friend bool operator==(const VisibilityPair&, const VisibilityPair&) = default;
};

struct VisibilityRecord {
  VisibilityPair pair;
  double value;
  double sigma;

  friend bool operator==(const VisibilityRecord&, const VisibilityRecord&) = default;
};

/// Single-photon transmission probabilities and two-photon visibilities.
/// singles(j, k) is the probability that a photon entering input k leaves
/// output j; both singles matrices are m x m, row-major.
struct MeasurementDataset {
  std::size_t modes = kDefaultModes;
  std::vector<double> singles;
  std::vector<double> singles_sigma;
  std::vector<VisibilityRecord> visibilities;

  double single(std::size_t out, std::size_t in) const { return singles[out * modes + in]; }
  double single_sigma(std::size_t out, std::size_t in) const {
    return singles_sigma[out * modes + in];
  }

  /// Throws DomainError / DimensionError on inconsistent shapes, negative
  /// uncertainties or out-of-range mode indices.
  void validate() const;

  friend bool operator==(const MeasurementDataset&, const MeasurementDataset&) = default;
};

/// Rescale every singles column (and its uncertainties) to unit sum.
MeasurementDataset normalize_singles(MeasurementDataset data);

/// All C(m,2) x C(m,2) pairs, input pair major, both lexicographic.
std::vector<VisibilityPair> all_visibility_pairs(std::size_t modes);

/// The `count` pairs with the largest classical rate under U; ties keep
/// the order of `all_visibility_pairs`. The paper-sized default is 40.
std::vector<VisibilityPair> default_visibility_pairs(const ComplexMatrix& u,
                                                     std::size_t count = 40);

/// Noiseless observables of a unitary; uncertainties are 0.
MeasurementDataset predict_observables(const ComplexMatrix& u,
                                       std::span<const VisibilityPair> pairs);
MeasurementDataset predict_observables(const CircuitParameters& params,
                                       std::span<const VisibilityPair> pairs);

/// Added to the objective for each pair whose prediction is undefined.
inline constexpr double kUndefinedVisibilityPenalty = 1e6;

/// Sum of squared, uncertainty-weighted differences between predictions for
/// `params` and `data`. Uncertainties <= 0 count as 1.
double objective(const CircuitParameters& params, const MeasurementDataset& data);

struct FitConfig {
  std::size_t restarts = 20;
  std::size_t max_iterations = 500;
  /// Relative objective decrease below which a restart stops.
  double tolerance = 1e-12;
  std::uint64_t seed = 1;
  /// Remaining restarts are skipped once the best residual falls below this.
  double stop_residual = 1e-12;
};

struct ReconstructionResult {
  CircuitParameters params;
  double residual;
  MeasurementDataset predicted;
  std::size_t iterations;     // accepted steps of the selected restart
  std::size_t restarts_used;  // restarts actually run
};

/// Multi-start Levenberg-Marquardt over the 19 default-topology parameters.
/// Deterministic in (data, config). Singles are renormalized on entry.
/// Throws NonConvergenceError if no restart gets below the undefined
/// visibility penalty.
ReconstructionResult fit(const MeasurementDataset& data, const FitConfig& config);

/// Poisson counts with mean counts_per_setting * p for every single and for
/// both rates behind each visibility; uncertainties by Poisson propagation.
MeasurementDataset simulate_dataset(const ComplexMatrix& u, std::size_t counts_per_setting,
                                    std::uint64_t seed, std::span<const VisibilityPair> pairs);
MeasurementDataset simulate_dataset(const CircuitParameters& params,
                                    std::size_t counts_per_setting, std::uint64_t seed,
                                    std::span<const VisibilityPair> pairs);

/// Signed difference a - b folded into [-pi, pi).
double phase_difference(double a, double b);

}  // namespace bosonsim

#endif  // BOSONSIM_RECONSTRUCTION_HPP

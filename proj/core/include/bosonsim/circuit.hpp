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

#ifndef BOSONSIM_CIRCUIT_HPP
#define BOSONSIM_CIRCUIT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bosonsim/matrix.hpp"

namespace bosonsim {

enum class ElementKind { kCoupler, kPhase };

/// Directional coupler on modes (mode, mode + 1) with power reflectivity
/// eta in [0, 1], or a phase shifter on `mode` with phi in [0, 2pi).
/// Modes are 0-based.
struct CircuitElement {
  ElementKind kind;
  std::size_t mode;
  double value;

  static CircuitElement coupler(std::size_t upper_mode, double eta);
  /// phi is wrapped into [0, 2pi).
  static CircuitElement phase(std::size_t mode, double phi);

  friend bool operator==(const CircuitElement&, const CircuitElement&) = default;
};

/// Elements listed from input to output.
class OpticalCircuit {
 public:
  explicit OpticalCircuit(std::size_t mode_count, std::vector<CircuitElement> elements = {});

  std::size_t mode_count() const noexcept { return modes_; }
  std::span<const CircuitElement> elements() const noexcept { return elements_; }

  void append(const CircuitElement& element);

  /// Circuit whose compiled unitary is the adjoint of this one.
  OpticalCircuit inverse() const;

  friend bool operator==(const OpticalCircuit&, const OpticalCircuit&) = default;

 private:
  std::size_t modes_;
  std::vector<CircuitElement> elements_;
};

/// Parameters of the default 5-mode layout.
struct CircuitParameters {
  static constexpr std::size_t kCouplers = 8;
  static constexpr std::size_t kPhases = 11;

  std::vector<double> etas;  // eta_1 .. eta_8
  std::vector<double> phis;  // phi_1 .. phi_11

  /// Throws ArityError / DomainError.
  void validate() const;

  friend bool operator==(const CircuitParameters&, const CircuitParameters&) = default;
};

inline constexpr std::size_t kDefaultModes = 5;

/// Identity except [[T, iR], [iR, T]] (T = sqrt(1 - eta), R = sqrt(eta))
/// on a coupler's mode pair, or e^{i phi} on a phase shifter's mode.
ComplexMatrix element_unitary(const CircuitElement& element, std::size_t mode_count);

/// U = E_k ... E_2 E_1 for elements E_1 .. E_k in circuit order.
ComplexMatrix compile(const OpticalCircuit& circuit);

/// Canonical 5-mode mesh. Couplers act on the (1-based) pairs
/// (1,2) (3,4) (2,3) (4,5) (1,2) (3,4) (2,3) (4,5) in that order; phi_k
/// sits on the upper arm just before coupler k for k = 1..8, and
/// phi_9..phi_11 are output phases on modes 1..3.
OpticalCircuit default_topology(std::span<const double> etas, std::span<const double> phis);
OpticalCircuit default_topology(const CircuitParameters& params);

/// eta ~ U[0.2, 0.8], phi ~ U[0, 2pi), deterministic in seed.
CircuitParameters random_parameters(std::uint64_t seed);
OpticalCircuit random_circuit(std::uint64_t seed);

}  // namespace bosonsim

#endif  // BOSONSIM_CIRCUIT_HPP

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

#include "bosonsim/circuit.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bosonsim/error.hpp"

namespace bosonsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

void check_element(const CircuitElement& e, std::size_t modes) {
  if (e.kind == ElementKind::kCoupler) {
    if (e.mode + 1 >= modes) {
      throw DimensionError("coupler on modes " + std::to_string(e.mode) + "," +
                           std::to_string(e.mode + 1) + " does not fit " +
                           std::to_string(modes) + " modes");
    }
  } else if (e.mode >= modes) {
    throw DimensionError("phase shifter on mode " + std::to_string(e.mode) + " does not fit " +
                         std::to_string(modes) + " modes");
  }
}

// Upper-arm mode of couplers 1..8 in the default mesh (0-based).
constexpr std::array<std::size_t, CircuitParameters::kCouplers> kCouplerModes = {0, 2, 1, 3,
                                                                                 0, 2, 1, 3};

}  // namespace

CircuitElement CircuitElement::coupler(std::size_t upper_mode, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("coupler reflectivity " + std::to_string(eta) + " outside [0, 1]");
  }
  return {ElementKind::kCoupler, upper_mode, eta};
}

CircuitElement CircuitElement::phase(std::size_t mode, double phi) {
  if (!std::isfinite(phi)) throw DomainError("phase must be finite");
  return {ElementKind::kPhase, mode, wrap_phase(phi)};
}

OpticalCircuit::OpticalCircuit(std::size_t mode_count, std::vector<CircuitElement> elements)
    : modes_(mode_count), elements_(std::move(elements)) {
  if (modes_ == 0) throw DimensionError("circuit needs at least one mode");
  for (const CircuitElement& e : elements_) check_element(e, modes_);
}

void OpticalCircuit::append(const CircuitElement& element) {
  check_element(element, modes_);
  elements_.push_back(element);
}

OpticalCircuit OpticalCircuit::inverse() const {
  // diag(1, -1) [[T, iR], [iR, T]] diag(1, -1) is the adjoint coupler block.
  OpticalCircuit inv(modes_);
  for (auto it = elements_.rbegin(); it != elements_.rend(); ++it) {
    if (it->kind == ElementKind::kPhase) {
      inv.append(CircuitElement::phase(it->mode, -it->value));
    } else {
      inv.append(CircuitElement::phase(it->mode + 1, std::numbers::pi));
      inv.append(CircuitElement::coupler(it->mode, it->value));
      inv.append(CircuitElement::phase(it->mode + 1, std::numbers::pi));
    }
  }
  return inv;
}

void CircuitParameters::validate() const {
  if (etas.size() != kCouplers || phis.size() != kPhases) {
    throw ArityError("expected 8 reflectivities and 11 phases, got " +
                     std::to_string(etas.size()) + " and " + std::to_string(phis.size()));
  }
  for (double eta : etas) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("reflectivity outside [0, 1]");
  }
  for (double phi : phis) {
    if (!(phi >= 0.0 && phi < kTwoPi)) throw DomainError("phase outside [0, 2pi)");
  }
}

ComplexMatrix element_unitary(const CircuitElement& element, std::size_t mode_count) {
  check_element(element, mode_count);
  ComplexMatrix u = ComplexMatrix::identity(mode_count);
  const std::size_t i = element.mode;
  if (element.kind == ElementKind::kCoupler) {
    const double t = std::sqrt(1.0 - element.value);
    const double r = std::sqrt(element.value);
    u(i, i) = t;
    u(i, i + 1) = Complex(0.0, r);
    u(i + 1, i) = Complex(0.0, r);
    u(i + 1, i + 1) = t;
  } else {
    u(i, i) = std::polar(1.0, element.value);
  }
  return u;
}

ComplexMatrix compile(const OpticalCircuit& circuit) {
  // Left-multiplying by a single element only touches one or two rows.
  const std::size_t m = circuit.mode_count();
  ComplexMatrix u = ComplexMatrix::identity(m);
  for (const CircuitElement& e : circuit.elements()) {
    const std::size_t i = e.mode;
    if (e.kind == ElementKind::kPhase) {
      const Complex ph = std::polar(1.0, e.value);
      for (std::size_t c = 0; c < m; ++c) u(i, c) *= ph;
    } else {
      const double t = std::sqrt(1.0 - e.value);
      const Complex ir(0.0, std::sqrt(e.value));
      for (std::size_t c = 0; c < m; ++c) {
        const Complex a = u(i, c);
        const Complex b = u(i + 1, c);
        u(i, c) = t * a + ir * b;
        u(i + 1, c) = ir * a + t * b;
      }
    }
  }
  return u;
}

OpticalCircuit default_topology(std::span<const double> etas, std::span<const double> phis) {
  if (etas.size() != CircuitParameters::kCouplers || phis.size() != CircuitParameters::kPhases) {
    throw ArityError("default topology takes 8 reflectivities and 11 phases, got " +
                     std::to_string(etas.size()) + " and " + std::to_string(phis.size()));
  }
  OpticalCircuit c(kDefaultModes);
  for (std::size_t k = 0; k < CircuitParameters::kCouplers; ++k) {
    c.append(CircuitElement::phase(kCouplerModes[k], phis[k]));
    c.append(CircuitElement::coupler(kCouplerModes[k], etas[k]));
  }
  for (std::size_t k = 0; k < 3; ++k) {
    c.append(CircuitElement::phase(k, phis[CircuitParameters::kCouplers + k]));
  }
  return c;
}

OpticalCircuit default_topology(const CircuitParameters& params) {
  return default_topology(params.etas, params.phis);
}

CircuitParameters random_parameters(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eta(0.2, 0.8);
  std::uniform_real_distribution<double> phi(0.0, kTwoPi);
  CircuitParameters p;
  for (std::size_t k = 0; k < CircuitParameters::kCouplers; ++k) p.etas.push_back(eta(rng));
  for (std::size_t k = 0; k < CircuitParameters::kPhases; ++k) p.phis.push_back(wrap_phase(phi(rng)));
  return p;
}

OpticalCircuit random_circuit(std::uint64_t seed) {
  return default_topology(random_parameters(seed));
}

}  // namespace bosonsim

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

#ifndef BOSONSIM_FOCK_HPP
#define BOSONSIM_FOCK_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bosonsim/matrix.hpp"

namespace bosonsim {

/// Occupation-number state |i_1, ..., i_m> over m >= 1 modes.
class FockState {
 public:
  explicit FockState(std::vector<int> occupations);

  /// Parses "0,0,1,1,1". Throws DomainError on malformed text.
  static FockState parse(std::string_view text);

  /// One photon in each listed (0-based) mode.
  static FockState from_modes(std::size_t mode_count, std::span<const std::size_t> modes);

  std::size_t mode_count() const noexcept { return occupations_.size(); }
  int photon_count() const noexcept { return photons_; }
  int operator[](std::size_t mode) const noexcept { return occupations_[mode]; }
  std::span<const int> occupations() const noexcept { return occupations_; }

  /// At most one photon per mode.
  bool is_collision_free() const noexcept;

  /// Mode index of every photon, ascending, with repeats for multiple occupancy.
  std::vector<std::size_t> photon_modes() const;

  /// "0,0,1,1,1".
  std::string to_string() const;

  friend bool operator==(const FockState& a, const FockState& b) {
    return a.occupations_ == b.occupations_;
  }

 private:
  std::vector<int> occupations_;
  int photons_ = 0;
};

/// Hard cap on enumerated basis size.
inline constexpr double kBasisGuard = 1e7;

/// C(m + n - 1, n) in floating point.
double basis_dimension(std::size_t modes, int photons);

/// Every n-photon state over m modes in canonical order: lexicographically
/// decreasing occupation vectors, so (n, 0, ..., 0) comes first.
/// Throws CapacityError when the dimension exceeds kBasisGuard.
std::vector<FockState> enumerate_basis(std::size_t modes, int photons);

/// U_{I,O}: take i_k copies of column k of U, then j_k copies of row k of
/// that m x n matrix. Copies are adjacent, modes ascending.
ComplexMatrix build_submatrix(const ComplexMatrix& u, const FockState& input,
                              const FockState& output);

/// |Per(U_{I,O})|^2 / (prod i_k! prod j_k!), permanent by Ryser.
/// Throws ValidationError if U is not unitary to 1e-8.
double transition_probability(const ComplexMatrix& u, const FockState& input,
                              const FockState& output);

struct Outcome {
  FockState state;
  double probability;
};

struct OutputDistribution {
  FockState input;
  std::vector<Outcome> outcomes;  // canonical basis order
  /// Probability mass before renormalization (1 for full distributions).
  double normalization = 1.0;
};

OutputDistribution full_distribution(const ComplexMatrix& u, const FockState& input);

/// Full distribution restricted to outcomes with all occupations <= 1 and
/// divided by the retained mass, which is stored in `normalization`.
/// Throws DegeneratePostselectionError if that mass is below 1e-12.
OutputDistribution collision_free_distribution(const ComplexMatrix& u, const FockState& input);

/// `count` i.i.d. draws by inverse CDF over the enumerated distribution.
std::vector<FockState> sample(const ComplexMatrix& u, const FockState& input,
                              std::size_t count, std::uint64_t seed, bool collision_free);

/// Draws from an already computed distribution; `sample` forwards here.
std::vector<FockState> sample(const OutputDistribution& distribution, std::size_t count,
                              std::uint64_t seed);

}  // namespace bosonsim

#endif  // BOSONSIM_FOCK_HPP

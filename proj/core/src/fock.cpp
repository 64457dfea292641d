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

#include "bosonsim/fock.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "bosonsim/error.hpp"
#include "bosonsim/permanent.hpp"

namespace bosonsim {

namespace {

constexpr std::size_t kMaxFactorial = 30;

constexpr std::array<double, kMaxFactorial + 1> make_factorials() {
  std::array<double, kMaxFactorial + 1> f{};
  f[0] = 1.0;
  for (std::size_t k = 1; k <= kMaxFactorial; ++k) f[k] = f[k - 1] * static_cast<double>(k);
  return f;
}

constexpr auto kFactorials = make_factorials();

double occupation_factorials(const FockState& s) {
  double prod = 1.0;
  for (int k : s.occupations()) prod *= kFactorials[static_cast<std::size_t>(k)];
  return prod;
}

void check_pair(const ComplexMatrix& u, const FockState& input, const FockState& output) {
  if (!u.is_square()) throw DimensionError("unitary must be square");
  if (input.mode_count() != u.rows() || output.mode_count() != u.rows()) {
    throw DimensionError("state has " + std::to_string(input.mode_count()) + "/" +
                         std::to_string(output.mode_count()) + " modes, matrix has " +
                         std::to_string(u.rows()));
  }
  if (input.photon_count() != output.photon_count()) {
    throw MismatchError("input carries " + std::to_string(input.photon_count()) +
                        " photons, output " + std::to_string(output.photon_count()));
  }
}

void require_unitary(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionError("unitary must be square");
  if (!is_unitary(u, 1e-8)) throw ValidationError("matrix is not unitary to 1e-8");
}

// |Per(U_{I,O})|^2 / (prod i! prod j!) with shapes and unitarity already checked.
double probability_unchecked(const ComplexMatrix& u, const FockState& input,
                             const FockState& output) {
  if (input.photon_count() == 0) return 1.0;
  const Complex per = permanent_ryser(build_submatrix(u, input, output), {.threads = 1});
  return std::norm(per) / (occupation_factorials(input) * occupation_factorials(output));
}

void enumerate_into(std::vector<int>& current, std::size_t mode, int remaining,
                    std::vector<FockState>& out) {
  if (mode + 1 == current.size()) {
    current[mode] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[mode] = k;
    enumerate_into(current, mode + 1, remaining - k, out);
  }
}

}  // namespace

FockState::FockState(std::vector<int> occupations) : occupations_(std::move(occupations)) {
  if (occupations_.empty()) throw DomainError("Fock state needs at least one mode");
  for (int k : occupations_) {
    if (k < 0) throw DomainError("negative occupation number");
    photons_ += k;
  }
  if (static_cast<std::size_t>(photons_) > kMaxFactorial) {
    throw SizeLimitError("more than " + std::to_string(kMaxFactorial) + " photons");
  }
}

FockState FockState::parse(std::string_view text) {
  std::vector<int> occ;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view field = text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw DomainError("malformed occupation list '" + std::string(text) + "'");
    }
    occ.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return FockState(std::move(occ));
}

FockState FockState::from_modes(std::size_t mode_count, std::span<const std::size_t> modes) {
  std::vector<int> occ(mode_count, 0);
  for (std::size_t m : modes) {
    if (m >= mode_count) throw DimensionError("mode index out of range");
    ++occ[m];
  }
  return FockState(std::move(occ));
}

bool FockState::is_collision_free() const noexcept {
  return std::all_of(occupations_.begin(), occupations_.end(), [](int k) { return k <= 1; });
}

std::vector<std::size_t> FockState::photon_modes() const {
  std::vector<std::size_t> modes;
  modes.reserve(static_cast<std::size_t>(photons_));
  for (std::size_t k = 0; k < occupations_.size(); ++k) {
    modes.insert(modes.end(), static_cast<std::size_t>(occupations_[k]), k);
  }
  return modes;
}

std::string FockState::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < occupations_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(occupations_[k]);
  }
  return s;
}

double basis_dimension(std::size_t modes, int photons) {
  // C(m + n - 1, n) as a running product; exact for every size the guard admits.
  double d = 1.0;
  for (int k = 1; k <= photons; ++k) {
    d = d * static_cast<double>(modes - 1 + static_cast<std::size_t>(k)) / k;
  }
  return d;
}

std::vector<FockState> enumerate_basis(std::size_t modes, int photons) {
  if (modes == 0) throw DimensionError("enumerate_basis: need at least one mode");
  if (photons < 0) throw DomainError("enumerate_basis: negative photon number");
  const double dim = basis_dimension(modes, photons);
  if (dim > kBasisGuard) {
    throw CapacityError("basis of dimension " + std::to_string(dim) + " exceeds guard of 1e7");
  }
  std::vector<FockState> out;
  out.reserve(static_cast<std::size_t>(std::llround(dim)));
  std::vector<int> current(modes, 0);
  enumerate_into(current, 0, photons, out);
  return out;
}

ComplexMatrix build_submatrix(const ComplexMatrix& u, const FockState& input,
                              const FockState& output) {
  check_pair(u, input, output);
  if (input.photon_count() == 0) throw MismatchError("build_submatrix needs at least one photon");
  const std::vector<std::size_t> cols = input.photon_modes();
  const std::vector<std::size_t> rows = output.photon_modes();
  const std::size_t n = cols.size();
  ComplexMatrix sub(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) sub(r, c) = u(rows[r], cols[c]);
  }
  return sub;
}

double transition_probability(const ComplexMatrix& u, const FockState& input,
                              const FockState& output) {
  check_pair(u, input, output);
  require_unitary(u);
  return probability_unchecked(u, input, output);
}

OutputDistribution full_distribution(const ComplexMatrix& u, const FockState& input) {
  require_unitary(u);
  if (input.mode_count() != u.rows()) throw DimensionError("input state / matrix mode mismatch");
  OutputDistribution dist{input, {}, 1.0};
  for (FockState& out : enumerate_basis(u.rows(), input.photon_count())) {
    const double p = probability_unchecked(u, input, out);
    dist.outcomes.push_back({std::move(out), p});
  }
  return dist;
}

OutputDistribution collision_free_distribution(const ComplexMatrix& u, const FockState& input) {
  OutputDistribution full = full_distribution(u, input);
  OutputDistribution cf{input, {}, 0.0};
  for (const Outcome& o : full.outcomes) {
    if (o.state.is_collision_free()) {
      cf.normalization += o.probability;
      cf.outcomes.push_back(o);
    }
  }
  if (cf.normalization < 1e-12) {
    char mass[32];
    std::snprintf(mass, sizeof mass, "%.3g", cf.normalization);
    throw DegeneratePostselectionError(std::string("collision-free probability mass ") + mass +
                                       " is below 1e-12");
  }
  for (Outcome& o : cf.outcomes) o.probability /= cf.normalization;
  return cf;
}

std::vector<FockState> sample(const OutputDistribution& distribution, std::size_t count,
                              std::uint64_t seed) {
  if (distribution.outcomes.empty()) throw DomainError("cannot sample an empty distribution");
  std::vector<double> cdf;
  cdf.reserve(distribution.outcomes.size());
  double acc = 0.0;
  for (const Outcome& o : distribution.outcomes) cdf.push_back(acc += o.probability);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, acc);
  std::vector<FockState> draws;
  draws.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = uniform(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    // Skip zero-width bins so impossible outcomes are never drawn.
    auto idx = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    while (distribution.outcomes[idx].probability <= 0.0 && idx + 1 < cdf.size()) ++idx;
    while (distribution.outcomes[idx].probability <= 0.0 && idx > 0) --idx;
    draws.push_back(distribution.outcomes[idx].state);
  }
  return draws;
}

std::vector<FockState> sample(const ComplexMatrix& u, const FockState& input, std::size_t count,
                              std::uint64_t seed, bool collision_free) {
  if (count == 0) throw DomainError("sample count must be positive");
  const OutputDistribution dist =
      collision_free ? collision_free_distribution(u, input) : full_distribution(u, input);
  return sample(dist, count, seed);
}

}  // namespace bosonsim

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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "bosonsim/circuit.hpp"
#include "bosonsim/error.hpp"
#include "bosonsim/fock.hpp"
#include "bosonsim/interference.hpp"
#include "bosonsim/permanent.hpp"
#include "oracles/oracles.hpp"

using namespace bosonsim;

namespace {

ComplexMatrix coupler(double t2) {
  const double t = std::sqrt(t2);
  const double r = std::sqrt(1.0 - t2);
  return {{t, Complex(0, r)}, {Complex(0, r), t}};
}

// Distinct sorted modes drawn from [0, m).
std::vector<std::size_t> pick_modes(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> all(m);
  for (std::size_t k = 0; k < m; ++k) all[k] = k;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(n);
  std::sort(all.begin(), all.end());
  return all;
}

ComplexMatrix abs2_submatrix(const ComplexMatrix& u, const std::vector<std::size_t>& in,
                             const std::vector<std::size_t>& out) {
  ComplexMatrix r(in.size(), in.size());
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = 0; b < in.size(); ++b) r(a, b) = std::norm(u(out[a], in[b]));
  }
  return r;
}

}  // namespace

TEST(Overlap, FromDelays) {
  const OverlapMatrix same = overlap_from_delays({{5.0, 5.0, 5.0}, 2.0});
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(same(j, k), Complex(1.0, 0.0));
  }
  const OverlapMatrix two_sigma = overlap_from_delays({{0.0, 6.0}, 3.0});
  EXPECT_NEAR(two_sigma(0, 1).real(), std::exp(-1.0), 1e-15);
  const OverlapMatrix far = overlap_from_delays({{0.0, 0.0, 1e6 * 1.5}, 1.5});
  EXPECT_LT(std::abs(far(0, 2)), 1e-100);
  EXPECT_LT(std::abs(far(2, 1)), 1e-100);
  EXPECT_EQ(far(0, 1), Complex(1.0, 0.0));
}

TEST(Overlap, Errors) {
  EXPECT_THROW(overlap_from_delays({{0.0, 1.0}, 0.0}), DomainError);
  EXPECT_THROW(overlap_from_delays({{0.0, 1.0}, -1.0}), DomainError);
  EXPECT_THROW(overlap_from_delays({{0.0, INFINITY}, 1.0}), DomainError);
  EXPECT_THROW(OverlapMatrix({{1, 0.5}, {0.2, 1}}), DomainError);
  EXPECT_THROW(OverlapMatrix({{1, 0.5}, {0.5, 0.9}}), DomainError);
  EXPECT_THROW(OverlapMatrix({{1, 0.9, -0.9}, {0.9, 1, 0.9}, {-0.9, 0.9, 1}}), DomainError);
}

TEST(Overlap, DefaultSigmaFromFilter) {
  // 3 nm at 789 nm: dnu = c dlambda / lambda^2, dt = 0.4413 / dnu, sigma = dt / 2.3548.
  const double dnu = 2.99792458e8 * 3e-9 / (789e-9 * 789e-9);
  const double expected = 0.441271 / dnu / 2.354820 * 1e15;
  EXPECT_NEAR(default_sigma_fs(), expected, 1e-3);
  EXPECT_NEAR(default_sigma_fs(), 129.7, 0.2);
}

TEST(CoincidenceRate, IndistinguishableLimitMatchesFock) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 2 + static_cast<std::size_t>(trial % 4);
    const std::size_t n = 1 + static_cast<std::size_t>(trial % std::min<std::size_t>(3, m));
    const ComplexMatrix u = random_unitary(m, 900 + static_cast<std::uint64_t>(trial));
    const auto in = pick_modes(m, n, rng);
    const auto out = pick_modes(m, n, rng);
    const double rate = coincidence_rate(u, in, out, OverlapMatrix::ones(n));
    const double p = transition_probability(u, FockState::from_modes(m, in), FockState::from_modes(m, out));
    EXPECT_NEAR(rate, p, 1e-10);
  }
}

TEST(CoincidenceRate, DistinguishableLimitIsPermanentOfModuli) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 3 + static_cast<std::size_t>(trial % 3);
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    const ComplexMatrix u = random_unitary(m, 300 + static_cast<std::uint64_t>(trial));
    const auto in = pick_modes(m, n, rng);
    const auto out = pick_modes(m, n, rng);
    const double rate = coincidence_rate(u, in, out, OverlapMatrix::identity(n));
    EXPECT_NEAR(rate, permanent_naive(abs2_submatrix(u, in, out)).real(), 1e-10);
  }
}

TEST(CoincidenceRate, BalancedCouplerSuppression) {
  const std::vector<std::size_t> modes = {0, 1};
  EXPECT_NEAR(coincidence_rate(coupler(0.5), modes, modes, OverlapMatrix::ones(2)), 0.0, 1e-15);
  EXPECT_NEAR(coincidence_rate(coupler(0.5), modes, modes, OverlapMatrix::identity(2)), 0.5, 1e-15);
}

TEST(CoincidenceRate, Errors) {
  const ComplexMatrix u = random_unitary(8, 1);
  const std::vector<std::size_t> rep = {1, 1};
  const std::vector<std::size_t> ok = {0, 1};
  EXPECT_THROW(coincidence_rate(u, rep, ok, OverlapMatrix::ones(2)), DomainError);
  EXPECT_THROW(coincidence_rate(u, ok, rep, OverlapMatrix::ones(2)), DomainError);
  EXPECT_THROW(coincidence_rate(u, ok, ok, OverlapMatrix::ones(3)), DomainError);
  const std::vector<std::size_t> eight = {0, 1, 2, 3, 4, 5, 6, 7};
  EXPECT_THROW(coincidence_rate(u, eight, eight, OverlapMatrix::ones(8)), SizeLimitError);
  const std::vector<std::size_t> bad = {0, 9};
  EXPECT_THROW(coincidence_rate(u, bad, ok, OverlapMatrix::ones(2)), DomainError);
}

TEST(CoincidenceRateProperty, MatchesExplicitInternalStates) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);  // 2..4
    const std::size_t m = n + 1;
    const ComplexMatrix u = random_unitary(m, 60 + static_cast<std::uint64_t>(trial));
    const auto in = pick_modes(m, n, rng);
    const auto out = pick_modes(m, n, rng);
    const auto states = oracle::random_states(n, 2, rng);
    const double rate = coincidence_rate(u, in, out, OverlapMatrix(oracle::gram(states)));
    EXPECT_GE(rate, 0.0);
    EXPECT_NEAR(rate, oracle::rate_from_states(u, in, out, states), 1e-10);
  }
}

TEST(CoincidenceRate, SevenPhotons) {
  const ComplexMatrix u = random_unitary(7, 2);
  const std::vector<std::size_t> all = {0, 1, 2, 3, 4, 5, 6};
  EXPECT_NEAR(coincidence_rate(u, all, all, OverlapMatrix::ones(7)), std::norm(permanent_ryser(u)),
              1e-10);
}

TEST(HomScan, TwoPhotonClosedForm) {
  const double sigma = 1.7;
  std::vector<DelayConfig> grid;
  for (int k = -50; k <= 50; ++k) grid.push_back({{0.0, 0.2 * k}, sigma});
  const std::vector<std::size_t> modes = {0, 1};
  const auto curve = hom_scan(coupler(0.5), modes, modes, grid);
  ASSERT_EQ(curve.size(), 101u);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double tau = curve[i].config.delays[1];
    EXPECT_NEAR(curve[i].rate, 0.5 * (1.0 - std::exp(-tau * tau / (2 * sigma * sigma))), 1e-12);
    EXPECT_NEAR(curve[i].rate, curve[curve.size() - 1 - i].rate, 1e-12);
  }
  EXPECT_LT(curve[50].rate, 1e-15);
  for (std::size_t i = 51; i < curve.size(); ++i) EXPECT_GT(curve[i].rate, curve[i - 1].rate);
}

TEST(HomScan, GridPointMustMatchPhotonCount) {
  const std::vector<std::size_t> modes = {0, 1};
  const std::vector<DelayConfig> grid = {{{0.0}, 1.0}};
  EXPECT_THROW(hom_scan(coupler(0.5), modes, modes, grid), DomainError);
}

TEST(HomScan, ThreePhotonJointDelayExtremumAtZero) {
  // Inputs 3,4,5 and outputs 2,4,5 (1-based); photons 4 and 5 delayed together,
  // so far from zero they stay indistinguishable from each other only.
  const std::vector<std::size_t> in = {2, 3, 4};
  const std::vector<std::size_t> out = {1, 3, 4};
  const double sigma = 100.0;
  const std::vector<std::vector<Complex>> block = {{1, 0}, {0, 1}, {0, 1}};
  std::size_t dips = 0;
  std::size_t dips_at_zero = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ComplexMatrix u = compile(random_circuit(s));
    std::vector<DelayConfig> grid;
    for (int k = 0; k <= 40; ++k) grid.push_back({{0.0, 25.0 * k, 25.0 * k}, sigma});
    const auto curve = hom_scan(u, in, out, grid);
    const double quantum = coincidence_rate(u, in, out, OverlapMatrix::ones(3));
    const double apart = oracle::rate_from_states(u, in, out, block);
    EXPECT_NEAR(curve.front().rate, quantum, 1e-12);
    EXPECT_NEAR(curve.back().rate, apart, 1e-9);
    if (quantum < apart) {
      ++dips;
      bool minimum = true;
      for (const auto& p : curve) minimum = minimum && p.rate >= curve.front().rate - 1e-15;
      dips_at_zero += minimum ? 1 : 0;
    }
  }
  EXPECT_GT(dips, 0u);
  EXPECT_EQ(dips_at_zero, dips);
}

TEST(Visibility, Examples) {
  EXPECT_NEAR(visibility(coupler(0.5), {0, 1}, {0, 1}), 1.0, 1e-15);
  EXPECT_NEAR(visibility(ComplexMatrix::identity(2), {0, 1}, {0, 1}), 0.0, 1e-15);
  EXPECT_NEAR(visibility(coupler(0.8), {0, 1}, {0, 1}), 0.32 / 0.68, 1e-12);
  EXPECT_THROW(visibility(ComplexMatrix::identity(3), {0, 1}, {0, 2}), UndefinedVisibilityError);
}

TEST(Visibility, PairRatesAgreeWithGeneralRate) {
  const ComplexMatrix u = compile(random_circuit(4));
  for (const auto& [in, out] : std::vector<std::pair<ModePair, ModePair>>{
           {{0, 1}, {2, 3}}, {{1, 4}, {0, 2}}, {{2, 3}, {3, 4}}}) {
    const PairRates r = pair_rates(u, in, out);
    EXPECT_NEAR(r.quantum, coincidence_rate(u, in, out, OverlapMatrix::ones(2)), 1e-14);
    EXPECT_NEAR(r.classical, coincidence_rate(u, in, out, OverlapMatrix::identity(2)), 1e-14);
    const double v = visibility(u, in, out);
    EXPECT_GE(v, -1.0 - 1e-12);
    EXPECT_LE(v, 1.0);
  }
}

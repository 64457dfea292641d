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

#include "bosonsim/reconstruction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "bosonsim/error.hpp"

namespace bosonsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kParamCount = CircuitParameters::kCouplers + CircuitParameters::kPhases;

double weight(double sigma) { return sigma > 0.0 ? sigma : 1.0; }

// Weighted residuals (predicted - measured) / sigma, singles first (row-major),
// then visibilities in dataset order.
void weighted_residuals(const ComplexMatrix& u, const MeasurementDataset& data,
                        Eigen::VectorXd& out) {
  const std::size_t m = data.modes;
  out.resize(static_cast<Eigen::Index>(m * m + data.visibilities.size()));
  Eigen::Index i = 0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      out[i++] = (std::norm(u(r, c)) - data.single(r, c)) / weight(data.single_sigma(r, c));
    }
  }
  const double penalty = std::sqrt(kUndefinedVisibilityPenalty);
  for (const VisibilityRecord& v : data.visibilities) {
    const PairRates rates = pair_rates(u, v.pair.in, v.pair.out);
    if (rates.classical <= kMinClassicalRate) {
      out[i++] = penalty;
    } else {
      const double predicted = (rates.classical - rates.quantum) / rates.classical;
      out[i++] = (predicted - v.value) / weight(v.sigma);
    }
  }
}

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

// Unconstrained coordinates: eta_k = sin^2(theta_k), phases as-is.
CircuitParameters to_parameters(const Eigen::VectorXd& x) {
  CircuitParameters p;
  p.etas.reserve(CircuitParameters::kCouplers);
  p.phis.reserve(CircuitParameters::kPhases);
  for (std::size_t k = 0; k < CircuitParameters::kCouplers; ++k) {
    const double s = std::sin(x[static_cast<Eigen::Index>(k)]);
    p.etas.push_back(std::clamp(s * s, 0.0, 1.0));
  }
  for (std::size_t k = 0; k < CircuitParameters::kPhases; ++k) {
    p.phis.push_back(wrap_phase(x[static_cast<Eigen::Index>(CircuitParameters::kCouplers + k)]));
  }
  return p;
}

class LeastSquaresProblem {
 public:
  explicit LeastSquaresProblem(const MeasurementDataset& data) : data_(data) {}

  double evaluate(const Eigen::VectorXd& x, Eigen::VectorXd& r) const {
    weighted_residuals(compile(default_topology(to_parameters(x))), data_, r);
    return r.squaredNorm();
  }

  // Central differences.
  void jacobian(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const {
    Eigen::VectorXd xp = x;
    Eigen::VectorXd rp;
    Eigen::VectorXd rm;
    constexpr double h = 1e-6;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      xp[k] = x[k] + h;
      evaluate(xp, rp);
      xp[k] = x[k] - h;
      evaluate(xp, rm);
      xp[k] = x[k];
      if (jac.rows() != rp.size()) jac.resize(rp.size(), x.size());
      jac.col(k) = (rp - rm) / (2.0 * h);
    }
  }

 private:
  const MeasurementDataset& data_;
};

struct LocalResult {
  Eigen::VectorXd x;
  double value;
  std::size_t accepted_steps;
};

LocalResult levenberg_marquardt(const LeastSquaresProblem& problem, Eigen::VectorXd x,
                                const FitConfig& config) {
  Eigen::VectorXd r;
  double f = problem.evaluate(x, r);
  double lambda = 1e-3;
  std::size_t accepted = 0;
  Eigen::MatrixXd jac;
  Eigen::VectorXd r_trial;

  for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
    if (f < 1e-28) break;
    problem.jacobian(x, jac);
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (grad.lpNorm<Eigen::Infinity>() < 1e-16) break;

    bool stepped = false;
    double f_trial = f;
    while (lambda < 1e12) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal() += lambda * (normal.diagonal().array() + 1e-9).matrix();
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      const Eigen::VectorXd trial = x + step;
      f_trial = problem.evaluate(trial, r_trial);
      if (std::isfinite(f_trial) && f_trial < f) {
        x = trial;
        r.swap(r_trial);
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!stepped) break;
    ++accepted;
    const double decrease = f - f_trial;
    f = f_trial;
    if (decrease <= config.tolerance * f) break;
  }
  return {std::move(x), f, accepted};
}

}  // namespace

void MeasurementDataset::validate() const {
  if (modes < 2) throw DimensionError("dataset needs at least two modes");
  if (singles.size() != modes * modes || singles_sigma.size() != modes * modes) {
    throw DimensionError("singles must hold " + std::to_string(modes * modes) + " entries");
  }
  for (std::size_t i = 0; i < singles.size(); ++i) {
    if (!std::isfinite(singles[i]) || !std::isfinite(singles_sigma[i]) || singles_sigma[i] < 0.0) {
      throw DomainError("singles entry " + std::to_string(i) + " is invalid");
    }
  }
  for (const VisibilityRecord& v : visibilities) {
    for (const ModePair& pair : {v.pair.in, v.pair.out}) {
      if (pair[0] >= modes || pair[1] >= modes || pair[0] == pair[1]) {
        throw DomainError("visibility pair modes must be distinct and < " + std::to_string(modes));
      }
    }
    if (!std::isfinite(v.value) || std::abs(v.value) > 1.0 + 1e-9 || !std::isfinite(v.sigma) ||
        v.sigma < 0.0) {
      throw DomainError("visibility value or uncertainty out of range");
    }
  }
}

MeasurementDataset normalize_singles(MeasurementDataset data) {
  data.validate();
  const std::size_t m = data.modes;
  for (std::size_t c = 0; c < m; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m; ++r) sum += data.singles[r * m + c];
    if (!(sum > 0.0)) throw DomainError("singles column " + std::to_string(c) + " has no mass");
    for (std::size_t r = 0; r < m; ++r) {
      data.singles[r * m + c] /= sum;
      data.singles_sigma[r * m + c] /= sum;
    }
  }
  return data;
}

std::vector<VisibilityPair> all_visibility_pairs(std::size_t modes) {
  std::vector<ModePair> pairs;
  for (std::size_t a = 0; a < modes; ++a) {
    for (std::size_t b = a + 1; b < modes; ++b) pairs.push_back({a, b});
  }
  std::vector<VisibilityPair> out;
  out.reserve(pairs.size() * pairs.size());
  for (const ModePair& in : pairs) {
    for (const ModePair& o : pairs) out.push_back({in, o});
  }
  return out;
}

std::vector<VisibilityPair> default_visibility_pairs(const ComplexMatrix& u, std::size_t count) {
  std::vector<VisibilityPair> all = all_visibility_pairs(u.rows());
  std::vector<double> rate;
  rate.reserve(all.size());
  for (const VisibilityPair& p : all) rate.push_back(pair_rates(u, p.in, p.out).classical);
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rate[a] > rate[b]; });
  order.resize(std::min(count, order.size()));
  std::vector<VisibilityPair> chosen;
  chosen.reserve(order.size());
  for (std::size_t i : order) chosen.push_back(all[i]);
  return chosen;
}

MeasurementDataset predict_observables(const ComplexMatrix& u,
                                       std::span<const VisibilityPair> pairs) {
  if (!u.is_square()) throw DimensionError("predict_observables: matrix must be square");
  const std::size_t m = u.rows();
  MeasurementDataset d;
  d.modes = m;
  d.singles.resize(m * m);
  d.singles_sigma.assign(m * m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) d.singles[r * m + c] = std::norm(u(r, c));
  }
  for (const VisibilityPair& p : pairs) d.visibilities.push_back({p, visibility(u, p.in, p.out), 0.0});
  return d;
}

MeasurementDataset predict_observables(const CircuitParameters& params,
                                       std::span<const VisibilityPair> pairs) {
  params.validate();
  return predict_observables(compile(default_topology(params)), pairs);
}

double objective(const CircuitParameters& params, const MeasurementDataset& data) {
  params.validate();
  data.validate();
  if (data.modes != kDefaultModes) {
    throw DimensionError("objective: dataset must describe the 5-mode default topology");
  }
  Eigen::VectorXd r;
  weighted_residuals(compile(default_topology(params)), data, r);
  return r.squaredNorm();
}

ReconstructionResult fit(const MeasurementDataset& raw, const FitConfig& config) {
  if (config.restarts == 0) throw DomainError("fit needs at least one restart");
  const MeasurementDataset data = normalize_singles(raw);
  if (data.modes != kDefaultModes) {
    throw DimensionError("fit: dataset must describe the 5-mode default topology");
  }
  const LeastSquaresProblem problem(data);

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> theta(0.0, std::numbers::pi / 2.0);
  std::uniform_real_distribution<double> phi(0.0, kTwoPi);

  LocalResult best{Eigen::VectorXd(), std::numeric_limits<double>::infinity(), 0};
  std::size_t used = 0;
  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    Eigen::VectorXd start(static_cast<Eigen::Index>(kParamCount));
    for (std::size_t k = 0; k < CircuitParameters::kCouplers; ++k) {
      start[static_cast<Eigen::Index>(k)] = theta(rng);
    }
    for (std::size_t k = CircuitParameters::kCouplers; k < kParamCount; ++k) {
      start[static_cast<Eigen::Index>(k)] = phi(rng);
    }
    LocalResult local = levenberg_marquardt(problem, std::move(start), config);
    ++used;
    if (local.value < best.value) best = std::move(local);
    if (best.value < config.stop_residual) break;
  }

  if (!(best.value < kUndefinedVisibilityPenalty)) {
    throw NonConvergenceError("no restart reduced the objective below the penalty floor");
  }
  ReconstructionResult result;
  result.params = to_parameters(best.x);
  result.residual = objective(result.params, data);
  std::vector<VisibilityPair> pairs;
  pairs.reserve(data.visibilities.size());
  for (const VisibilityRecord& v : data.visibilities) pairs.push_back(v.pair);
  result.predicted = predict_observables(result.params, pairs);
  result.iterations = best.accepted_steps;
  result.restarts_used = used;
  return result;
}

MeasurementDataset simulate_dataset(const ComplexMatrix& u, std::size_t counts_per_setting,
                                    std::uint64_t seed, std::span<const VisibilityPair> pairs) {
  if (counts_per_setting == 0) throw DomainError("counts_per_setting must be positive");
  if (!u.is_square()) throw DimensionError("simulate_dataset: matrix must be square");
  const std::size_t m = u.rows();
  const auto n = static_cast<double>(counts_per_setting);
  std::mt19937_64 rng(seed);
  auto poisson = [&rng](double mean) -> double {
    if (!(mean > 0.0)) return 0.0;
    std::poisson_distribution<long long> dist(mean);
    return static_cast<double>(dist(rng));
  };

  MeasurementDataset d;
  d.modes = m;
  d.singles.resize(m * m);
  d.singles_sigma.resize(m * m);
  std::vector<double> column(m);
  for (std::size_t in = 0; in < m; ++in) {
    double total = 0.0;
    for (std::size_t out = 0; out < m; ++out) total += column[out] = poisson(n * std::norm(u(out, in)));
    for (std::size_t out = 0; out < m; ++out) {
      if (total > 0.0) {
        d.singles[out * m + in] = column[out] / total;
        d.singles_sigma[out * m + in] = std::sqrt(std::max(column[out], 1.0)) / total;
      } else {
        d.singles[out * m + in] = 1.0 / static_cast<double>(m);
        d.singles_sigma[out * m + in] = 1.0;
      }
    }
  }

  for (const VisibilityPair& p : pairs) {
    // Each setting collects ~n distinguishable-baseline coincidences.
    const PairRates rates = pair_rates(u, p.in, p.out);
    const double ratio = rates.classical > kMinClassicalRate ? rates.quantum / rates.classical : 0.0;
    const double classical = poisson(rates.classical > kMinClassicalRate ? n : 0.0);
    const double quantum = poisson(n * ratio);
    if (classical <= 0.0) {
      d.visibilities.push_back({p, 0.0, 1.0});
      continue;
    }
    const double value = std::clamp(1.0 - quantum / classical, -1.0, 1.0);
    const double sigma = std::sqrt(std::max(quantum, 1.0) / (classical * classical) +
                                   quantum * quantum / (classical * classical * classical));
    d.visibilities.push_back({p, value, sigma});
  }
  return d;
}

MeasurementDataset simulate_dataset(const CircuitParameters& params,
                                    std::size_t counts_per_setting, std::uint64_t seed,
                                    std::span<const VisibilityPair> pairs) {
  params.validate();
  return simulate_dataset(compile(default_topology(params)), counts_per_setting, seed, pairs);
}

double phase_difference(double a, double b) {
  double d = std::fmod(a - b + std::numbers::pi, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d - std::numbers::pi;
}

}  // namespace bosonsim

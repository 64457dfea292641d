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

#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "formats.hpp"
#include "bosonsim/bosonsim.hpp"

namespace bosonsim::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output, std::ios::binary | std::ios::trunc);
  if (!file) throw ParseError("cannot write '" + output + "'");
  file << text;
}

// A source file is either a circuit ("modes m" first) or a matrix.
ComplexMatrix load_unitary(const std::string& text) {
  return looks_like_circuit(text) ? compile(parse_circuit(text)) : parse_matrix(text);
}

std::string join_modes(const std::vector<std::size_t>& modes) {
  std::string s;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(modes[k] + 1);
  }
  return s;
}

std::string format_significant(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw ParseError("delay grid must be start:stop:points");
  double start = 0.0;
  double stop = 0.0;
  long points = 0;
  try {
    std::size_t used = 0;
    start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw ParseError("bad grid start");
    stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw ParseError("bad grid stop");
    points = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw ParseError("bad grid points");
  } catch (const std::logic_error&) {
    throw ParseError("malformed delay grid '" + spec + "'");
  }
  if (points < 1) throw ParseError("delay grid needs at least one point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (long k = 0; k < points; ++k) {
    grid.push_back(points == 1 ? start : start + (stop - start) * static_cast<double>(k) /
                                                      static_cast<double>(points - 1));
  }
  return grid;
}

struct Options {
  std::string file;
  std::string output;
  std::string method = "ryser";
  std::string input;
  bool collision_free = false;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string in_modes;
  std::string out_modes;
  std::string delay_modes;
  std::string delay_grid;
  double sigma = default_sigma_fs();
  bool joint = false;
  std::size_t counts = 0;
  std::size_t pairs = 40;
  FitConfig fit;
};

std::string cmd_permanent(const Options& o) {
  const ComplexMatrix m = parse_matrix(read_file(o.file));
  const Complex per = o.method == "naive" ? permanent_naive(m) : permanent_ryser(m);
  const double im = per.imag() == 0.0 ? 0.0 : per.imag();
  return format_significant(per.real(), 15) + (std::signbit(im) ? " - " : " + ") +
         format_significant(std::abs(im), 15) + "i\n";
}

std::string cmd_compile(const Options& o) {
  return write_matrix(compile(parse_circuit(read_file(o.file))));
}

std::string cmd_random_circuit(const Options& o) {
  return write_circuit(random_circuit(o.seed));
}

std::string cmd_distribution(const Options& o) {
  const std::string text = read_file(o.file);
  const ComplexMatrix u = load_unitary(text);
  const FockState input = FockState::parse(o.input);
  const OutputDistribution d =
      o.collision_free ? collision_free_distribution(u, input) : full_distribution(u, input);
  std::string s = "# input: " + input.to_string() + '\n';
  s += std::string("# collision_free: ") + (o.collision_free ? "true" : "false") + '\n';
  s += "# normalization: " + format_double(d.normalization) + '\n';
  s += "# source_sha256: " + sha256_hex(text) + '\n';
  s += "occupation,probability\n";
  for (const Outcome& oc : d.outcomes) {
    s += '"' + oc.state.to_string() + "\"," + format_double(oc.probability) + '\n';
  }
  return s;
}

std::string cmd_sample(const Options& o) {
  const ComplexMatrix u = load_unitary(read_file(o.file));
  const FockState input = FockState::parse(o.input);
  std::string s;
  for (const FockState& f : sample(u, input, o.count, o.seed, o.collision_free)) {
    s += f.to_string() + '\n';
  }
  return s;
}

std::string cmd_hom_scan(const Options& o) {
  const ComplexMatrix u = load_unitary(read_file(o.file));
  const std::vector<std::size_t> in = parse_mode_list(o.in_modes);
  const std::vector<std::size_t> out = parse_mode_list(o.out_modes);
  std::vector<std::size_t> delayed =
      o.delay_modes.empty() ? std::vector<std::size_t>(in.begin() + 1, in.end())
                            : parse_mode_list(o.delay_modes);
  // Photon slot of each delayed mode.
  std::vector<std::size_t> slots;
  for (std::size_t mode : delayed) {
    const auto it = std::find(in.begin(), in.end(), mode);
    if (it == in.end()) throw ParseError("delay mode " + std::to_string(mode + 1) + " is not an input mode");
    slots.push_back(static_cast<std::size_t>(it - in.begin()));
  }
  if (o.joint && slots.size() != 2) throw ParseError("--joint needs exactly two delay modes");
  const std::vector<double> axis = parse_grid(o.delay_grid);

  std::vector<DelayConfig> grid;
  if (o.joint) {
    for (double a : axis) {
      for (double b : axis) {
        DelayConfig c{std::vector<double>(in.size(), 0.0), o.sigma};
        c.delays[slots[0]] = a;
        c.delays[slots[1]] = b;
        grid.push_back(std::move(c));
      }
    }
  } else {
    for (double t : axis) {
      DelayConfig c{std::vector<double>(in.size(), 0.0), o.sigma};
      for (std::size_t slot : slots) c.delays[slot] = t;
      grid.push_back(std::move(c));
    }
  }
  const std::vector<ScanPoint> curve = hom_scan(u, in, out, grid);

  std::string s = "# in_modes: " + join_modes(in) + '\n';
  s += "# out_modes: " + join_modes(out) + '\n';
  s += "# delay_modes: " + join_modes(delayed) + '\n';
  s += "# sigma: " + format_double(o.sigma) + '\n';
  s += o.joint ? "delay_a,delay_b,rate\n" : "delay,rate\n";
  for (const ScanPoint& p : curve) {
    if (o.joint) {
      s += format_double(p.config.delays[slots[0]]) + ',' +
           format_double(p.config.delays[slots[1]]) + ',';
    } else {
      s += format_double(slots.empty() ? 0.0 : p.config.delays[slots[0]]) + ',';
    }
    s += format_double(p.rate) + '\n';
  }
  return s;
}

std::string cmd_simulate(const Options& o) {
  const ComplexMatrix u = load_unitary(read_file(o.file));
  const std::vector<VisibilityPair> pairs = default_visibility_pairs(u, o.pairs);
  const MeasurementDataset d = simulate_dataset(u, o.counts, o.seed, pairs);
  return "# counts_per_setting: " + std::to_string(o.counts) + " seed: " + std::to_string(o.seed) +
         '\n' + write_dataset(d);
}

std::string cmd_reconstruct(const Options& o) {
  return write_result(fit(parse_dataset(read_file(o.file)), o.fit));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bosonsim: boson-sampling simulation and circuit reconstruction"};
  app.require_subcommand(1);
  Options o;
  std::string (*handler)(const Options&) = nullptr;

  auto add = [&](const std::string& name, const std::string& help,
                 std::string (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };

  auto* perm = add("permanent", "Permanent of a square complex matrix file", cmd_permanent);
  perm->add_option("matrix", o.file, "Matrix file")->required();
  perm->add_option("--method", o.method, "naive or ryser")
      ->check(CLI::IsMember({"naive", "ryser"}))
      ->capture_default_str();

  auto* comp = add("compile", "Compile a circuit file to its unitary matrix", cmd_compile);
  comp->add_option("circuit", o.file, "Circuit file")->required();
  comp->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* rnd = add("random-circuit", "Random default-topology circuit", cmd_random_circuit);
  rnd->add_option("--seed", o.seed, "RNG seed")->required();
  rnd->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* dist = add("distribution", "Output distribution as CSV", cmd_distribution);
  dist->add_option("source", o.file, "Circuit or matrix file")->required();
  dist->add_option("--input", o.input, "Input occupations, e.g. 0,0,1,1,1")->required();
  dist->add_flag("--collision-free", o.collision_free, "Postselect one photon per mode");
  dist->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* smp = add("sample", "Exact samples, one occupation vector per line", cmd_sample);
  smp->add_option("source", o.file, "Circuit or matrix file")->required();
  smp->add_option("--input", o.input, "Input occupations")->required();
  smp->add_option("--count", o.count, "Number of samples")->required()->check(CLI::PositiveNumber);
  smp->add_option("--seed", o.seed, "RNG seed")->required();
  smp->add_flag("--collision-free", o.collision_free, "Sample the postselected distribution");
  smp->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* hom = add("hom-scan", "Coincidence rate versus delay as CSV", cmd_hom_scan);
  hom->add_option("source", o.file, "Circuit or matrix file")->required();
  hom->add_option("--in-modes", o.in_modes, "Input modes, 1-based, e.g. 3,4,5")->required();
  hom->add_option("--out-modes", o.out_modes, "Output modes, 1-based")->required();
  hom->add_option("--delay-grid", o.delay_grid, "start:stop:points, same time unit as --sigma")
      ->required();
  hom->add_option("--sigma", o.sigma, "Wavepacket width, same unit as delays")
      ->capture_default_str();
  hom->add_option("--delay-modes", o.delay_modes,
                  "Input modes that are delayed (default: all but the first)");
  hom->add_flag("--joint", o.joint, "2D grid over two independently delayed modes");
  hom->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* sim = add("simulate", "Poisson-noisy singles and visibilities dataset", cmd_simulate);
  sim->add_option("source", o.file, "Circuit or matrix file")->required();
  sim->add_option("--counts", o.counts, "Counts per setting")->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed, "RNG seed")->required();
  sim->add_option("--pairs", o.pairs, "Number of visibility pairs")->capture_default_str();
  sim->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* rec = add("reconstruct", "Fit default-topology parameters to a dataset", cmd_reconstruct);
  rec->add_option("dataset", o.file, "Dataset file")->required();
  rec->add_option("--restarts", o.fit.restarts, "Multi-start count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  rec->add_option("--seed", o.fit.seed, "RNG seed for starting points")->capture_default_str();
  rec->add_option("--max-iterations", o.fit.max_iterations, "Iterations per restart")
      ->capture_default_str();
  rec->add_option("--tolerance", o.fit.tolerance, "Relative decrease to stop a restart")
      ->capture_default_str();
  rec->add_option("-o,--output", o.output, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    emit(handler(o), o.output, out);
    return kOk;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const DegeneratePostselectionError& e) {
    err << "error: " << e.what() << '\n';
    return kDegeneratePostselection;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace bosonsim::cli

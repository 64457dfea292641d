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

#include "formats.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

namespace bosonsim::cli {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

// Non-empty lines split on whitespace, '#' comments removed.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    ++number;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    Line parsed{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) parsed.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!parsed.tokens.empty()) lines.push_back(std::move(parsed));
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

double number(const Line& line, std::size_t idx) {
  const auto v = to_double(line.tokens[idx]);
  if (!v) fail(line.number, "expected a number, got '" + std::string(line.tokens[idx]) + "'");
  return *v;
}

std::size_t count(const Line& line, std::size_t idx) {
  const std::string_view s = line.tokens[idx];
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(line.number, "expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

// 1-based mode index in [1, limit] to 0-based.
std::size_t mode(const Line& line, std::size_t idx, std::size_t limit) {
  const std::size_t v = count(line, idx);
  if (v < 1 || v > limit) {
    fail(line.number, "mode " + std::to_string(v) + " outside 1.." + std::to_string(limit));
  }
  return v - 1;
}

void expect_arity(const Line& line, std::size_t n) {
  if (line.tokens.size() != n) {
    fail(line.number, "expected " + std::to_string(n) + " fields, got " +
                          std::to_string(line.tokens.size()));
  }
}

std::string singles_block(const MeasurementDataset& d) {
  std::string s = "[singles]\n";
  for (std::size_t out = 0; out < d.modes; ++out) {
    for (std::size_t in = 0; in < d.modes; ++in) {
      s += std::to_string(out + 1) + ' ' + std::to_string(in + 1) + ' ' +
           format_double(d.single(out, in)) + ' ' + format_double(d.single_sigma(out, in)) + '\n';
    }
  }
  s += "[visibilities]\n";
  for (const VisibilityRecord& v : d.visibilities) {
    s += std::to_string(v.pair.in[0] + 1) + ' ' + std::to_string(v.pair.in[1] + 1) + ' ' +
         std::to_string(v.pair.out[0] + 1) + ' ' + std::to_string(v.pair.out[1] + 1) + ' ' +
         format_double(v.value) + ' ' + format_double(v.sigma) + '\n';
  }
  return s;
}

// Shared by dataset and result parsing; `lines` are those after the
// section headers were filtered by the caller.
MeasurementDataset dataset_from_sections(const std::vector<Line>& singles,
                                         const std::vector<Line>& visibilities,
                                         std::size_t fallback_line) {
  if (singles.empty()) fail(fallback_line, "missing [singles] entries");
  std::size_t modes = 0;
  for (const Line& l : singles) {
    expect_arity(l, 4);
    modes = std::max({modes, count(l, 0), count(l, 1)});
  }
  if (modes < 2 || singles.size() != modes * modes) {
    fail(singles.back().number, "[singles] must list all " + std::to_string(modes * modes) +
                                    " (out, in) entries of a square matrix");
  }
  MeasurementDataset d;
  d.modes = modes;
  d.singles.assign(modes * modes, 0.0);
  d.singles_sigma.assign(modes * modes, 0.0);
  std::vector<bool> seen(modes * modes, false);
  for (const Line& l : singles) {
    const std::size_t out = mode(l, 0, modes);
    const std::size_t in = mode(l, 1, modes);
    if (seen[out * modes + in]) fail(l.number, "duplicate singles entry");
    seen[out * modes + in] = true;
    d.singles[out * modes + in] = number(l, 2);
    d.singles_sigma[out * modes + in] = number(l, 3);
    if (d.singles_sigma[out * modes + in] < 0.0) fail(l.number, "negative uncertainty");
  }
  for (const Line& l : visibilities) {
    expect_arity(l, 6);
    VisibilityRecord v{{{mode(l, 0, modes), mode(l, 1, modes)}, {mode(l, 2, modes), mode(l, 3, modes)}},
                       number(l, 4),
                       number(l, 5)};
    if (v.pair.in[0] == v.pair.in[1] || v.pair.out[0] == v.pair.out[1]) {
      fail(l.number, "visibility pair modes must be distinct");
    }
    if (std::abs(v.value) > 1.0 + 1e-9) fail(l.number, "visibility outside [-1, 1]");
    if (v.sigma < 0.0) fail(l.number, "negative uncertainty");
    d.visibilities.push_back(v);
  }
  return d;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

Complex parse_complex(std::string_view token) {
  const std::string original(token);
  if (token.empty()) throw ParseError("empty complex entry");
  if (token.back() != 'i') {
    const auto re = to_double(token);
    if (!re) throw ParseError("malformed complex entry '" + original + "'");
    return {*re, 0.0};
  }
  token.remove_suffix(1);
  // Split at the last sign that is not an exponent sign.
  std::size_t split = 0;
  for (std::size_t k = token.size(); k-- > 1;) {
    if ((token[k] == '+' || token[k] == '-') && token[k - 1] != 'e' && token[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_text = token.substr(0, split);
  std::string_view im_text = token.substr(split);
  double re = 0.0;
  if (split > 0) {
    const auto v = to_double(re_text);
    if (!v) throw ParseError("malformed complex entry '" + original + "'");
    re = *v;
  }
  double im = 0.0;
  if (im_text == "+" || im_text.empty()) {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    const auto v = to_double(im_text);
    if (!v) throw ParseError("malformed complex entry '" + original + "'");
    im = *v;
  }
  return {re, im};
}

ComplexMatrix parse_matrix(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError("line 1: empty matrix file");
  const std::size_t cols = lines.front().tokens.size();
  std::vector<Complex> entries;
  for (const Line& l : lines) {
    if (l.tokens.size() != cols) {
      fail(l.number, "row has " + std::to_string(l.tokens.size()) + " entries, expected " +
                         std::to_string(cols));
    }
    for (std::string_view tok : l.tokens) {
      try {
        entries.push_back(parse_complex(tok));
      } catch (const ParseError& e) {
        fail(l.number, e.what());
      }
    }
  }
  return ComplexMatrix(lines.size(), cols, std::move(entries));
}

std::string write_matrix(const ComplexMatrix& m) {
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ' ';
      s += format_complex(m(r, c));
    }
    s += '\n';
  }
  return s;
}

OpticalCircuit parse_circuit(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines.front().tokens[0] != "modes") {
    fail(lines.empty() ? 1 : lines.front().number, "circuit file must start with 'modes m'");
  }
  expect_arity(lines.front(), 2);
  const std::size_t m = count(lines.front(), 1);
  if (m == 0) fail(lines.front().number, "mode count must be positive");
  OpticalCircuit c(m);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = lines[k];
    expect_arity(l, 3);
    try {
      if (l.tokens[0] == "coupler") {
        if (m < 2) fail(l.number, "coupler needs at least two modes");
        c.append(CircuitElement::coupler(mode(l, 1, m - 1), number(l, 2)));
      } else if (l.tokens[0] == "phase") {
        c.append(CircuitElement::phase(mode(l, 1, m), number(l, 2)));
      } else {
        fail(l.number, "unknown element '" + std::string(l.tokens[0]) + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(l.number, e.what());
    }
  }
  return c;
}

std::string write_circuit(const OpticalCircuit& c) {
  std::string s = "modes " + std::to_string(c.mode_count()) + '\n';
  for (const CircuitElement& e : c.elements()) {
    s += (e.kind == ElementKind::kCoupler ? "coupler " : "phase ") + std::to_string(e.mode + 1) +
         ' ' + format_double(e.value) + '\n';
  }
  return s;
}

bool looks_like_circuit(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  return !lines.empty() && lines.front().tokens[0] == "modes";
}

MeasurementDataset parse_dataset(std::string_view text) {
  std::vector<Line> singles;
  std::vector<Line> visibilities;
  std::vector<Line>* section = nullptr;
  for (Line& l : tokenize(text)) {
    if (l.tokens.size() == 1 && l.tokens[0] == "[singles]") {
      section = &singles;
    } else if (l.tokens.size() == 1 && l.tokens[0] == "[visibilities]") {
      section = &visibilities;
    } else if (section == nullptr) {
      fail(l.number, "data before any [singles] or [visibilities] header");
    } else {
      section->push_back(std::move(l));
    }
  }
  return dataset_from_sections(singles, visibilities, 1);
}

std::string write_dataset(const MeasurementDataset& d) { return singles_block(d); }

std::string write_result(const ReconstructionResult& r) {
  std::string s = "[parameters]\n";
  for (std::size_t k = 0; k < r.params.etas.size(); ++k) {
    s += "eta " + std::to_string(k + 1) + ' ' + format_double(r.params.etas[k]) + '\n';
  }
  for (std::size_t k = 0; k < r.params.phis.size(); ++k) {
    s += "phi " + std::to_string(k + 1) + ' ' + format_double(r.params.phis[k]) + '\n';
  }
  s += "[fit]\n";
  s += "residual " + format_double(r.residual) + '\n';
  s += "iterations " + std::to_string(r.iterations) + '\n';
  s += "restarts_used " + std::to_string(r.restarts_used) + '\n';
  return s + singles_block(r.predicted);
}

ParsedResult parse_result(std::string_view text) {
  ParsedResult out;
  std::map<std::size_t, double> etas;
  std::map<std::size_t, double> phis;
  std::vector<Line> params;
  std::vector<Line> summary;
  std::vector<Line> singles;
  std::vector<Line> visibilities;
  std::vector<Line>* section = nullptr;
  for (Line& l : tokenize(text)) {
    const std::string_view head = l.tokens[0];
    if (l.tokens.size() == 1 && head == "[parameters]") {
      section = &params;
    } else if (l.tokens.size() == 1 && head == "[fit]") {
      section = &summary;
    } else if (l.tokens.size() == 1 && head == "[singles]") {
      section = &singles;
    } else if (l.tokens.size() == 1 && head == "[visibilities]") {
      section = &visibilities;
    } else if (section == nullptr) {
      fail(l.number, "data before any section header");
    } else {
      section->push_back(std::move(l));
    }
  }
  for (const Line& l : params) {
    expect_arity(l, 3);
    std::map<std::size_t, double>* into = nullptr;
    if (l.tokens[0] == "eta") {
      into = &etas;
    } else if (l.tokens[0] == "phi") {
      into = &phis;
    } else {
      fail(l.number, "expected 'eta' or 'phi'");
    }
    (*into)[count(l, 1)] = number(l, 2);
  }
  for (const auto& [k, v] : etas) out.params.etas.push_back(v);
  for (const auto& [k, v] : phis) out.params.phis.push_back(v);
  for (const Line& l : summary) {
    expect_arity(l, 2);
    if (l.tokens[0] == "residual") {
      out.residual = number(l, 1);
    } else if (l.tokens[0] == "iterations") {
      out.iterations = count(l, 1);
    } else if (l.tokens[0] == "restarts_used") {
      out.restarts_used = count(l, 1);
    } else {
      fail(l.number, "unknown fit field '" + std::string(l.tokens[0]) + "'");
    }
  }
  out.predicted = dataset_from_sections(singles, visibilities, 1);
  return out;
}

std::vector<std::size_t> parse_mode_list(std::string_view text) {
  std::vector<std::size_t> modes;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view field =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || v == 0) {
      throw ParseError("malformed mode list '" + std::string(text) + "' (modes are 1-based)");
    }
    modes.push_back(v - 1);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return modes;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

}  // namespace bosonsim::cli

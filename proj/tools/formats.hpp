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

#ifndef BOSONSIM_TOOLS_FORMATS_HPP
#define BOSONSIM_TOOLS_FORMATS_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bosonsim/bosonsim.hpp"

namespace bosonsim::cli {

/// Malformed input text. Messages carry a "line N:" prefix where a line applies.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// 17 significant digits, so parse(format(x)) == x.
std::string format_double(double x);

/// "re+imi" with 17 significant digits.
std::string format_complex(Complex z);
/// Accepts "re+imi", "re-imi", "re", "imi". Throws ParseError.
Complex parse_complex(std::string_view token);

/// One row per line, entries separated by whitespace. '#' starts a comment.
ComplexMatrix parse_matrix(std::string_view text);
std::string write_matrix(const ComplexMatrix& m);

/// "modes m", then "coupler i eta" / "phase i phi" lines, modes 1-based.
OpticalCircuit parse_circuit(std::string_view text);
std::string write_circuit(const OpticalCircuit& c);

/// True when the first directive is "modes", i.e. the text is a circuit file.
bool looks_like_circuit(std::string_view text);

/// "[singles]" block of "out in p sigma" and "[visibilities]" block of
/// "in1 in2 out1 out2 V sigma" lines, modes 1-based.
MeasurementDataset parse_dataset(std::string_view text);
std::string write_dataset(const MeasurementDataset& d);

/// Fitted parameters and fit summary followed by the predicted dataset.
std::string write_result(const ReconstructionResult& r);

struct ParsedResult {
  CircuitParameters params;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::size_t restarts_used = 0;
  MeasurementDataset predicted;
};
ParsedResult parse_result(std::string_view text);

/// Comma-separated 1-based mode list ("3,4,5") to 0-based indices.
std::vector<std::size_t> parse_mode_list(std::string_view text);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace bosonsim::cli

#endif  // BOSONSIM_TOOLS_FORMATS_HPP

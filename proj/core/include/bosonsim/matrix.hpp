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

#ifndef BOSONSIM_MATRIX_HPP
#define BOSONSIM_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bosonsim {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Carries unitaries and the submatrices
/// whose permanents give transition amplitudes.
///
/// Shape is at least 1x1 and every entry is finite; both are checked on
/// construction and by `validate()`.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;

  /// Throws ValidationError if any entry is NaN or infinite.
  void validate() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// max_{r,c} |a(r,c) - b(r,c)|. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace bosonsim

#endif  // BOSONSIM_MATRIX_HPP

// Copyright 2026 The bspow Authors
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

#ifndef BSPOW_COMPLEX_MATRIX_HPP
#define BSPOW_COMPLEX_MATRIX_HPP

#include <complex>
#include <vector>

#include "bspow/errors.hpp"

namespace bspow {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. The canonical JSON form is
/// {"rows":r,"cols":c,"re":[...],"im":[...]} with row-major 64-bit floats.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) {
            throw DimensionError("ComplexMatrix: negative dimension");
        }
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    const cplx* data() const { return data_.data(); }
    cplx* data() { return data_.data(); }
    const std::vector<cplx>& storage() const { return data_; }

    ComplexMatrix transpose() const {
        ComplexMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) {
                t(j, i) = std::conj((*this)(i, j));
            }
        }
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : data_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    bool all_finite() const {
        for (const cplx& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                return false;
            }
        }
        return true;
    }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace bspow

#endif

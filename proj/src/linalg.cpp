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

#include "bspow/linalg.hpp"

#include <Eigen/Dense>

#include "bspow/philox.hpp"

namespace bspow {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            m(i, j) = a(i, j);
        }
    }
    return m;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
    ComplexMatrix a(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            a(i, j) = m(i, j);
        }
    }
    return a;
}

}  // namespace

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matrix product: inner dimensions differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            cplx aik = a(i, k);
            for (int j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

ComplexMatrix haar_unitary(int m, uint64_t seed) {
    if (m < 1) {
        throw DimensionError("haar_unitary: M must be >= 1");
    }
    Philox rng(seed);
    Eigen::MatrixXcd g(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double re = rng.next_gaussian();
            double im = rng.next_gaussian();
            g(i, j) = cplx(re, im) * M_SQRT1_2;
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j) {
        cplx d = r(j, j);
        double mag = std::abs(d);
        cplx phase = mag > 0.0 ? d / mag : cplx(1.0, 0.0);
        q.col(j) *= phase;
    }
    return from_eigen(q);
}

DetInverse det_and_inverse(const ComplexMatrix& a) {
    if (!a.square()) {
        throw DimensionError("det_and_inverse: matrix must be square");
    }
    if (a.rows() == 0) {
        return {cplx(1.0, 0.0), ComplexMatrix(0, 0)};
    }
    Eigen::MatrixXcd m = to_eigen(a);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    cplx det = lu.determinant();
    if (det == cplx(0.0, 0.0) || !std::isfinite(std::abs(det))) {
        throw SingularityError("det_and_inverse: singular matrix");
    }
    Eigen::MatrixXcd inv = lu.inverse();
    double norm_a = m.cwiseAbs().colwise().sum().maxCoeff();
    double norm_inv = inv.cwiseAbs().colwise().sum().maxCoeff();
    if (!(norm_a * norm_inv < kConditionCutoff)) {
        throw SingularityError("det_and_inverse: condition estimate exceeds 1e12");
    }
    return {det, from_eigen(inv)};
}

cplx determinant(const ComplexMatrix& a) {
    if (!a.square()) {
        throw DimensionError("determinant: matrix must be square");
    }
    if (a.rows() == 0) {
        return {1.0, 0.0};
    }
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(to_eigen(a)).determinant();
}

double spectral_norm(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    return svd.singularValues()(0);
}

double unitarity_defect(const ComplexMatrix& u) {
    if (!u.square()) {
        throw DimensionError("unitarity_defect: matrix must be square");
    }
    Eigen::MatrixXcd m = to_eigen(u);
    Eigen::MatrixXcd g = m.adjoint() * m - Eigen::MatrixXcd::Identity(u.rows(), u.rows());
    return g.cwiseAbs().maxCoeff();
}

}  // namespace bspow

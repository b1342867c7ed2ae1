// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/linalg.hpp"

#include <cmath>
#include <string>

namespace usd {

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex& z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                return false;
            }
        }
    }
    return true;
}

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw Error("HermitianOperator: matrix must be square, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!all_finite(m)) {
        throw Error("HermitianOperator: matrix contains non-finite entries");
    }
    const double residual = max_abs(m - m.adjoint());
    if (residual > tol) {
        throw NotHermitian("HermitianOperator: ||H - H^dag||_max = " +
                           std::to_string(residual) + " exceeds tolerance");
    }
    matrix_ = 0.5 * (m + m.adjoint().eval());
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
    return HermitianOperator(ComplexMatrix::Zero(dim, dim));
}

EigenDecomposition eig_hermitian(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("eig_hermitian: eigensolver did not converge");
    }
    return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

bool is_psd(const HermitianOperator& h, double tol) {
    if (h.dim() == 0) {
        return true;
    }
    const EigenDecomposition eig = eig_hermitian(h);
    const double scale = std::max(1.0, max_abs(h.matrix()));
    return eig.eigenvalues(0) >= -tol * scale;
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("trace_product: dimensions " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()) + " differ");
    }
    const Complex t = (a.matrix() * b.matrix()).trace();
    if (std::abs(t.imag()) > kEigTol * std::max(1.0, std::abs(t.real()))) {
        throw Error("trace_product: imaginary residual " + std::to_string(t.imag()));
    }
    return t.real();
}

ComplexMatrix orthonormalize(const ComplexMatrix& vectors, double tol) {
    if (vectors.cols() == 0 || vectors.rows() == 0) {
        return ComplexMatrix(vectors.rows(), 0);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(vectors, Eigen::ComputeThinU);
    const RealVector& sigma = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > tol) {
        ++rank;
    }
    return svd.matrixU().leftCols(rank);
}

} // namespace usd

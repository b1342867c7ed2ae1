// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace usd {

namespace {

void check_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionMismatch(std::string(op) + ": ambient dimensions " +
                                std::to_string(a.ambient_dim()) + " and " +
                                std::to_string(b.ambient_dim()) + " differ");
    }
}

} // namespace

Subspace::Subspace(Eigen::Index ambient_dim, const ComplexMatrix& orthonormal_basis)
    : ambient_dim_(ambient_dim), basis_(orthonormal_basis) {
    if (ambient_dim < 0 || basis_.rows() != ambient_dim || basis_.cols() > ambient_dim) {
        throw Error("Subspace: basis shape " + std::to_string(basis_.rows()) + "x" +
                    std::to_string(basis_.cols()) + " invalid for ambient dimension " +
                    std::to_string(ambient_dim));
    }
    if (basis_.cols() > 0) {
        const ComplexMatrix gram = basis_.adjoint() * basis_;
        const double residual =
            max_abs(gram - ComplexMatrix::Identity(basis_.cols(), basis_.cols()));
        if (residual > kEigTol) {
            throw Error("Subspace: basis not orthonormal, residual " +
                        std::to_string(residual));
        }
    }
}

Subspace Subspace::from_span(const ComplexMatrix& vectors, double tol) {
    return Subspace(vectors.rows(), orthonormalize(vectors, tol));
}

Subspace Subspace::zero(Eigen::Index ambient_dim) {
    return Subspace(ambient_dim, ComplexMatrix(ambient_dim, 0));
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
    return Subspace(ambient_dim, ComplexMatrix::Identity(ambient_dim, ambient_dim));
}

Subspace support(const HermitianOperator& p, double rank_tol) {
    if (p.dim() == 0) {
        return Subspace::zero(0);
    }
    const EigenDecomposition eig = eig_hermitian(p);
    const double lambda_max = eig.eigenvalues(eig.eigenvalues.size() - 1);
    if (eig.eigenvalues(0) < -rank_tol * lambda_max) {
        throw NotPsd("support: eigenvalue " + std::to_string(eig.eigenvalues(0)) +
                     " below PSD tolerance");
    }
    const double cutoff = rank_tol * std::max(lambda_max, 0.0);
    Eigen::Index first = eig.eigenvalues.size();
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        if (eig.eigenvalues(i) > cutoff) {
            first = i;
            break;
        }
    }
    return Subspace(p.dim(), eig.eigenvectors.rightCols(eig.eigenvalues.size() - first));
}

Subspace sum(const Subspace& s1, const Subspace& s2, double tol) {
    check_same_ambient(s1, s2, "sum");
    ComplexMatrix stacked(s1.ambient_dim(), s1.dim() + s2.dim());
    stacked.leftCols(s1.dim()) = s1.basis();
    stacked.rightCols(s2.dim()) = s2.basis();
    return Subspace(s1.ambient_dim(), orthonormalize(stacked, tol));
}

Subspace intersection(const Subspace& s1, const Subspace& s2, double angle_tol) {
    check_same_ambient(s1, s2, "intersection");
    if (s1.is_zero() || s2.is_zero()) {
        return Subspace::zero(s1.ambient_dim());
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(s1.basis().adjoint() * s2.basis(),
                                        Eigen::ComputeThinU);
    const RealVector& cosines = svd.singularValues();
    Eigen::Index count = 0;
    while (count < cosines.size() && cosines(count) >= 1.0 - angle_tol) {
        ++count;
    }
    return Subspace(s1.ambient_dim(), s1.basis() * svd.matrixU().leftCols(count));
}

Subspace complement_within(const Subspace& s, const Subspace& t, double angle_tol) {
    check_same_ambient(s, t, "complement_within");
    if (t.is_zero()) {
        return Subspace::zero(t.ambient_dim());
    }
    if (s.is_zero()) {
        return t;
    }
    // Right principal vectors of (s, t) with cosine <= angle_tol span the
    // part of t orthogonal to s; directions beyond the singular spectrum
    // have cosine 0 by convention.
    Eigen::JacobiSVD<ComplexMatrix> svd(s.basis().adjoint() * t.basis(),
                                        Eigen::ComputeFullV);
    const RealVector& cosines = svd.singularValues();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < t.dim(); ++j) {
        if (j >= cosines.size() || cosines(j) <= angle_tol) {
            keep.push_back(j);
        }
    }
    ComplexMatrix basis(t.ambient_dim(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        basis.col(static_cast<Eigen::Index>(k)) = t.basis() * svd.matrixV().col(keep[k]);
    }
    return Subspace(t.ambient_dim(), basis);
}

Subspace orthogonal_complement(const Subspace& s) {
    const Eigen::Index d = s.ambient_dim();
    if (s.is_zero()) {
        return Subspace::full(d);
    }
    if (s.dim() == d) {
        return Subspace::zero(d);
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(s.basis());
    ComplexMatrix q = qr.householderQ();
    return Subspace(d, q.rightCols(d - s.dim()));
}

HermitianOperator projector(const Subspace& s) {
    if (s.is_zero()) {
        return HermitianOperator::zero(s.ambient_dim());
    }
    return HermitianOperator(s.basis() * s.basis().adjoint());
}

std::vector<double> principal_angles(const Subspace& s1, const Subspace& s2) {
    check_same_ambient(s1, s2, "principal_angles");
    if (s1.is_zero() || s2.is_zero()) {
        throw EmptySubspace("principal_angles: arguments must be nonzero subspaces");
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(s1.basis().adjoint() * s2.basis());
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(svd.singularValues().size()));
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double c = std::clamp(svd.singularValues()(i), 0.0, 1.0);
        angles.push_back(std::acos(c));
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

} // namespace usd

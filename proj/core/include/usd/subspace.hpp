// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <vector>

#include "usd/linalg.hpp"

namespace usd {

/// A subspace of C^d held as an orthonormal basis (d x k, possibly k = 0).
///
/// The zero subspace is a first-class value so that degenerate geometry
/// (identical supports, fully orthogonal supports) needs no special casing
/// in the reduction pipeline.
class Subspace {
  public:
    /// Wraps an already orthonormal basis; throws Error when columns are not
    /// orthonormal within kEigTol.
    Subspace(Eigen::Index ambient_dim, const ComplexMatrix& orthonormal_basis);

    /// Orthonormalizes arbitrary spanning vectors first.
    static Subspace from_span(const ComplexMatrix& vectors, double tol = kDefaultRankTol);

    static Subspace zero(Eigen::Index ambient_dim);
    static Subspace full(Eigen::Index ambient_dim);

    Eigen::Index ambient_dim() const { return ambient_dim_; }
    Eigen::Index dim() const { return basis_.cols(); }
    bool is_zero() const { return basis_.cols() == 0; }
    const ComplexMatrix& basis() const { return basis_; }

  private:
    Eigen::Index ambient_dim_;
    ComplexMatrix basis_;
};

/// Span of the eigenvectors of a PSD operator with eigenvalue above
/// rank_tol * lambda_max. Throws NotPsd when an eigenvalue falls below
/// -rank_tol * lambda_max.
Subspace support(const HermitianOperator& p, double rank_tol = kDefaultRankTol);

/// Span of the union of both bases. Throws DimensionMismatch.
Subspace sum(const Subspace& s1, const Subspace& s2, double tol = kDefaultRankTol);

/// Principal-vector intersection: directions of s1 whose cosine of
/// principal angle against s2 is >= 1 - angle_tol.
Subspace intersection(const Subspace& s1, const Subspace& s2,
                      double angle_tol = kDefaultAngleTol);

/// Relative orthogonal complement: everything in t orthogonal to s,
/// i.e. orthogonal_complement(s) intersected with t. Computed by projecting
/// s onto t and keeping the directions of t with cosine <= angle_tol
/// against s.
Subspace complement_within(const Subspace& s, const Subspace& t,
                           double angle_tol = kDefaultAngleTol);

/// Orthogonal complement within the ambient space.
Subspace orthogonal_complement(const Subspace& s);

/// Orthogonal projector B B^dag onto the subspace.
HermitianOperator projector(const Subspace& s);

/// Principal angles in radians, ascending; the cosines are the singular
/// values of B1^dag B2 clamped to [0, 1]. Throws EmptySubspace when either
/// argument has dimension zero, DimensionMismatch on ambient mismatch.
std::vector<double> principal_angles(const Subspace& s1, const Subspace& s2);

} // namespace usd

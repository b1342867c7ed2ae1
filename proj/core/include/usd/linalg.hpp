// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "usd/errors.hpp"

namespace usd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances used throughout the library.
/// All operators handled here are O(1) in norm (density matrices, POVM
/// elements, projectors), so absolute and relative tolerances coincide in
/// practice.
inline constexpr double kHermTol = 1e-10;        // max-norm of H - H^dag
inline constexpr double kEigTol = 1e-10;         // eigendecomposition residuals
inline constexpr double kDefaultRankTol = 1e-10; // relative eigenvalue cutoff
inline constexpr double kDefaultAngleTol = 1e-8; // cosine-of-principal-angle
inline constexpr double kTraceTol = 1e-10;       // |Tr rho - 1|
inline constexpr double kMisidTol = 1e-8;        // Tr(rho_i F_k) relative slack
inline constexpr double kCompletenessTol = 1e-8; // |sum F_k - I| max-norm

/// Rank / principal-angle thresholds shared by the subspace engine and the
/// reduction pipeline. The underlying geometry (intersection dimension,
/// relative complements) is discontinuous in the inputs, so every consumer
/// takes these explicitly and traces record the values used.
struct Tolerances {
    double rank_tol = kDefaultRankTol;
    double angle_tol = kDefaultAngleTol;
};

/// True when every entry of `m` is finite.
bool all_finite(const ComplexMatrix& m);

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const ComplexMatrix& m);

/// A dense complex square matrix with Hermitian symmetry.
///
/// Construction verifies ||H - H^dag||_max <= tol and then symmetrizes to
/// (H + H^dag)/2 so downstream code always sees exactly Hermitian data.
class HermitianOperator {
  public:
    /// Throws NotHermitian if the symmetry residual exceeds `tol`, and
    /// Error if the matrix is non-square or contains non-finite entries.
    explicit HermitianOperator(const ComplexMatrix& m, double tol = kHermTol);

    /// Zero operator of the given dimension.
    static HermitianOperator zero(Eigen::Index dim);

    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

  private:
    ComplexMatrix matrix_;
};

/// Eigensystem of a Hermitian operator, eigenvalues ascending and
/// eigenvector columns orthonormal.
struct EigenDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Full eigendecomposition. Throws ConvergenceFailure if the iterative
/// solver does not converge.
EigenDecomposition eig_hermitian(const HermitianOperator& h);

/// True iff the smallest eigenvalue is >= -tol * max(1, ||H||_max).
bool is_psd(const HermitianOperator& h, double tol = kDefaultRankTol);

/// Re Tr(AB) for Hermitian A, B of equal dimension. The imaginary part of
/// the trace vanishes analytically; it is asserted below kEigTol and
/// discarded. Throws DimensionMismatch.
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

/// Orthonormal basis of the column span. Directions whose singular value
/// falls at or below `tol` are dropped; the empty input yields an empty
/// basis.
ComplexMatrix orthonormalize(const ComplexMatrix& vectors, double tol = kDefaultRankTol);

} // namespace usd

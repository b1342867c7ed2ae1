// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <vector>

#include "usd/linalg.hpp"
#include "usd/subspace.hpp"

namespace usd {

/// A unit-trace PSD Hermitian operator.
///
/// The reduction pipeline also produces degenerate "zero states": a state
/// whose entire support was projected away keeps its slot in the problem as
/// the zero operator with prior weight zero. `is_zero()` marks those.
class DensityMatrix {
  public:
    /// Throws NotPsd / Error on violated positivity or |Tr - 1| > kTraceTol.
    explicit DensityMatrix(const HermitianOperator& op, double rank_tol = kDefaultRankTol);

    static DensityMatrix zero(Eigen::Index dim);

    /// Pure state |psi><psi| from a unit vector.
    static DensityMatrix pure(const ComplexVector& psi);

    /// Deserialization escape hatch: wraps the operator without checking
    /// the trace and positivity invariants, so invalid files can still be
    /// loaded and reported on by validate_problem.
    static DensityMatrix unchecked(HermitianOperator op);

    Eigen::Index dim() const { return op_.dim(); }
    const HermitianOperator& op() const { return op_; }
    const ComplexMatrix& matrix() const { return op_.matrix(); }
    bool is_zero() const { return zero_; }

  private:
    DensityMatrix(HermitianOperator op, bool zero) : op_(std::move(op)), zero_(zero) {}

    HermitianOperator op_;
    bool zero_;
};

/// N >= 2 density matrices with priors on a common ambient space. A
/// zero-dimensional problem (ambient_dim 0) marks the fully reduced fixed
/// point of a reduction chain.
class DiscriminationProblem {
  public:
    DiscriminationProblem(std::vector<DensityMatrix> states, std::vector<double> priors);

    /// The empty endpoint of a reduction that consumed the whole space.
    static DiscriminationProblem zero_dimensional(std::size_t n_states);

    std::size_t n_states() const { return states_.size(); }
    Eigen::Index ambient_dim() const { return ambient_dim_; }
    bool is_zero_dimensional() const { return ambient_dim_ == 0; }
    const std::vector<DensityMatrix>& states() const { return states_; }
    const DensityMatrix& state(std::size_t i) const { return states_.at(i); }
    const std::vector<double>& priors() const { return priors_; }
    double prior(std::size_t i) const { return priors_.at(i); }

    /// Support of state i (empty for zero states).
    Subspace state_support(std::size_t i, double rank_tol = kDefaultRankTol) const;

    /// Sum of all state supports.
    Subspace joint_support(double rank_tol = kDefaultRankTol) const;

  private:
    std::vector<DensityMatrix> states_;
    std::vector<double> priors_;
    Eigen::Index ambient_dim_;
};

/// POVM with named conclusive elements F_1..F_N and the inconclusive F_?.
struct Povm {
    std::vector<HermitianOperator> conclusive;
    HermitianOperator inconclusive;

    /// All-zero conclusive elements, F_? = I (always inconclusive).
    static Povm trivial(std::size_t n_states, Eigen::Index dim);

    /// POVM on the zero-dimensional space (all elements 0x0).
    static Povm zero_dimensional(std::size_t n_states);

    Eigen::Index dim() const { return inconclusive.dim(); }

    /// ||sum F_k + F_? - I||_max.
    double completeness_residual() const;
};

/// One validity check with its measured residual.
struct ValidationCheck {
    std::string name;
    bool passed;
    double residual;
    std::string detail;
};

struct ValidationReport {
    bool valid = true;
    std::vector<ValidationCheck> checks;

    void add(std::string name, bool passed, double residual, std::string detail = "");
};

/// Checks priors, unit traces, positivity, shared dimensions and the rank
/// inequality r1 + r2 >= dim(joint support) for two-state problems. Never
/// throws; failures are carried in the report.
ValidationReport validate_problem(const DiscriminationProblem& p,
                                  const Tolerances& tol = Tolerances{});

/// Q = sum_i p_i Tr(rho_i F_?), clamped to [0, 1]. Throws DimensionMismatch.
double failure_probability(const DiscriminationProblem& p, const Povm& m);

/// USD verdict with the measured residuals behind it.
struct UsdReport {
    bool ok = false;
    double max_misidentification = 0.0; // max over i != k of Tr(rho_i F_k)/Tr(F_k)
    double min_element_eigenvalue = 0.0;
    double completeness_residual = 0.0;
};

/// True iff no element misidentifies (Tr(rho_i F_k) <= tol * Tr(F_k) for
/// i != k), all elements are PSD and the completeness relation holds.
UsdReport is_usd_povm(const DiscriminationProblem& p, const Povm& m,
                      double tol = kMisidTol);

/// Support-orthogonality predicate: all principal angles between the
/// supports of A and B are within tol of pi/2. Asserts agreement with the
/// trace criterion Tr(AB) <= tol * Tr(A) * Tr(B); a disagreement marks an
/// input at the tolerance boundary and throws Error. Throws NotPsd for
/// non-PSD input.
bool supports_orthogonal(const HermitianOperator& a, const HermitianOperator& b,
                         double tol = kDefaultAngleTol);

} // namespace usd

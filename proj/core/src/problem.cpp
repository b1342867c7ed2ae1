// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace usd {

DensityMatrix::DensityMatrix(const HermitianOperator& op, double rank_tol)
    : op_(op), zero_(false) {
    const double trace = op.matrix().trace().real();
    if (std::abs(trace) <= kTraceTol && max_abs(op.matrix()) <= kTraceTol) {
        zero_ = true;
        return;
    }
    if (std::abs(trace - 1.0) > kTraceTol) {
        throw Error("DensityMatrix: trace " + std::to_string(trace) + " is not 1");
    }
    if (!is_psd(op, rank_tol)) {
        throw NotPsd("DensityMatrix: operator is not positive semi-definite");
    }
}

DensityMatrix DensityMatrix::zero(Eigen::Index dim) {
    return DensityMatrix(HermitianOperator::zero(dim), true);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > kTraceTol) {
        throw Error("DensityMatrix::pure: vector norm " + std::to_string(norm) +
                    " is not 1");
    }
    return DensityMatrix(HermitianOperator(psi * psi.adjoint()));
}

DensityMatrix DensityMatrix::unchecked(HermitianOperator op) {
    const bool zero = max_abs(op.matrix()) <= kTraceTol;
    return DensityMatrix(std::move(op), zero);
}

DiscriminationProblem::DiscriminationProblem(std::vector<DensityMatrix> states,
                                             std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
    if (states_.size() < 2) {
        throw InvalidProblem("DiscriminationProblem: need at least 2 states");
    }
    if (priors_.size() != states_.size()) {
        throw InvalidProblem("DiscriminationProblem: " + std::to_string(states_.size()) +
                             " states but " + std::to_string(priors_.size()) + " priors");
    }
    ambient_dim_ = states_.front().dim();
    for (const DensityMatrix& s : states_) {
        if (s.dim() != ambient_dim_) {
            throw DimensionMismatch("DiscriminationProblem: states live on different spaces");
        }
    }
}

DiscriminationProblem DiscriminationProblem::zero_dimensional(std::size_t n_states) {
    std::vector<DensityMatrix> states(n_states, DensityMatrix::zero(0));
    std::vector<double> priors(n_states, 1.0 / static_cast<double>(n_states));
    return DiscriminationProblem(std::move(states), std::move(priors));
}

Subspace DiscriminationProblem::state_support(std::size_t i, double rank_tol) const {
    if (states_.at(i).is_zero()) {
        return Subspace::zero(ambient_dim_);
    }
    return support(states_.at(i).op(), rank_tol);
}

Subspace DiscriminationProblem::joint_support(double rank_tol) const {
    Subspace joint = Subspace::zero(ambient_dim_);
    for (std::size_t i = 0; i < states_.size(); ++i) {
        joint = sum(joint, state_support(i, rank_tol), rank_tol);
    }
    return joint;
}

Povm Povm::trivial(std::size_t n_states, Eigen::Index dim) {
    return Povm{std::vector<HermitianOperator>(n_states, HermitianOperator::zero(dim)),
                HermitianOperator(ComplexMatrix::Identity(dim, dim))};
}

Povm Povm::zero_dimensional(std::size_t n_states) {
    return trivial(n_states, 0);
}

double Povm::completeness_residual() const {
    ComplexMatrix total = inconclusive.matrix();
    for (const HermitianOperator& f : conclusive) {
        total += f.matrix();
    }
    return max_abs(total - ComplexMatrix::Identity(total.rows(), total.cols()));
}

void ValidationReport::add(std::string name, bool passed, double residual,
                           std::string detail) {
    valid = valid && passed;
    checks.push_back(
        ValidationCheck{std::move(name), passed, residual, std::move(detail)});
}

ValidationReport validate_problem(const DiscriminationProblem& p, const Tolerances& tol) {
    ValidationReport report;
    if (p.is_zero_dimensional()) {
        report.add("zero_dimensional", true, 0.0, "fully reduced problem, vacuously valid");
        return report;
    }

    double prior_sum = 0.0;
    double min_prior = 1.0;
    for (double prior : p.priors()) {
        prior_sum += prior;
        min_prior = std::min(min_prior, prior);
    }
    report.add("priors_nonnegative", min_prior >= -kTraceTol, std::min(min_prior, 0.0));
    report.add("priors_sum_to_one", std::abs(prior_sum - 1.0) <= kTraceTol,
               std::abs(prior_sum - 1.0), "sum = " + std::to_string(prior_sum));
    if (min_prior <= kTraceTol) {
        report.add("prior_degenerate", true, min_prior,
                   "a state has prior ~0 and never occurs");
    }

    for (std::size_t i = 0; i < p.n_states(); ++i) {
        const std::string label = "state_" + std::to_string(i);
        if (p.state(i).is_zero()) {
            report.add(label + "_zero", true, 0.0, "degenerate zero state");
            continue;
        }
        const double trace = p.state(i).matrix().trace().real();
        report.add(label + "_unit_trace", std::abs(trace - 1.0) <= kTraceTol,
                   std::abs(trace - 1.0));
        const EigenDecomposition eig = eig_hermitian(p.state(i).op());
        const double min_eig = eig.eigenvalues(0);
        report.add(label + "_psd", min_eig >= -tol.rank_tol, std::min(min_eig, 0.0));
    }

    if (p.n_states() == 2) {
        const Eigen::Index r1 = p.state_support(0, tol.rank_tol).dim();
        const Eigen::Index r2 = p.state_support(1, tol.rank_tol).dim();
        const Eigen::Index d = p.joint_support(tol.rank_tol).dim();
        report.add("rank_inequality", r1 + r2 >= d,
                   static_cast<double>(d - r1 - r2),
                   std::to_string(r1) + "+" + std::to_string(r2) +
                       " vs joint dimension " + std::to_string(d));
    }
    return report;
}

double failure_probability(const DiscriminationProblem& p, const Povm& m) {
    if (p.is_zero_dimensional()) {
        return 0.0;
    }
    if (m.dim() != p.ambient_dim() ||
        m.conclusive.size() != p.n_states()) {
        throw DimensionMismatch("failure_probability: POVM does not match problem");
    }
    double q = 0.0;
    for (std::size_t i = 0; i < p.n_states(); ++i) {
        q += p.prior(i) * trace_product(p.state(i).op(), m.inconclusive);
    }
    return std::clamp(q, 0.0, 1.0);
}

UsdReport is_usd_povm(const DiscriminationProblem& p, const Povm& m, double tol) {
    UsdReport report;
    if (m.dim() != p.ambient_dim() || m.conclusive.size() != p.n_states()) {
        throw DimensionMismatch("is_usd_povm: POVM does not match problem");
    }
    if (p.is_zero_dimensional()) {
        report.ok = true;
        return report;
    }

    double max_misid = 0.0;
    for (std::size_t k = 0; k < m.conclusive.size(); ++k) {
        const double weight = std::max(m.conclusive[k].matrix().trace().real(), 0.0);
        for (std::size_t i = 0; i < p.n_states(); ++i) {
            if (i == k || p.state(i).is_zero()) {
                continue;
            }
            const double overlap = trace_product(p.state(i).op(), m.conclusive[k]);
            const double relative = overlap / std::max(weight, kTraceTol);
            max_misid = std::max(max_misid, relative);
        }
    }

    double min_eig = 0.0;
    auto track_min_eig = [&min_eig](const HermitianOperator& f) {
        if (f.dim() > 0) {
            min_eig = std::min(min_eig, eig_hermitian(f).eigenvalues(0));
        }
    };
    for (const HermitianOperator& f : m.conclusive) {
        track_min_eig(f);
    }
    track_min_eig(m.inconclusive);

    report.max_misidentification = max_misid;
    report.min_element_eigenvalue = min_eig;
    report.completeness_residual = m.completeness_residual();
    report.ok = max_misid <= tol && min_eig >= -tol &&
                report.completeness_residual <= kCompletenessTol;
    return report;
}

bool supports_orthogonal(const HermitianOperator& a, const HermitianOperator& b,
                         double tol) {
    const Subspace sa = support(a, kDefaultRankTol);
    const Subspace sb = support(b, kDefaultRankTol);

    bool by_angles = true;
    if (!sa.is_zero() && !sb.is_zero()) {
        const std::vector<double> angles = principal_angles(sa, sb);
        // smallest angle carries the largest cosine
        by_angles = std::cos(angles.front()) <= tol;
    }

    const double trace = trace_product(a, b);
    const double scale = a.matrix().trace().real() * b.matrix().trace().real();
    const bool by_trace = trace <= tol * std::max(scale, kTraceTol);

    if (by_angles != by_trace) {
        throw Error("supports_orthogonal: angle and trace criteria disagree "
                    "(input at tolerance boundary)");
    }
    return by_angles;
}

} // namespace usd

// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/reduction.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace usd {

namespace {

void require_two_states(const DiscriminationProblem& p, const char* op) {
    if (p.n_states() != 2) {
        throw InvalidProblem(std::string(op) + ": expected 2 states, got " +
                             std::to_string(p.n_states()));
    }
}

/// Projects both states onto the retained space H' (given by its
/// orthonormal basis in the input coordinates) and renormalizes states and
/// priors per the reduction bookkeeping. Returns the reduced problem plus
/// the normalizations N1, N2.
struct Projection {
    DiscriminationProblem reduced;
    double n1;
    double n2;
};

Projection project_onto(const DiscriminationProblem& p, const Subspace& retained) {
    const ComplexMatrix& basis = retained.basis();
    std::vector<DensityMatrix> states;
    std::vector<double> weights(2);
    states.reserve(2);
    for (std::size_t i = 0; i < 2; ++i) {
        ComplexMatrix projected = basis.adjoint() * p.state(i).matrix() * basis;
        const double weight = std::max(projected.trace().real(), 0.0);
        weights[i] = weight;
        if (weight <= kTraceTol) {
            states.push_back(DensityMatrix::zero(retained.dim()));
            weights[i] = 0.0;
        } else {
            states.push_back(DensityMatrix(HermitianOperator(projected / weight)));
        }
    }
    const double n = weights[0] * p.prior(0) + weights[1] * p.prior(1);
    std::vector<double> priors(2, 0.5);
    if (n > 0.0) {
        priors = {weights[0] * p.prior(0) / n, weights[1] * p.prior(1) / n};
    }
    return Projection{DiscriminationProblem(std::move(states), std::move(priors)),
                      weights[0], weights[1]};
}

} // namespace

ComplexMatrix ReductionTrace::total_embedding() const {
    ComplexMatrix embedding = joint.basis();
    for (const ReductionStep& step : steps) {
        embedding = embedding * step.retained_basis;
    }
    return embedding;
}

std::optional<StepResult> common_subspace_reduce(const DiscriminationProblem& p,
                                                 const Tolerances& tol) {
    require_two_states(p, "common_subspace_reduce");
    if (p.is_zero_dimensional()) {
        return std::nullopt;
    }
    const Subspace s1 = p.state_support(0, tol.rank_tol);
    const Subspace s2 = p.state_support(1, tol.rank_tol);
    const Subspace common = intersection(s1, s2, tol.angle_tol);
    if (common.is_zero()) {
        return std::nullopt;
    }
    const Subspace joint = sum(s1, s2, tol.rank_tol);
    const Subspace retained = complement_within(common, joint, tol.angle_tol);

    if (retained.is_zero()) {
        // Identical supports: nothing survives, discrimination is impossible.
        ReductionStep step{ReductionStep::Kind::CommonSubspace,
                           {common},
                           retained,
                           retained.basis(),
                           0.0,
                           0.0,
                           1.0,
                           0.0};
        return StepResult{DiscriminationProblem::zero_dimensional(2), std::move(step)};
    }

    Projection proj = project_onto(p, retained);
    ReductionStep step;
    step.kind = ReductionStep::Kind::CommonSubspace;
    step.removed = {common};
    step.retained = retained;
    step.retained_basis = retained.basis();
    step.n1 = proj.n1;
    step.n2 = proj.n2;
    step.q_offset = (1.0 - proj.n1) * p.prior(0) + (1.0 - proj.n2) * p.prior(1);
    step.q_scale = proj.n1 * p.prior(0) + proj.n2 * p.prior(1);
    return StepResult{std::move(proj.reduced), std::move(step)};
}

std::optional<StepResult> orthogonal_split_reduce(const DiscriminationProblem& p,
                                                  const Tolerances& tol) {
    require_two_states(p, "orthogonal_split_reduce");
    if (p.is_zero_dimensional()) {
        return std::nullopt;
    }
    const Subspace s1 = p.state_support(0, tol.rank_tol);
    const Subspace s2 = p.state_support(1, tol.rank_tol);
    if (!intersection(s1, s2, tol.angle_tol).is_zero()) {
        throw CommonSubspacePresent(
            "orthogonal_split_reduce: supports intersect; split the common "
            "subspace first");
    }
    // Part of S2 orthogonal to S1 (identifies state 2), and vice versa.
    const Subspace ortho_in_s2 = complement_within(s1, s2, tol.angle_tol);
    const Subspace ortho_in_s1 = complement_within(s2, s1, tol.angle_tol);
    if (ortho_in_s2.is_zero() && ortho_in_s1.is_zero()) {
        return std::nullopt;
    }
    const Subspace joint = sum(s1, s2, tol.rank_tol);
    const Subspace removed = sum(ortho_in_s1, ortho_in_s2, tol.rank_tol);
    const Subspace retained = complement_within(removed, joint, tol.angle_tol);

    ReductionStep step;
    step.kind = ReductionStep::Kind::OrthogonalSplit;
    step.removed = {ortho_in_s1, ortho_in_s2};
    step.retained = retained;
    step.retained_basis = retained.basis();
    if (retained.is_zero()) {
        step.n1 = 0.0;
        step.n2 = 0.0;
        step.q_offset = 0.0;
        step.q_scale = 0.0;
        return StepResult{DiscriminationProblem::zero_dimensional(2), std::move(step)};
    }
    Projection proj = project_onto(p, retained);
    step.n1 = proj.n1;
    step.n2 = proj.n2;
    step.q_offset = 0.0;
    step.q_scale = proj.n1 * p.prior(0) + proj.n2 * p.prior(1);
    return StepResult{std::move(proj.reduced), std::move(step)};
}

ReductionTrace reduce_to_standard_form(const DiscriminationProblem& p,
                                       const Tolerances& tol) {
    require_two_states(p, "reduce_to_standard_form");

    const Subspace joint = p.joint_support(tol.rank_tol);
    DiscriminationProblem current =
        joint.is_zero() ? DiscriminationProblem::zero_dimensional(2)
                        : project_onto(p, joint).reduced;

    std::vector<ReductionStep> steps;
    const Eigen::Index initial_dim = joint.dim();
    for (Eigen::Index guard = 0; guard <= initial_dim; ++guard) {
        bool applied = false;
        if (auto result = common_subspace_reduce(current, tol)) {
            steps.push_back(std::move(result->step));
            current = std::move(result->reduced);
            applied = true;
        }
        if (!current.is_zero_dimensional()) {
            if (auto result = orthogonal_split_reduce(current, tol)) {
                steps.push_back(std::move(result->step));
                current = std::move(result->reduced);
                applied = true;
            }
        }
        if (!applied) {
            break;
        }
        if (guard == initial_dim) {
            throw ConvergenceFailure(
                "reduce_to_standard_form: iteration did not reach a fixed point");
        }
    }
    return ReductionTrace{p, joint, std::move(steps), std::move(current), tol};
}

Povm lift_povm(const ReductionTrace& trace, const Povm& reduced_povm) {
    if (reduced_povm.conclusive.size() != 2) {
        throw InvalidPovm("lift_povm: expected a two-state POVM");
    }
    if (trace.final.is_zero_dimensional()) {
        if (reduced_povm.dim() != 0) {
            throw NotUsdOnReduced(
                "lift_povm: final problem is zero-dimensional but the POVM is not");
        }
    } else {
        if (reduced_povm.dim() != trace.final.ambient_dim()) {
            throw DimensionMismatch("lift_povm: POVM dimension " +
                                    std::to_string(reduced_povm.dim()) +
                                    " does not match the final problem");
        }
        if (!is_usd_povm(trace.final, reduced_povm).ok) {
            throw NotUsdOnReduced(
                "lift_povm: POVM is not a USD measurement on the reduced problem");
        }
    }

    ComplexMatrix f1 = reduced_povm.conclusive[0].matrix();
    ComplexMatrix f2 = reduced_povm.conclusive[1].matrix();
    ComplexMatrix fq = reduced_povm.inconclusive.matrix();

    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        const ReductionStep& step = *it;
        const ComplexMatrix& basis = step.retained_basis;
        f1 = basis * f1 * basis.adjoint();
        f2 = basis * f2 * basis.adjoint();
        fq = basis * fq * basis.adjoint();
        if (step.kind == ReductionStep::Kind::CommonSubspace) {
            fq += projector(step.removed[0]).matrix();
        } else {
            // Each removed part sits inside one state's support and is
            // orthogonal to the other's: it identifies its state for free.
            f1 += projector(step.removed[0]).matrix();
            f2 += projector(step.removed[1]).matrix();
        }
    }

    const ComplexMatrix& joint_basis = trace.joint.basis();
    const Eigen::Index d = trace.original.ambient_dim();
    ComplexMatrix lifted_f1 = joint_basis * f1 * joint_basis.adjoint();
    ComplexMatrix lifted_f2 = joint_basis * f2 * joint_basis.adjoint();
    ComplexMatrix lifted_fq = joint_basis * fq * joint_basis.adjoint();
    lifted_fq += ComplexMatrix::Identity(d, d) - joint_basis * joint_basis.adjoint();

    return Povm{{HermitianOperator(lifted_f1), HermitianOperator(lifted_f2)},
                HermitianOperator(lifted_fq)};
}

double compose_failure(const ReductionTrace& trace, double q_final) {
    double q = q_final;
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        q = it->q_offset + it->q_scale * q;
    }
    return q;
}

} // namespace usd

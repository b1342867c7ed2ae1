// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/multistate.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace usd {

namespace {

/// Support of the aggregate state of everything but i: the span of the
/// other states' supports (identical to the support of the mixture, but
/// computed without forming it).
Subspace aggregate_support(const DiscriminationProblem& p, std::size_t skip,
                           const Tolerances& tol) {
    Subspace agg = Subspace::zero(p.ambient_dim());
    for (std::size_t j = 0; j < p.n_states(); ++j) {
        if (j != skip) {
            agg = sum(agg, p.state_support(j, tol.rank_tol), tol.rank_tol);
        }
    }
    return agg;
}

struct Applied {
    DiscriminationProblem reduced;
    std::vector<double> normals;
    double weight_sum; // sum_j N_j p_j
};

Applied project_all(const DiscriminationProblem& p, const Subspace& retained) {
    const std::size_t n = p.n_states();
    const ComplexMatrix& basis = retained.basis();
    std::vector<DensityMatrix> states;
    std::vector<double> normals(n, 0.0);
    states.reserve(n);
    double weight_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        ComplexMatrix projected = basis.adjoint() * p.state(j).matrix() * basis;
        double weight = projected.size() == 0 ? 0.0 : std::max(projected.trace().real(), 0.0);
        if (weight <= kTraceTol) {
            states.push_back(DensityMatrix::zero(retained.dim()));
            weight = 0.0;
        } else {
            states.push_back(DensityMatrix(HermitianOperator(projected / weight)));
        }
        normals[j] = weight;
        weight_sum += weight * p.prior(j);
    }
    std::vector<double> priors(n, 1.0 / static_cast<double>(n));
    if (weight_sum > 0.0) {
        for (std::size_t j = 0; j < n; ++j) {
            priors[j] = normals[j] * p.prior(j) / weight_sum;
        }
    }
    DiscriminationProblem reduced =
        retained.is_zero() ? DiscriminationProblem::zero_dimensional(n)
                           : DiscriminationProblem(std::move(states), std::move(priors));
    return Applied{std::move(reduced), std::move(normals), weight_sum};
}

NStateStep make_step(const DiscriminationProblem& input, NStateStep::Kind kind,
                     std::size_t i, Subspace removed, Subspace retained,
                     const Applied& applied) {
    NStateStep step;
    step.kind = kind;
    step.state_index = i;
    step.removed = std::move(removed);
    step.retained = std::move(retained);
    step.retained_basis = step.retained.basis();
    step.normals = applied.normals;
    step.q_scale = applied.weight_sum;
    step.q_offset = 0.0;
    if (kind == NStateStep::Kind::CommonRemoval) {
        for (std::size_t j = 0; j < input.n_states(); ++j) {
            step.q_offset += (1.0 - applied.normals[j]) * input.prior(j);
        }
    }
    return step;
}

} // namespace

PairwiseView build_pairwise_view(const DiscriminationProblem& p, std::size_t i) {
    if (i >= p.n_states()) {
        throw Error("build_pairwise_view: state index out of range");
    }
    const double pi = p.prior(i);
    if (1.0 - pi <= kTraceTol) {
        throw DegeneratePrior("build_pairwise_view: prior of state " + std::to_string(i) +
                              " is 1, the aggregate of the others is empty");
    }
    ComplexMatrix mix = ComplexMatrix::Zero(p.ambient_dim(), p.ambient_dim());
    for (std::size_t j = 0; j < p.n_states(); ++j) {
        if (j != i) {
            mix += (p.prior(j) / (1.0 - pi)) * p.state(j).matrix();
        }
    }
    return PairwiseView{i, p.state(i), DensityMatrix(HermitianOperator(mix)), pi,
                        1.0 - pi};
}

ComplexMatrix NStateReduction::total_embedding() const {
    ComplexMatrix embedding = joint.basis();
    for (const NStateStep& step : steps) {
        embedding = embedding * step.retained_basis;
    }
    return embedding;
}

NStateReduction nstate_reduce(const DiscriminationProblem& p, const Tolerances& tol) {
    const std::size_t n = p.n_states();
    const Subspace joint = p.joint_support(tol.rank_tol);
    DiscriminationProblem current =
        joint.is_zero() ? DiscriminationProblem::zero_dimensional(n)
                        : project_all(p, joint).reduced;

    std::vector<NStateStep> steps;
    const Eigen::Index initial_dim = joint.dim();
    for (Eigen::Index pass = 0; pass <= initial_dim; ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i < n && !current.is_zero_dimensional(); ++i) {
            // Rule (a): the common subspace of S_i and the aggregate support
            // is unusable for everyone; project it out of all states.
            {
                const Subspace si = current.state_support(i, tol.rank_tol);
                const Subspace agg = aggregate_support(current, i, tol);
                const Subspace common = intersection(si, agg, tol.angle_tol);
                if (!common.is_zero()) {
                    const Subspace retained =
                        complement_within(common, Subspace::full(current.ambient_dim()),
                                          tol.angle_tol);
                    Applied applied = project_all(current, retained);
                    steps.push_back(make_step(current, NStateStep::Kind::CommonRemoval, i,
                                              common, retained, applied));
                    current = std::move(applied.reduced);
                    changed = true;
                }
            }
            if (current.is_zero_dimensional()) {
                break;
            }
            // Rule (b): the part of S_i orthogonal to every other support is
            // identified for free; split it off from state i only.
            {
                const Subspace si = current.state_support(i, tol.rank_tol);
                const Subspace agg = aggregate_support(current, i, tol);
                const Subspace identifiable = complement_within(agg, si, tol.angle_tol);
                if (!identifiable.is_zero()) {
                    const Subspace retained = complement_within(
                        identifiable, Subspace::full(current.ambient_dim()),
                        tol.angle_tol);
                    Applied applied = project_all(current, retained);
                    steps.push_back(make_step(current, NStateStep::Kind::IdentifiableSplit,
                                              i, identifiable, retained, applied));
                    current = std::move(applied.reduced);
                    changed = true;
                }
            }
        }
        if (!changed) {
            break;
        }
        if (pass == initial_dim) {
            throw ConvergenceFailure("nstate_reduce: pass loop did not reach a fixed point");
        }
    }
    return NStateReduction{p, joint, std::move(steps), std::move(current)};
}

Povm lift_nstate_povm(const NStateReduction& reduction, const Povm& reduced_povm) {
    const std::size_t n = reduction.original.n_states();
    if (reduced_povm.conclusive.size() != n) {
        throw InvalidPovm("lift_nstate_povm: element count does not match the problem");
    }
    if (!reduction.final.is_zero_dimensional() &&
        !is_usd_povm(reduction.final, reduced_povm).ok) {
        throw NotUsdOnReduced(
            "lift_nstate_povm: POVM is not a USD measurement on the reduced problem");
    }

    std::vector<ComplexMatrix> conclusive;
    conclusive.reserve(n);
    for (const HermitianOperator& f : reduced_povm.conclusive) {
        conclusive.push_back(f.matrix());
    }
    ComplexMatrix fq = reduced_povm.inconclusive.matrix();

    for (auto it = reduction.steps.rbegin(); it != reduction.steps.rend(); ++it) {
        const NStateStep& step = *it;
        const ComplexMatrix& basis = step.retained_basis;
        for (ComplexMatrix& f : conclusive) {
            f = basis * f * basis.adjoint();
        }
        fq = basis * fq * basis.adjoint();
        const ComplexMatrix removed = projector(step.removed).matrix();
        if (step.kind == NStateStep::Kind::CommonRemoval) {
            fq += removed;
        } else {
            conclusive[step.state_index] += removed;
        }
    }

    const ComplexMatrix& jb = reduction.joint.basis();
    const Eigen::Index d = reduction.original.ambient_dim();
    std::vector<HermitianOperator> lifted;
    lifted.reserve(n);
    for (const ComplexMatrix& f : conclusive) {
        lifted.push_back(HermitianOperator(jb * f * jb.adjoint()));
    }
    ComplexMatrix lifted_fq = jb * fq * jb.adjoint();
    lifted_fq += ComplexMatrix::Identity(d, d) - jb * jb.adjoint();
    return Povm{std::move(lifted), HermitianOperator(lifted_fq)};
}

} // namespace usd

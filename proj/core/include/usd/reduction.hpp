// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <vector>

#include "usd/problem.hpp"
#include "usd/subspace.hpp"

namespace usd {

/// One application of a reduction theorem to a two-state problem.
///
/// The step acts on a problem whose ambient space equals its joint support
/// (the pipeline restricts to the joint support up front). `removed`
/// subspaces and the retained space `H'` are expressed in the input space's
/// coordinates and tile it; `retained_basis` is the isometry embedding the
/// reduced space back into the input space.
///
/// The failure probability composes affinely through a step:
///   Q_input = q_offset + q_scale * Q_reduced.
struct ReductionStep {
    enum class Kind {
        CommonSubspace, // removes the intersection of the supports
        OrthogonalSplit // removes the mutually orthogonal support parts
    };

    Kind kind;
    /// CommonSubspace: {H_cap}. OrthogonalSplit: indexed by the state the
    /// removed part identifies, i.e. {part of S1 orthogonal to S2, part of
    /// S2 orthogonal to S1}.
    std::vector<Subspace> removed;
    Subspace retained;
    ComplexMatrix retained_basis; // == retained.basis(), d_in x d_out
    double n1 = 0.0;              // Tr(rho_1 Pi_H')
    double n2 = 0.0;              // Tr(rho_2 Pi_H')
    double q_offset = 0.0;
    double q_scale = 0.0;

    Eigen::Index input_dim() const { return retained_basis.rows(); }
    Eigen::Index output_dim() const { return retained_basis.cols(); }
};

/// Full record of a reduction chain: the original problem, the isometry
/// onto its joint support, the steps applied there, and the fixed point.
struct ReductionTrace {
    DiscriminationProblem original;
    Subspace joint; // joint support of the original, in ambient coordinates
    std::vector<ReductionStep> steps;
    DiscriminationProblem final;
    Tolerances tol;

    /// Isometry from the final space into the original ambient space.
    ComplexMatrix total_embedding() const;
};

struct StepResult {
    DiscriminationProblem reduced;
    ReductionStep step;
};

/// Splits off the common subspace of the two supports (no-op when the
/// supports are disjoint). The reduced problem lives on a basis of H', the
/// orthogonal complement of the intersection within the joint support.
/// Identical supports collapse to the zero-dimensional problem with
/// q_offset = 1. Throws InvalidProblem unless the problem has 2 states.
std::optional<StepResult> common_subspace_reduce(const DiscriminationProblem& p,
                                                 const Tolerances& tol = Tolerances{});

/// Splits off the parts of each support orthogonal to the other support
/// (no-op when both parts are empty). Requires disjoint supports; throws
/// CommonSubspacePresent otherwise.
std::optional<StepResult> orthogonal_split_reduce(const DiscriminationProblem& p,
                                                  const Tolerances& tol = Tolerances{});

/// Restricts to the joint support, then alternates the two reductions to a
/// fixed point. The final problem has equal ranks r on a 2r-dimensional
/// space with disjoint supports and empty relative orthogonal complements,
/// or is zero-dimensional.
ReductionTrace reduce_to_standard_form(const DiscriminationProblem& p,
                                       const Tolerances& tol = Tolerances{});

/// Embeds a USD POVM for trace.final back onto trace.original: walks the
/// steps in reverse, adding the removed projectors to F_? (common subspace)
/// or to the conclusive elements (orthogonal split), and finally pads F_?
/// with the projector onto the ambient complement of the joint support.
/// Throws NotUsdOnReduced when reduced_povm fails the USD check on the
/// final problem.
Povm lift_povm(const ReductionTrace& trace, const Povm& reduced_povm);

/// Folds q_final through the affine step compositions in reverse.
double compose_failure(const ReductionTrace& trace, double q_final);

} // namespace usd

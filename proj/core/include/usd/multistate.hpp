// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <vector>

#include "usd/problem.hpp"
#include "usd/subspace.hpp"

namespace usd {

/// The two-density-matrix view of state i against the aggregate of the
/// others: rho_tilde2 = sum_{j != i} p_j rho_j / (1 - p_i).
struct PairwiseView {
    std::size_t index;
    DensityMatrix rho_tilde1;
    DensityMatrix rho_tilde2;
    double p_tilde1;
    double p_tilde2;
};

/// Throws DegeneratePrior when p_i = 1 (the aggregate would be empty).
PairwiseView build_pairwise_view(const DiscriminationProblem& p, std::size_t i);

/// One applied N-state reduction rule, in the coordinates of its input
/// space (which the pipeline keeps equal to the running joint support).
struct NStateStep {
    enum class Kind {
        /// The intersection of one support with the aggregate of the others
        /// is projected out of every state; that part can never be
        /// discriminated and belongs to F_?.
        CommonRemoval,
        /// The part of state i's support orthogonal to all other supports
        /// is split off from state i alone; it identifies state i for free.
        IdentifiableSplit
    };

    Kind kind;
    std::size_t state_index; // the i whose view triggered the rule
    Subspace removed;
    Subspace retained;
    ComplexMatrix retained_basis;
    std::vector<double> normals; // N_j = Tr(rho_j Pi_H') for every state
    double q_offset;             // sum_j (1 - N_j) p_j for CommonRemoval, else 0
    double q_scale;              // sum_j N_j p_j
};

struct NStateReduction {
    DiscriminationProblem original;
    Subspace joint;
    std::vector<NStateStep> steps;
    DiscriminationProblem final;

    ComplexMatrix total_embedding() const;
};

/// Applies the two rules in ascending state order, repeatedly, until a full
/// pass changes nothing. Only rho_tilde1-side parts are ever split off as
/// identifiable; the aggregate side carries no per-state orthogonality
/// information and is never reduced one-sidedly.
NStateReduction nstate_reduce(const DiscriminationProblem& p,
                              const Tolerances& tol = Tolerances{});

/// Assembles a USD POVM for the original problem from one for the reduced
/// problem: conclusive elements gain the projectors onto their identifiable
/// split-off parts, F_? gains the removed common parts and the ambient
/// complement of the joint support.
Povm lift_nstate_povm(const NStateReduction& reduction, const Povm& reduced_povm);

} // namespace usd

// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <random>

#include "usd/problem.hpp"

namespace usd {

/// Requested support geometry of a generated two-state problem:
/// rank(rho_1) = r1, rank(rho_2) = r2 and dim(S_1 cap S_2) = common.
struct ProblemShape {
    int dim;
    int r1;
    int r2;
    int common;
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// phase convention fixed on the diagonal of R.
ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

/// Full-rank random density matrix on C^dim (Wishart plus a small ridge so
/// every eigenvalue stays well above the rank threshold).
ComplexMatrix random_full_rank_density(Eigen::Index dim, std::mt19937_64& rng);

/// Random unit vector.
ComplexVector random_state_vector(Eigen::Index dim, std::mt19937_64& rng);

/// Generates a two-state problem with exactly the requested support shape:
/// a shared intersection frame is drawn first, then independent remainders
/// in general position. Deterministic under the seed. Throws
/// InfeasibleShape when the ranks do not fit the dimension.
DiscriminationProblem generate_problem(const ProblemShape& shape, double p1,
                                       std::uint64_t seed);

/// Same, drawing from an already-running RNG stream.
DiscriminationProblem generate_problem(const ProblemShape& shape, double p1,
                                       std::mt19937_64& rng);

/// Random valid USD POVM for a two-state problem: elements drawn on the
/// ranges forced by the no-misidentification constraints, then scaled
/// strictly inside the completeness cap. For zero-dimensional problems
/// returns the empty POVM.
Povm random_usd_povm(const DiscriminationProblem& p, std::mt19937_64& rng,
                     const Tolerances& tol = Tolerances{});

} // namespace usd

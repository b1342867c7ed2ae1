// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "usd/problem.hpp"
#include "usd/reduction.hpp"

namespace usd {

/// Settings for the penalized-ascent optimizer. Defaults are sized for
/// joint-support dimensions up to 8; everything is overridable.
struct OracleConfig {
    int restarts = 16;
    int max_iterations = 5000; // split across the penalty stages
    double step_tolerance = 1e-10;
    std::vector<double> constraint_penalty_schedule = {1e1, 1e2, 1e3, 1e4};
    std::uint64_t seed = 0;
};

/// Tighter-than-default settings for assertions about the fine structure
/// of the optimal measurement (e.g. the rank of F_?), where the default
/// schedule's leftover constraint slack of order 1/penalty_max would
/// drown the quantity under test.
OracleConfig tight_oracle_config(std::uint64_t seed);

struct OracleResiduals {
    double min_element_eigenvalue = 0.0;   // over F_1, F_2
    double min_slack_eigenvalue = 0.0;     // of I - F_1 - F_2
    double max_misidentification = 0.0;    // Tr(rho_i F_k), i != k
};

struct OracleResult {
    double q_opt = 1.0;
    Povm povm;
    bool converged = false;
    int best_restart = -1;
    OracleResiduals residuals;
    /// Accepted penalized-objective values of the best restart, one vector
    /// per penalty stage; non-decreasing within each stage by construction.
    std::vector<std::vector<double>> objective_history;
};

/// Numerically minimizes the failure probability over USD measurements for
/// a two-state problem.
///
/// The conclusive elements are parameterized as F_k = W_k X_k X_k^dag
/// W_k^dag with W_k an orthonormal basis of the part of the joint support
/// orthogonal to the other state's support, which enforces the
/// no-misidentification constraints exactly. The cap I - F_1 - F_2 >= 0 is
/// driven in by an annealed quadratic penalty on the clipped positive
/// eigenvalues of F_1 + F_2 - I, followed by an exact rescale onto the
/// feasible set. Restarts are merged by best objective with ties broken by
/// restart index; the RNG is split per restart from the seed.
///
/// Throws TooLarge when the joint support exceeds dimension 8 and
/// InvalidProblem for non-two-state problems. Non-convergence is reported
/// via `converged = false`, never silently.
OracleResult solve_optimal_usd(const DiscriminationProblem& p,
                               const OracleConfig& cfg = OracleConfig{});

struct CertificationReport {
    double q_original;
    double q_reduced;
    double q_composed;
    double difference; // |q_original - q_composed|
    bool pass;
    bool converged; // both oracle runs converged
};

/// Runs the oracle on the original problem and on trace.final and checks
/// that composing the reduced optimum through the trace reproduces the
/// original optimum within `tolerance`.
CertificationReport certify_against_reduction(const DiscriminationProblem& p,
                                              const ReductionTrace& trace,
                                              const OracleConfig& cfg = OracleConfig{},
                                              double tolerance = 2e-4);

} // namespace usd

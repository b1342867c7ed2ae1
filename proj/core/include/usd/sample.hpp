// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "usd/problem.hpp"

namespace usd {

/// Tally of a measurement simulation. counts[i][k] is the number of
/// outcome k (k = n_states means inconclusive) given true state i.
struct SampleReport {
    std::uint64_t trials = 0;
    std::vector<std::vector<std::uint64_t>> counts;
    double empirical_q = 0.0;
    double analytic_q = 0.0;
    std::uint64_t misidentification_count = 0;
};

/// Draws the true state from the priors and the outcome from the Born
/// probabilities p(k|i) = Tr(rho_i F_k). Throws InvalidPovm when the POVM
/// shape does not match or an outcome distribution fails to normalize.
SampleReport sample_measurements(const DiscriminationProblem& p, const Povm& m,
                                 std::uint64_t trials, std::uint64_t seed);

} // namespace usd

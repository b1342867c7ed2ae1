// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/sample.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace usd {

SampleReport sample_measurements(const DiscriminationProblem& p, const Povm& m,
                                 std::uint64_t trials, std::uint64_t seed) {
    const std::size_t n = p.n_states();
    if (m.conclusive.size() != n || m.dim() != p.ambient_dim()) {
        throw InvalidPovm("sample_measurements: POVM does not match the problem");
    }

    // Born probabilities per true state, outcome n = inconclusive.
    std::vector<std::vector<double>> born(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const HermitianOperator& element =
                k < n ? m.conclusive[k] : m.inconclusive;
            const double prob =
                std::max(trace_product(p.state(i).op(), element), 0.0);
            born[i][k] = prob;
            total += prob;
        }
        if (std::abs(total - 1.0) > kCompletenessTol) {
            throw InvalidPovm("sample_measurements: outcome probabilities for state " +
                              std::to_string(i) + " sum to " + std::to_string(total));
        }
        for (double& prob : born[i]) {
            prob /= total;
        }
    }

    std::vector<double> prior_cdf(n, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += p.prior(i);
        prior_cdf[i] = acc;
    }
    std::vector<std::vector<double>> outcome_cdf(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double c = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            c += born[i][k];
            outcome_cdf[i][k] = c;
        }
    }

    SampleReport report;
    report.trials = trials;
    report.counts.assign(n, std::vector<std::uint64_t>(n + 1, 0));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    auto draw = [&uniform, &rng](const std::vector<double>& cdf) {
        const double u = uniform(rng);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        return static_cast<std::size_t>(
            std::min(it - cdf.begin(),
                     static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    };

    std::uint64_t inconclusive = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::size_t state = draw(prior_cdf);
        const std::size_t outcome = draw(outcome_cdf[state]);
        report.counts[state][outcome] += 1;
        if (outcome == n) {
            ++inconclusive;
        } else if (outcome != state) {
            ++report.misidentification_count;
        }
    }

    report.empirical_q =
        trials == 0 ? 0.0
                    : static_cast<double>(inconclusive) / static_cast<double>(trials);
    report.analytic_q = failure_probability(p, m);
    return report;
}

} // namespace usd

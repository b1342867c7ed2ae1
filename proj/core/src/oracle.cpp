// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace usd {

namespace {

constexpr Eigen::Index kMaxJointDim = 8;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

ComplexMatrix random_factor(Eigen::Index m, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double scale = 0.5 / std::sqrt(static_cast<double>(std::max<Eigen::Index>(m, 1)));
    ComplexMatrix x(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) {
            x(i, j) = scale * Complex(gauss(rng), gauss(rng));
        }
    }
    return x;
}

/// Positive part of a Hermitian matrix and the squared Frobenius norm of it
/// (the clipped-eigenvalue penalty).
struct PositivePart {
    ComplexMatrix matrix;
    double penalty;
    double max_eigenvalue;
};

PositivePart positive_part(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("oracle: eigensolver failed on the slack matrix");
    }
    RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
    PositivePart result;
    result.matrix = solver.eigenvectors() * clipped.asDiagonal() *
                    solver.eigenvectors().adjoint();
    result.penalty = clipped.squaredNorm();
    result.max_eigenvalue = solver.eigenvalues().maxCoeff();
    return result;
}

/// State of one restart: the free factors behind F_1 and F_2.
struct Factors {
    ComplexMatrix x1;
    ComplexMatrix x2;
};

struct Workspace {
    // problem restricted to joint-support coordinates
    ComplexMatrix rho1;
    ComplexMatrix rho2;
    double p1;
    double p2;
    ComplexMatrix w1; // joint_dim x m1, range allowed for F_1
    ComplexMatrix w2;
    ComplexMatrix r1; // W_1^dag rho_1 W_1
    ComplexMatrix r2;
    Eigen::Index dim;

    ComplexMatrix f1(const Factors& f) const {
        return w1 * (f.x1 * f.x1.adjoint()) * w1.adjoint();
    }
    ComplexMatrix f2(const Factors& f) const {
        return w2 * (f.x2 * f.x2.adjoint()) * w2.adjoint();
    }

    double success(const Factors& f) const {
        double value = 0.0;
        if (f.x1.size() > 0) {
            value += p1 * (f.x1.adjoint() * r1 * f.x1).trace().real();
        }
        if (f.x2.size() > 0) {
            value += p2 * (f.x2.adjoint() * r2 * f.x2).trace().real();
        }
        return value;
    }

    double penalized_objective(const Factors& f, double kappa) const {
        const ComplexMatrix slack =
            f1(f) + f2(f) - ComplexMatrix::Identity(dim, dim);
        return success(f) - kappa * positive_part(slack).penalty;
    }
};

struct RestartOutcome {
    Factors factors;
    double success = 0.0;
    bool converged = false;
    std::vector<std::vector<double>> history;
};

RestartOutcome run_restart(const Workspace& ws, const OracleConfig& cfg,
                           std::uint64_t restart_seed) {
    std::mt19937_64 rng(restart_seed);
    Factors f{random_factor(ws.w1.cols(), rng), random_factor(ws.w2.cols(), rng)};

    RestartOutcome outcome;
    const int stages = static_cast<int>(cfg.constraint_penalty_schedule.size());
    const int iters_per_stage = std::max(cfg.max_iterations / std::max(stages, 1), 1);
    bool final_stage_converged = false;

    for (int stage = 0; stage < stages; ++stage) {
        const double kappa = cfg.constraint_penalty_schedule[stage];
        double step = 0.1;
        double objective = ws.penalized_objective(f, kappa);
        outcome.history.emplace_back();
        outcome.history.back().push_back(objective);
        final_stage_converged = false;

        for (int it = 0; it < iters_per_stage; ++it) {
            const ComplexMatrix slack =
                ws.f1(f) + ws.f2(f) - ComplexMatrix::Identity(ws.dim, ws.dim);
            const PositivePart clip = positive_part(slack);

            // Wirtinger gradients of the penalized objective in X_1, X_2.
            ComplexMatrix g1(f.x1.rows(), f.x1.cols());
            ComplexMatrix g2(f.x2.rows(), f.x2.cols());
            if (f.x1.size() > 0) {
                g1 = ws.p1 * ws.r1 * f.x1 -
                     2.0 * kappa * (ws.w1.adjoint() * clip.matrix * ws.w1) * f.x1;
            }
            if (f.x2.size() > 0) {
                g2 = ws.p2 * ws.r2 * f.x2 -
                     2.0 * kappa * (ws.w2.adjoint() * clip.matrix * ws.w2) * f.x2;
            }
            const double grad_norm = std::sqrt(g1.squaredNorm() + g2.squaredNorm());
            const double scale_norm =
                1.0 + std::sqrt(f.x1.squaredNorm() + f.x2.squaredNorm());
            if (grad_norm * step < cfg.step_tolerance * scale_norm) {
                final_stage_converged = true;
                break;
            }

            // Backtracking: accept only improving steps, so the accepted
            // objective sequence is non-decreasing within the stage.
            bool accepted = false;
            for (int halving = 0; halving < 30; ++halving) {
                Factors trial{f.x1 + step * g1, f.x2 + step * g2};
                const double trial_objective = ws.penalized_objective(trial, kappa);
                if (trial_objective > objective) {
                    f = std::move(trial);
                    objective = trial_objective;
                    outcome.history.back().push_back(objective);
                    step *= 1.25;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                final_stage_converged = true;
                break;
            }
        }
    }

    // Exact feasibility: scale both factors so that F_1 + F_2 <= I.
    const ComplexMatrix total = ws.f1(f) + ws.f2(f);
    if (total.size() > 0) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(total);
        const double lambda_max = solver.eigenvalues().maxCoeff();
        if (lambda_max > 1.0) {
            const double shrink = 1.0 / std::sqrt(lambda_max);
            f.x1 *= shrink;
            f.x2 *= shrink;
        }
    }

    outcome.factors = f;
    outcome.success = ws.success(f);
    outcome.converged = final_stage_converged;
    return outcome;
}

} // namespace

OracleConfig tight_oracle_config(std::uint64_t seed) {
    OracleConfig cfg;
    cfg.restarts = 8;
    cfg.max_iterations = 24000;
    cfg.constraint_penalty_schedule = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8};
    cfg.seed = seed;
    return cfg;
}

OracleResult solve_optimal_usd(const DiscriminationProblem& p, const OracleConfig& cfg) {
    if (p.n_states() != 2) {
        throw InvalidProblem("solve_optimal_usd: expected a two-state problem");
    }
    if (cfg.restarts < 1 || cfg.constraint_penalty_schedule.empty()) {
        throw Error("solve_optimal_usd: invalid configuration");
    }

    OracleResult result;
    if (p.is_zero_dimensional()) {
        result.q_opt = 1.0;
        result.povm = Povm::zero_dimensional(2);
        result.converged = true;
        result.best_restart = 0;
        return result;
    }

    const Subspace joint = p.joint_support();
    if (joint.dim() > kMaxJointDim) {
        throw TooLarge("solve_optimal_usd: joint support dimension " +
                       std::to_string(joint.dim()) + " exceeds the cap of " +
                       std::to_string(kMaxJointDim));
    }

    const ComplexMatrix& jb = joint.basis();
    Workspace ws;
    ws.dim = joint.dim();
    ws.rho1 = jb.adjoint() * p.state(0).matrix() * jb;
    ws.rho2 = jb.adjoint() * p.state(1).matrix() * jb;
    ws.p1 = p.prior(0);
    ws.p2 = p.prior(1);

    // Ranges forced by the no-misidentification constraints: F_1 may only
    // act on the part of the joint support orthogonal to S_rho2, and
    // symmetrically for F_2.
    const Subspace joint_local = Subspace::full(ws.dim);
    const Subspace s1 = p.state(0).is_zero()
                            ? Subspace::zero(ws.dim)
                            : support(HermitianOperator(ws.rho1));
    const Subspace s2 = p.state(1).is_zero()
                            ? Subspace::zero(ws.dim)
                            : support(HermitianOperator(ws.rho2));
    ws.w1 = complement_within(s2, joint_local).basis();
    ws.w2 = complement_within(s1, joint_local).basis();
    ws.r1 = ws.w1.adjoint() * ws.rho1 * ws.w1;
    ws.r2 = ws.w2.adjoint() * ws.rho2 * ws.w2;

    RestartOutcome best;
    best.success = -1.0;
    int best_index = -1;
    for (int r = 0; r < cfg.restarts; ++r) {
        RestartOutcome outcome =
            run_restart(ws, cfg, splitmix64(cfg.seed ^ (0xabcd0000ULL + static_cast<std::uint64_t>(r))));
        if (outcome.success > best.success) {
            best = std::move(outcome);
            best_index = r;
        }
    }

    const ComplexMatrix f1_joint = ws.f1(best.factors);
    const ComplexMatrix f2_joint = ws.f2(best.factors);
    const Eigen::Index d = p.ambient_dim();
    ComplexMatrix f1 = jb * f1_joint * jb.adjoint();
    ComplexMatrix f2 = jb * f2_joint * jb.adjoint();
    ComplexMatrix fq = ComplexMatrix::Identity(d, d) - f1 - f2;

    result.q_opt = std::clamp(1.0 - best.success, 0.0, 1.0);
    result.povm = Povm{{HermitianOperator(f1), HermitianOperator(f2)},
                       HermitianOperator(fq)};
    result.best_restart = best_index;
    result.objective_history = std::move(best.history);

    auto min_eig = [](const ComplexMatrix& m) {
        if (m.size() == 0) {
            return 0.0;
        }
        return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(m).eigenvalues().minCoeff();
    };
    result.residuals.min_element_eigenvalue =
        std::min(min_eig(f1_joint), min_eig(f2_joint));
    result.residuals.min_slack_eigenvalue =
        min_eig(ComplexMatrix::Identity(ws.dim, ws.dim) - f1_joint - f2_joint);
    result.residuals.max_misidentification =
        std::max(trace_product(p.state(1).op(), result.povm.conclusive[0]),
                 trace_product(p.state(0).op(), result.povm.conclusive[1]));

    result.converged = best.converged &&
                       result.residuals.min_slack_eigenvalue >= -1e-6 &&
                       result.residuals.min_element_eigenvalue >= -1e-6;
    return result;
}

CertificationReport certify_against_reduction(const DiscriminationProblem& p,
                                              const ReductionTrace& trace,
                                              const OracleConfig& cfg,
                                              double tolerance) {
    const OracleResult original = solve_optimal_usd(p, cfg);
    double q_reduced = 0.0;
    bool reduced_converged = true;
    if (!trace.final.is_zero_dimensional()) {
        const OracleResult reduced = solve_optimal_usd(trace.final, cfg);
        q_reduced = reduced.q_opt;
        reduced_converged = reduced.converged;
    }
    const double composed = compose_failure(trace, q_reduced);
    const double diff = std::abs(original.q_opt - composed);
    return CertificationReport{original.q_opt, q_reduced, composed,
                               diff, diff <= tolerance,
                               original.converged && reduced_converged};
}

} // namespace usd

// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/generate.hpp"

#include <cmath>
#include <string>

#include "usd/subspace.hpp"

namespace usd {

namespace {

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            g(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    return g;
}

} // namespace

ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) {
            q.col(j) *= d / a;
        }
    }
    return q;
}

ComplexMatrix random_full_rank_density(Eigen::Index dim, std::mt19937_64& rng) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    ComplexMatrix w = g * g.adjoint();
    w += 0.05 * w.trace().real() / static_cast<double>(dim) *
         ComplexMatrix::Identity(dim, dim);
    w /= w.trace().real();
    return 0.5 * (w + w.adjoint().eval());
}

ComplexVector random_state_vector(Eigen::Index dim, std::mt19937_64& rng) {
    ComplexVector v = ginibre(dim, 1, rng);
    return v / v.norm();
}

DiscriminationProblem generate_problem(const ProblemShape& shape, double p1,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return generate_problem(shape, p1, rng);
}

DiscriminationProblem generate_problem(const ProblemShape& shape, double p1,
                                       std::mt19937_64& rng) {
    const int joint = shape.r1 + shape.r2 - shape.common;
    if (shape.dim < 1 || shape.r1 < 1 || shape.r2 < 1 || shape.common < 0 ||
        shape.common > std::min(shape.r1, shape.r2) || joint > shape.dim) {
        throw InfeasibleShape("generate_problem: shape " + std::to_string(shape.r1) + "+" +
                              std::to_string(shape.r2) + " with intersection " +
                              std::to_string(shape.common) + " does not fit dimension " +
                              std::to_string(shape.dim));
    }
    if (p1 < 0.0 || p1 > 1.0) {
        throw InvalidProblem("generate_problem: prior out of range");
    }

    const Tolerances tol;
    for (int attempt = 0; attempt < 16; ++attempt) {
        const ComplexMatrix u = random_unitary(shape.dim, rng);
        const ComplexMatrix shared = u.leftCols(shape.common);
        const ComplexMatrix rest = u.rightCols(shape.dim - shape.common);

        // State 1 takes a slice of the orthogonal frame directly; state 2
        // draws its remainder in general position inside the same
        // complement so the two supports intersect exactly on `shared`.
        ComplexMatrix basis1(shape.dim, shape.r1);
        basis1.leftCols(shape.common) = shared;
        basis1.rightCols(shape.r1 - shape.common) = rest.leftCols(shape.r1 - shape.common);

        ComplexMatrix basis2(shape.dim, shape.r2);
        basis2.leftCols(shape.common) = shared;
        if (shape.r2 > shape.common) {
            const ComplexMatrix mix =
                rest * ginibre(rest.cols(), shape.r2 - shape.common, rng);
            const ComplexMatrix frame = orthonormalize(mix, tol.rank_tol);
            if (frame.cols() != shape.r2 - shape.common) {
                continue; // degenerate draw
            }
            basis2.rightCols(shape.r2 - shape.common) = frame;
        }

        const ComplexMatrix rho1 =
            basis1 * random_full_rank_density(shape.r1, rng) * basis1.adjoint();
        const ComplexMatrix rho2 =
            basis2 * random_full_rank_density(shape.r2, rng) * basis2.adjoint();

        DiscriminationProblem problem(
            {DensityMatrix(HermitianOperator(rho1)), DensityMatrix(HermitianOperator(rho2))},
            {p1, 1.0 - p1});

        // The construction hits the requested shape except on a null set of
        // draws; verify and retry on the next substream if a draw landed on
        // a tolerance boundary.
        const Subspace s1 = problem.state_support(0, tol.rank_tol);
        const Subspace s2 = problem.state_support(1, tol.rank_tol);
        if (s1.dim() == shape.r1 && s2.dim() == shape.r2 &&
            intersection(s1, s2, tol.angle_tol).dim() == shape.common &&
            sum(s1, s2, tol.rank_tol).dim() == joint) {
            return problem;
        }
    }
    throw ConvergenceFailure("generate_problem: could not realize the requested shape");
}

Povm random_usd_povm(const DiscriminationProblem& p, std::mt19937_64& rng,
                     const Tolerances& tol) {
    if (p.n_states() != 2) {
        throw InvalidProblem("random_usd_povm: expected a two-state problem");
    }
    if (p.is_zero_dimensional()) {
        return Povm::zero_dimensional(2);
    }
    const Eigen::Index d = p.ambient_dim();
    const Subspace joint = p.joint_support(tol.rank_tol);
    const Subspace s1 = p.state_support(0, tol.rank_tol);
    const Subspace s2 = p.state_support(1, tol.rank_tol);
    const ComplexMatrix w1 = complement_within(s2, joint, tol.angle_tol).basis();
    const ComplexMatrix w2 = complement_within(s1, joint, tol.angle_tol).basis();

    auto random_element = [&rng](const ComplexMatrix& w) {
        if (w.cols() == 0) {
            return ComplexMatrix(ComplexMatrix::Zero(w.rows(), w.rows()));
        }
        const ComplexMatrix x = ginibre(w.cols(), w.cols(), rng);
        return ComplexMatrix(w * (x * x.adjoint()) * w.adjoint());
    };
    ComplexMatrix f1 = random_element(w1);
    ComplexMatrix f2 = random_element(w2);

    const ComplexMatrix total = f1 + f2;
    double lambda_max = 0.0;
    if (total.size() > 0) {
        lambda_max =
            Eigen::SelfAdjointEigenSolver<ComplexMatrix>(total).eigenvalues().maxCoeff();
    }
    if (lambda_max > 0.0) {
        std::uniform_real_distribution<double> weight(0.3, 0.95);
        const double scale = weight(rng) / lambda_max;
        f1 *= scale;
        f2 *= scale;
    }
    const ComplexMatrix fq = ComplexMatrix::Identity(d, d) - f1 - f2;
    return Povm{{HermitianOperator(f1), HermitianOperator(f2)}, HermitianOperator(fq)};
}

} // namespace usd

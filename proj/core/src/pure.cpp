// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/pure.hpp"

#include <cmath>
#include <string>

namespace usd {

namespace {

constexpr double kRegimeTol = 1e-12;

/// Unit vector proportional to (I - |b><b|) |a>; the direction of `a`
/// orthogonal to `b` inside their joint span. Requires s < 1.
ComplexVector perp_direction(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector w = a - b * (b.adjoint() * a)(0);
    return w / w.norm();
}

} // namespace

PureStatePair make_pure_pair(const ComplexVector& psi1, const ComplexVector& psi2,
                             double p1, double p2) {
    if (psi1.size() != psi2.size() || psi1.size() == 0) {
        throw InvalidPair("make_pure_pair: vectors must share a nonzero dimension");
    }
    if (std::abs(psi1.norm() - 1.0) > kTraceTol || std::abs(psi2.norm() - 1.0) > kTraceTol) {
        throw InvalidPair("make_pure_pair: states must be unit vectors");
    }
    if (p1 < -kTraceTol || p2 < -kTraceTol || std::abs(p1 + p2 - 1.0) > kTraceTol) {
        throw InvalidPair("make_pure_pair: priors must be nonnegative and sum to 1");
    }
    const double s = std::min(std::abs((psi1.adjoint() * psi2)(0)), 1.0);
    return PureStatePair{psi1, psi2, p1, p2, s};
}

PureRegime classify_regime(const PureStatePair& pair) {
    const double s = pair.overlap;
    if (s <= kRegimeTol) {
        return PureRegime::Orthogonal;
    }
    if (1.0 - s <= kRegimeTol) {
        return PureRegime::Identical;
    }
    // ratio = sqrt(p1/p2); compare in squared form to avoid dividing by 0
    if (pair.p1 < s * s * pair.p2) {
        return PureRegime::BoundaryState1;
    }
    if (pair.p2 < s * s * pair.p1) {
        return PureRegime::BoundaryState2;
    }
    return PureRegime::Interior;
}

const char* regime_name(PureRegime regime) {
    switch (regime) {
        case PureRegime::Interior: return "interior";
        case PureRegime::BoundaryState1: return "boundary-state-1";
        case PureRegime::BoundaryState2: return "boundary-state-2";
        case PureRegime::Orthogonal: return "orthogonal";
        case PureRegime::Identical: return "identical";
    }
    return "unknown";
}

Povm build_pure_povm(const PureStatePair& pair, PureRegime regime) {
    if (regime != classify_regime(pair)) {
        throw RegimeMismatch(std::string("build_pure_povm: pair is in regime ") +
                             regime_name(classify_regime(pair)) + ", not " +
                             regime_name(regime));
    }
    const Eigen::Index d = pair.psi1.size();
    const ComplexMatrix identity = ComplexMatrix::Identity(d, d);

    if (regime == PureRegime::Identical) {
        return Povm::trivial(2, d);
    }

    const double s = pair.overlap;
    const ComplexVector u1 = perp_direction(pair.psi1, pair.psi2); // F_1 direction
    const ComplexVector u2 = perp_direction(pair.psi2, pair.psi1); // F_2 direction

    double a = 0.0;
    double b = 0.0;
    switch (regime) {
        case PureRegime::Orthogonal:
            a = 1.0;
            b = 1.0;
            break;
        case PureRegime::BoundaryState1:
            a = 0.0;
            b = 1.0;
            break;
        case PureRegime::BoundaryState2:
            a = 1.0;
            b = 0.0;
            break;
        case PureRegime::Interior:
            a = (1.0 - std::sqrt(pair.p2 / pair.p1) * s) / (1.0 - s * s);
            b = (1.0 - std::sqrt(pair.p1 / pair.p2) * s) / (1.0 - s * s);
            break;
        case PureRegime::Identical:
            break;
    }

    const ComplexMatrix f1 = a * (u1 * u1.adjoint());
    const ComplexMatrix f2 = b * (u2 * u2.adjoint());
    return Povm{{HermitianOperator(f1), HermitianOperator(f2)},
                HermitianOperator(identity - f1 - f2)};
}

PureSolveReport solve_two_pure(const PureStatePair& pair) {
    const PureRegime regime = classify_regime(pair);
    const double s = pair.overlap;
    double q = 0.0;
    switch (regime) {
        case PureRegime::Orthogonal:
            q = 0.0;
            break;
        case PureRegime::Identical:
            q = 1.0;
            break;
        case PureRegime::BoundaryState1:
            q = pair.p1 + pair.p2 * s * s;
            break;
        case PureRegime::BoundaryState2:
            q = pair.p2 + pair.p1 * s * s;
            break;
        case PureRegime::Interior:
            q = 2.0 * std::sqrt(pair.p1 * pair.p2) * s;
            break;
    }
    return PureSolveReport{q, build_pure_povm(pair, regime), regime};
}

} // namespace usd

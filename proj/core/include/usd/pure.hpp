// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "usd/problem.hpp"

namespace usd {

/// Two pure states with priors; the fully reduced endpoint of the
/// two-state reduction chain. Global phases are irrelevant: only the
/// modulus of the inner product enters the optimum.
struct PureStatePair {
    ComplexVector psi1;
    ComplexVector psi2;
    double p1;
    double p2;
    double overlap; // s = |<psi1|psi2>|
};

/// Validates norms and priors and computes the overlap. Throws InvalidPair.
PureStatePair make_pure_pair(const ComplexVector& psi1, const ComplexVector& psi2,
                             double p1, double p2);

/// Which branch of the optimum applies.
///
/// Interior: both states are identified with positive rate,
///   q = 2 sqrt(p1 p2) s, valid while sqrt(p1/p2) lies in [s, 1/s].
/// BoundaryState1: p1 too small, only state 2 is ever identified,
///   q = p1 + p2 s^2 (F_2 projects onto the complement of psi1).
/// BoundaryState2: the mirror case, q = p2 + p1 s^2.
/// Orthogonal / Identical: the exact endpoints s = 0 and s = 1.
enum class PureRegime { Interior, BoundaryState1, BoundaryState2, Orthogonal, Identical };

PureRegime classify_regime(const PureStatePair& pair);

const char* regime_name(PureRegime regime);

struct PureSolveReport {
    double q_opt;
    Povm povm;
    PureRegime regime;
};

/// Explicit POVM for the given regime: F_1 weighted on the direction
/// orthogonal to psi2 within the joint span, F_2 on the direction
/// orthogonal to psi1, F_? completing to the identity. Throws
/// RegimeMismatch when the regime does not match the pair.
Povm build_pure_povm(const PureStatePair& pair, PureRegime regime);

/// Closed-form optimum with the POVM achieving it.
PureSolveReport solve_two_pure(const PureStatePair& pair);

} // namespace usd

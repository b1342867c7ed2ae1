// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "usd/problem.hpp"
#include "usd/reduction.hpp"

namespace usd {

inline constexpr const char* kProblemFormatVersion = "usd-problem/1";
inline constexpr const char* kPovmFormatVersion = "usd-povm/1";

/// On-disk form of a discrimination problem: complex entries as [re, im]
/// pairs in row-major nested arrays, plus free-form string metadata.
struct ProblemFile {
    std::string version = kProblemFormatVersion;
    DiscriminationProblem problem;
    std::map<std::string, std::string> metadata;
};

nlohmann::json problem_to_json(const ProblemFile& file);

/// Structural parse only (shapes, finiteness, Hermitian symmetry); semantic
/// validity is the business of validate_problem so that invalid problems
/// can still be loaded and reported on. Throws ParseError.
ProblemFile problem_from_json(const nlohmann::json& j);

ProblemFile load_problem_file(const std::string& path);
void save_problem_file(const std::string& path, const ProblemFile& file);

nlohmann::json povm_to_json(const Povm& m);
Povm povm_from_json(const nlohmann::json& j);
Povm load_povm_file(const std::string& path);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Serialized reduction trace: per-step kind, removed/retained bases,
/// normalizations and the affine composition coefficients, plus the final
/// problem.
nlohmann::json trace_to_json(const ReductionTrace& trace);

/// The "r1+r2 >= d" style label of a two-state problem ("2+2>3", "1+1=2").
std::string shape_label(const DiscriminationProblem& p,
                        const Tolerances& tol = Tolerances{});

} // namespace usd

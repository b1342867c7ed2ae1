// Copyright 2026 The usdreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "usd/io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace usd {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("expected a [re, im] pair");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

} // namespace

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) {
        throw ParseError("matrix: expected an array of rows");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    ComplexMatrix m;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array()) {
            throw ParseError("matrix: row " + std::to_string(i) + " is not an array");
        }
        if (cols < 0) {
            cols = static_cast<Eigen::Index>(row.size());
            m.resize(rows, cols);
        } else if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw ParseError("matrix: ragged rows");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
        }
    }
    if (rows == 0) {
        m.resize(0, 0);
    }
    if (!all_finite(m)) {
        throw ParseError("matrix: non-finite entries");
    }
    return m;
}

json problem_to_json(const ProblemFile& file) {
    json j;
    j["version"] = file.version;
    j["ambient_dim"] = file.problem.ambient_dim();
    json states = json::array();
    for (std::size_t i = 0; i < file.problem.n_states(); ++i) {
        json state;
        state["prior"] = file.problem.prior(i);
        state["matrix"] = matrix_to_json(file.problem.state(i).matrix());
        states.push_back(std::move(state));
    }
    j["states"] = std::move(states);
    j["metadata"] = file.metadata;
    return j;
}

ProblemFile problem_from_json(const json& j) {
    try {
        if (!j.is_object()) {
            throw ParseError("problem file: expected a JSON object");
        }
        const std::string version = j.at("version").get<std::string>();
        if (version != kProblemFormatVersion) {
            throw ParseError("problem file: unsupported version '" + version + "'");
        }
        const Eigen::Index ambient = j.at("ambient_dim").get<Eigen::Index>();
        if (ambient < 1) {
            throw ParseError("problem file: ambient_dim must be positive");
        }
        const json& states_json = j.at("states");
        if (!states_json.is_array() || states_json.size() < 2) {
            throw ParseError("problem file: need at least 2 states");
        }
        std::vector<DensityMatrix> states;
        std::vector<double> priors;
        for (const json& state : states_json) {
            priors.push_back(state.at("prior").get<double>());
            const ComplexMatrix m = matrix_from_json(state.at("matrix"));
            if (m.rows() != ambient || m.cols() != ambient) {
                throw ParseError("problem file: state matrix shape does not match "
                                 "ambient_dim");
            }
            // Hermitian symmetry is structural; positivity and unit trace
            // stay with validate_problem so invalid files load and report.
            states.push_back(DensityMatrix::unchecked(HermitianOperator(m)));
        }
        ProblemFile file;
        file.problem = DiscriminationProblem(std::move(states), std::move(priors));
        if (j.contains("metadata")) {
            file.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
        }
        return file;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("problem file: ") + e.what());
    } catch (const json::exception& e) {
        throw ParseError(std::string("problem file: ") + e.what());
    }
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    return problem_from_json(j);
}

void save_problem_file(const std::string& path, const ProblemFile& file) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << problem_to_json(file).dump(2) << "\n";
}

json povm_to_json(const Povm& m) {
    json j;
    j["version"] = kPovmFormatVersion;
    j["ambient_dim"] = m.dim();
    json conclusive = json::array();
    for (const HermitianOperator& f : m.conclusive) {
        conclusive.push_back(matrix_to_json(f.matrix()));
    }
    j["conclusive"] = std::move(conclusive);
    j["inconclusive"] = matrix_to_json(m.inconclusive.matrix());
    return j;
}

Povm povm_from_json(const json& j) {
    try {
        const std::string version = j.at("version").get<std::string>();
        if (version != kPovmFormatVersion) {
            throw ParseError("povm file: unsupported version '" + version + "'");
        }
        const Eigen::Index dim = j.at("ambient_dim").get<Eigen::Index>();
        std::vector<HermitianOperator> conclusive;
        for (const json& f : j.at("conclusive")) {
            const ComplexMatrix m = matrix_from_json(f);
            if (m.rows() != dim || m.cols() != dim) {
                throw ParseError("povm file: element shape does not match ambient_dim");
            }
            conclusive.push_back(HermitianOperator(m));
        }
        const ComplexMatrix q = matrix_from_json(j.at("inconclusive"));
        if (q.rows() != dim || q.cols() != dim) {
            throw ParseError("povm file: inconclusive element shape mismatch");
        }
        return Povm{std::move(conclusive), HermitianOperator(q)};
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("povm file: ") + e.what());
    } catch (const json::exception& e) {
        throw ParseError(std::string("povm file: ") + e.what());
    }
}

Povm load_povm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    return povm_from_json(j);
}

namespace {

json subspace_to_json(const Subspace& s) {
    json j;
    j["ambient_dim"] = s.ambient_dim();
    j["dim"] = s.dim();
    j["basis"] = matrix_to_json(s.basis());
    return j;
}

} // namespace

json trace_to_json(const ReductionTrace& trace) {
    json j;
    j["version"] = "usd-trace/1";
    j["tolerances"] = {{"rank_tol", trace.tol.rank_tol},
                       {"angle_tol", trace.tol.angle_tol}};
    j["original"] = {{"ambient_dim", trace.original.ambient_dim()},
                     {"shape", shape_label(trace.original, trace.tol)}};
    j["joint_support"] = subspace_to_json(trace.joint);

    json steps = json::array();
    for (const ReductionStep& step : trace.steps) {
        json s;
        s["kind"] = step.kind == ReductionStep::Kind::CommonSubspace
                        ? "common-subspace"
                        : "orthogonal-split";
        json removed = json::array();
        for (const Subspace& sub : step.removed) {
            removed.push_back(subspace_to_json(sub));
        }
        s["removed"] = std::move(removed);
        s["retained"] = subspace_to_json(step.retained);
        s["n1"] = step.n1;
        s["n2"] = step.n2;
        s["q_offset"] = step.q_offset;
        s["q_scale"] = step.q_scale;
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);

    json final_json;
    final_json["ambient_dim"] = trace.final.ambient_dim();
    final_json["zero_dimensional"] = trace.final.is_zero_dimensional();
    if (!trace.final.is_zero_dimensional()) {
        final_json["shape"] = shape_label(trace.final, trace.tol);
        json states = json::array();
        for (std::size_t i = 0; i < trace.final.n_states(); ++i) {
            states.push_back({{"prior", trace.final.prior(i)},
                              {"matrix", matrix_to_json(trace.final.state(i).matrix())}});
        }
        final_json["states"] = std::move(states);
    }
    j["final"] = std::move(final_json);
    return j;
}

std::string shape_label(const DiscriminationProblem& p, const Tolerances& tol) {
    if (p.is_zero_dimensional()) {
        return "0+0=0";
    }
    if (p.n_states() != 2) {
        return "n-state";
    }
    const Eigen::Index r1 = p.state_support(0, tol.rank_tol).dim();
    const Eigen::Index r2 = p.state_support(1, tol.rank_tol).dim();
    const Eigen::Index d = p.joint_support(tol.rank_tol).dim();
    const char* relation = (r1 + r2 > d) ? ">" : "=";
    return std::to_string(r1) + "+" + std::to_string(r2) + relation + std::to_string(d);
}

} // namespace usd

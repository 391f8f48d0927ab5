// Copyright 2026 The covcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "covcert/json_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace covcert {

namespace {

Complex entry_from_json(const Json &e) {
    if (e.is_number()) {
        return {e.get<double>(), 0.0};
    }
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        return {e[0].get<double>(), e[1].get<double>()};
    }
    throw FormatError("matrix entry must be a number or [re, im], got " + e.dump());
}

Json entry_to_json(Complex z) {
    if (z.imag() == 0.0) {
        return number_json(z.real());
    }
    return Json::array({number_json(z.real()), number_json(z.imag())});
}

DimShape shape_from_json(const Json &j, const char *key, std::size_t total) {
    if (!j.contains(key)) {
        return DimShape::single(total);
    }
    const Json &dims = j.at(key);
    if (!dims.is_array() || dims.empty()) {
        throw FormatError(std::string(key) + " must be a non-empty array");
    }
    std::vector<std::size_t> f;
    for (const auto &d : dims) {
        if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) {
            throw FormatError(std::string(key) + " entries must be positive integers");
        }
        f.push_back(d.get<std::size_t>());
    }
    DimShape shape(f);
    if (shape.total() != total) {
        throw FormatError(std::string(key) + " does not multiply to " + std::to_string(total));
    }
    return shape;
}

std::vector<ComplexMatrix> matrices_from_json(const Json &j, const char *what) {
    if (!j.is_array() || j.empty()) {
        throw FormatError(std::string(what) + " must be a non-empty array of matrices");
    }
    std::vector<ComplexMatrix> out;
    for (const auto &m : j) {
        out.push_back(matrix_from_json(m));
    }
    return out;
}

Json dims_json(const DimShape &s) {
    Json a = Json::array();
    for (auto f : s.factors()) {
        a.push_back(f);
    }
    return a;
}

}  // namespace

Json number_json(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    double r = std::strtod(buf, nullptr);
    if (r == 0.0) {
        r = 0.0;
    }
    return r;
}

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw FormatError("matrix must be a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    if (cols == 0) {
        throw FormatError("matrix rows must be non-empty");
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw FormatError("matrix rows must all have length " + std::to_string(cols));
        }
        for (std::size_t c = 0; c < cols; c++) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry_from_json(j[r][c]);
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(entry_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexVector vector_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) {
        throw FormatError("vector must be a non-empty array");
    }
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); i++) {
        v(static_cast<Eigen::Index>(i)) = entry_from_json(j[i]);
    }
    return v;
}

QuantumChannel channel_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("kraus")) {
        throw FormatError("channel must be an object with a \"kraus\" array");
    }
    std::vector<ComplexMatrix> kraus = matrices_from_json(j.at("kraus"), "kraus");
    const auto out = static_cast<std::size_t>(kraus[0].rows());
    const auto in = static_cast<std::size_t>(kraus[0].cols());
    for (const auto &k : kraus) {
        if (static_cast<std::size_t>(k.rows()) != out || static_cast<std::size_t>(k.cols()) != in) {
            throw FormatError("Kraus operators must share one shape");
        }
    }
    DimShape in_shape = shape_from_json(j, "in_shape", in);
    DimShape out_shape = shape_from_json(j, "out_shape", out);
    try {
        return QuantumChannel(std::move(kraus), in_shape, out_shape);
    } catch (const std::invalid_argument &e) {
        throw FormatError(std::string("invalid channel: ") + e.what());
    }
}

Json channel_to_json(const QuantumChannel &ch) {
    Json kraus = Json::array();
    for (const auto &k : ch.kraus()) {
        kraus.push_back(matrix_to_json(k));
    }
    return Json{{"kraus", kraus}, {"in_shape", dims_json(ch.in_shape())}, {"out_shape", dims_json(ch.out_shape())}};
}

GroupRep rep_from_json(const Json &j) {
    if (!j.is_object()) {
        throw FormatError("representation must be an object");
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        for (const auto &l : j.at("labels")) {
            labels.push_back(l.get<std::string>());
        }
    }
    try {
        if (j.contains("unitaries")) {
            return GroupRep::symmetric(labels, matrices_from_json(j.at("unitaries"), "unitaries"));
        }
        if (j.contains("unitaries_in") && j.contains("unitaries_out")) {
            return GroupRep(labels, matrices_from_json(j.at("unitaries_in"), "unitaries_in"),
                            matrices_from_json(j.at("unitaries_out"), "unitaries_out"));
        }
    } catch (const std::invalid_argument &e) {
        throw FormatError(std::string("invalid representation: ") + e.what());
    }
    throw FormatError("representation needs \"unitaries\" or \"unitaries_in\" and \"unitaries_out\"");
}

ComplexMatrix state_from_json(const Json &j) {
    if (j.is_object() && j.contains("ket")) {
        ComplexVector v = vector_from_json(j.at("ket"));
        if (v.norm() == 0.0) {
            throw FormatError("ket is zero");
        }
        return projector(v / v.norm());
    }
    return matrix_from_json(j);
}

ConversionQuery query_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("inputs") || !j.contains("targets") || !j.contains("rep")) {
        throw FormatError("query needs \"inputs\", \"targets\" and \"rep\"");
    }
    std::vector<ComplexMatrix> inputs;
    std::vector<ComplexMatrix> targets;
    for (const auto &s : j.at("inputs")) {
        inputs.push_back(state_from_json(s));
    }
    for (const auto &s : j.at("targets")) {
        targets.push_back(state_from_json(s));
    }
    double epsilon = 0.0;
    if (j.contains("epsilon")) {
        if (!j.at("epsilon").is_number()) {
            throw FormatError("epsilon must be a number");
        }
        epsilon = j.at("epsilon").get<double>();
    }
    ConversionQuery q{std::move(inputs), std::move(targets), rep_from_json(j.at("rep")), epsilon};
    try {
        q.validate();
    } catch (const std::invalid_argument &e) {
        throw FormatError(e.what());
    }
    return q;
}

Json stats_to_json(const SolverStats &s) {
    return Json{{"status", to_string(s.status)},
                {"gap", number_json(s.gap)},
                {"kkt_residual", number_json(s.kkt_residual)},
                {"primal_infeasibility", number_json(s.primal_infeasibility)},
                {"dual_infeasibility", number_json(s.dual_infeasibility)},
                {"iterations", s.iterations},
                {"dropped_constraints", s.dropped_constraints}};
}

Json report_to_json(const CertReport &r) {
    Json j;
    j["hmin_bits"] = number_json(r.hmin_bits);
    j["phi"] = number_json(r.phi);
    j["d_L"] = r.d_L;
    j["c"] = number_json(r.c);
    j["epsilon_min"] = number_json(r.epsilon_min);
    j["epsilon"] = r.epsilon_query ? number_json(*r.epsilon_query) : Json(nullptr);
    j["threshold_bits"] = r.threshold_bits ? number_json(*r.threshold_bits) : Json(nullptr);
    j["verdict"] = r.verdict ? Json(to_string(*r.verdict)) : Json(nullptr);
    j["covariance_check"] = to_string(r.covariance_check);
    j["covariance_deviation"] = number_json(r.covariance_deviation);
    j["path"] = r.path;
    Json erased = Json::array();
    for (auto e : r.erased) {
        erased.push_back(e + 1);
    }
    j["erased"] = erased;
    j["solver"] = r.solver ? stats_to_json(*r.solver) : Json(nullptr);
    return j;
}

Json verdict_to_json(const ConversionVerdict &v) {
    Json p = Json::array();
    for (double x : v.witness_p) {
        p.push_back(number_json(x));
    }
    return Json{{"feasible", v.feasible},
                {"optimal_value", number_json(v.optimal_value)},
                {"hmin_equiv", number_json(v.hmin_equiv)},
                {"witness_p", p},
                {"witness_X", matrix_to_json(v.witness_X)},
                {"solver", stats_to_json(v.stats)}};
}

Json hmin_to_json(const MinEntropyResult &r) {
    return Json{{"hmin_bits", number_json(r.hmin)},
                {"phi", number_json(r.phi)},
                {"solver_gap", number_json(r.solver_gap)},
                {"solver", stats_to_json(r.stats)}};
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw FormatError(path + ": " + e.what());
    }
}

}  // namespace covcert

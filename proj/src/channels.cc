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


#include "covcert/channels.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/SparseCore>

namespace covcert {

namespace {

std::string dims_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

// Splits out-space indices of `shape` into (kept, traced) flat values.
struct FactorSplit {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> traced;
    DimShape kept_shape;
    std::size_t traced_dim = 1;
};

FactorSplit split_factors(const DimShape &shape, std::span<const std::size_t> traced) {
    std::vector<bool> is_traced(shape.size(), false);
    for (auto t : traced) {
        if (t >= shape.size()) {
            throw std::invalid_argument("factor index " + std::to_string(t) + " out of range");
        }
        if (is_traced[t]) {
            throw std::invalid_argument("factor index listed twice");
        }
        is_traced[t] = true;
    }
    FactorSplit s;
    std::vector<std::size_t> kept_factors;
    for (std::size_t k = 0; k < shape.size(); k++) {
        if (is_traced[k]) {
            s.traced_dim *= shape[k];
        } else {
            kept_factors.push_back(shape[k]);
        }
    }
    s.kept_shape = DimShape(kept_factors);
    const std::size_t total = shape.total();
    s.kept.resize(total);
    s.traced.resize(total);
    for (std::size_t idx = 0; idx < total; idx++) {
        auto digits = unflatten_index(idx, shape);
        std::size_t kept = 0;
        std::size_t tr = 0;
        for (std::size_t k = 0; k < shape.size(); k++) {
            if (is_traced[k]) {
                tr = tr * shape[k] + digits[k];
            } else {
                kept = kept * shape[k] + digits[k];
            }
        }
        s.kept[idx] = kept;
        s.traced[idx] = tr;
    }
    return s;
}

void check_unitary(const ComplexMatrix &u, const char *what) {
    if (u.rows() != u.cols()) {
        throw std::invalid_argument(std::string(what) + ": unitary is not square");
    }
    double dev = (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
    if (dev > 1e-9 * std::max<double>(1.0, std::sqrt(static_cast<double>(u.rows())))) {
        throw std::invalid_argument(std::string(what) + ": matrix is not unitary (deviation " + std::to_string(dev) +
                                    ")");
    }
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus, DimShape in_shape, DimShape out_shape,
                               bool instrument)
    : kraus_(std::move(kraus)),
      in_shape_(std::move(in_shape)),
      out_shape_(std::move(out_shape)),
      instrument_(instrument) {
    if (kraus_.empty()) {
        throw std::invalid_argument("QuantumChannel: empty Kraus list");
    }
    const auto din = static_cast<Eigen::Index>(in_dim());
    const auto dout = static_cast<Eigen::Index>(out_dim());
    for (const auto &k : kraus_) {
        if (k.rows() != dout || k.cols() != din) {
            throw std::invalid_argument("QuantumChannel: Kraus operator is " + dims_str(k.rows(), k.cols()) +
                                        ", expected " + dims_str(dout, din));
        }
        if (!k.allFinite()) {
            throw std::invalid_argument("QuantumChannel: non-finite Kraus entry");
        }
    }
    if (instrument_) {
        // The largest eigenvalue of sum K^dagger K equals that of the Gram
        // matrix of the stacked Kraus rows, which is smaller for sparse families.
        const auto rows = static_cast<Eigen::Index>(kraus_.size()) * dout;
        double top = 0.0;
        if (rows < din) {
            ComplexMatrix stacked(rows, din);
            for (std::size_t i = 0; i < kraus_.size(); i++) {
                stacked.middleRows(static_cast<Eigen::Index>(i) * dout, dout) = kraus_[i];
            }
            ComplexMatrix gram = stacked * stacked.adjoint();
            top = -min_eigenvalue(-(gram + gram.adjoint()) / 2.0);
        } else {
            ComplexMatrix c = completeness();
            top = -min_eigenvalue(-(c + c.adjoint()) / 2.0);
        }
        if (top > 1.0 + kCompletenessTol) {
            throw std::invalid_argument("QuantumChannel: instrument element is trace-increasing");
        }
        return;
    }
    ComplexMatrix defect = ComplexMatrix::Identity(din, din) - completeness();
    if (defect.norm() > kCompletenessTol * std::max(1.0, std::sqrt(static_cast<double>(din)))) {
        throw std::invalid_argument("QuantumChannel: Kraus operators are not complete (deviation " +
                                    std::to_string(defect.norm()) + ")");
    }
}

namespace {

// Indices of the non-zero columns of k.
std::vector<Eigen::Index> column_support(const ComplexMatrix &k) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index c = 0; c < k.cols(); c++) {
        if (k.col(c).cwiseAbs2().sum() != 0.0) {
            cols.push_back(c);
        }
    }
    return cols;
}

ComplexMatrix gather_columns(const ComplexMatrix &k, const std::vector<Eigen::Index> &cols) {
    ComplexMatrix out(k.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); i++) {
        out.col(static_cast<Eigen::Index>(i)) = k.col(cols[i]);
    }
    return out;
}

// Entry-sparse Kraus operators (identity, erasure) go through sparse products.
bool mostly_zero(const ComplexMatrix &k) {
    const Eigen::Index nnz = (k.array() != Complex(0.0, 0.0)).count();
    return nnz * 20 <= k.size();
}

// Column-sparse Kraus operators (erasure and decoder families) are handled on
// their support only.
bool use_support(const std::vector<Eigen::Index> &cols, Eigen::Index din) {
    return static_cast<Eigen::Index>(cols.size()) * 2 <= din;
}

}  // namespace

ComplexMatrix QuantumChannel::completeness() const {
    const auto din = static_cast<Eigen::Index>(in_dim());
    ComplexMatrix sum = ComplexMatrix::Zero(din, din);
    for (const auto &k : kraus_) {
        if (mostly_zero(k)) {
            Eigen::SparseMatrix<Complex> ks = k.sparseView();
            Eigen::SparseMatrix<Complex> local = ks.adjoint() * ks;
            for (Eigen::Index c = 0; c < local.outerSize(); c++) {
                for (Eigen::SparseMatrix<Complex>::InnerIterator it(local, c); it; ++it) {
                    sum(it.row(), it.col()) += it.value();
                }
            }
            continue;
        }
        std::vector<Eigen::Index> cols = column_support(k);
        if (!use_support(cols, din)) {
            sum.noalias() += k.adjoint() * k;
            continue;
        }
        ComplexMatrix ks = gather_columns(k, cols);
        ComplexMatrix local = ks.adjoint() * ks;
        for (std::size_t a = 0; a < cols.size(); a++) {
            for (std::size_t b = 0; b < cols.size(); b++) {
                sum(cols[a], cols[b]) += local(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            }
        }
    }
    return sum;
}

ComplexMatrix apply(const QuantumChannel &ch, const ComplexMatrix &rho) {
    const auto din = static_cast<Eigen::Index>(ch.in_dim());
    if (rho.rows() != din || rho.cols() != din) {
        throw std::invalid_argument("apply: input is " + dims_str(rho.rows(), rho.cols()) + ", channel expects " +
                                    dims_str(din, din));
    }
    const auto dout = static_cast<Eigen::Index>(ch.out_dim());
    ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
    for (const auto &k : ch.kraus()) {
        std::vector<Eigen::Index> cols = column_support(k);
        if (!use_support(cols, din)) {
            out.noalias() += k * rho * k.adjoint();
            continue;
        }
        const auto m = static_cast<Eigen::Index>(cols.size());
        ComplexMatrix ks = gather_columns(k, cols);
        ComplexMatrix sub(m, m);
        for (Eigen::Index a = 0; a < m; a++) {
            for (Eigen::Index b = 0; b < m; b++) {
                sub(a, b) = rho(cols[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
            }
        }
        out.noalias() += ks * sub * ks.adjoint();
    }
    return out;
}

ComplexMatrix apply_pure(const QuantumChannel &ch, const ComplexVector &psi) {
    if (psi.size() != static_cast<Eigen::Index>(ch.in_dim())) {
        throw std::invalid_argument("apply_pure: dimension mismatch");
    }
    const auto dout = static_cast<Eigen::Index>(ch.out_dim());
    ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
    for (const auto &k : ch.kraus()) {
        ComplexVector v = k * psi;
        out.noalias() += v * v.adjoint();
    }
    return out;
}

QuantumChannel compose(const QuantumChannel &second, const QuantumChannel &first) {
    if (first.out_dim() != second.in_dim()) {
        throw std::invalid_argument("compose: first channel outputs dimension " + std::to_string(first.out_dim()) +
                                    " but second expects " + std::to_string(second.in_dim()));
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(first.kraus().size() * second.kraus().size());
    for (const auto &k2 : second.kraus()) {
        for (const auto &k1 : first.kraus()) {
            kraus.push_back(k2 * k1);
        }
    }
    return QuantumChannel(std::move(kraus), first.in_shape(), second.out_shape(),
                          first.is_instrument() || second.is_instrument());
}

ChoiState choi_state(const QuantumChannel &ch) {
    if (ch.is_instrument()) {
        throw std::invalid_argument("choi_state: channel is not trace-preserving");
    }
    const std::size_t din = ch.in_dim();
    const std::size_t dout = ch.out_dim();
    ComplexMatrix vecs(din * dout, ch.kraus().size());
    for (std::size_t k = 0; k < ch.kraus().size(); k++) {
        const auto &op = ch.kraus()[k];
        for (std::size_t i = 0; i < din; i++) {
            for (std::size_t a = 0; a < dout; a++) {
                vecs(i * dout + a, k) = op(a, i);
            }
        }
    }
    ComplexMatrix j = vecs * vecs.adjoint() / static_cast<double>(din);
    return {(j + j.adjoint()) / 2.0, din, dout};
}

QuantumChannel channel_from_choi(const ChoiState &choi, const DimShape &in_shape, const DimShape &out_shape) {
    if (choi.in_dim != in_shape.total() || choi.out_dim != out_shape.total() ||
        static_cast<std::size_t>(choi.matrix.rows()) != choi.in_dim * choi.out_dim) {
        throw std::invalid_argument("channel_from_choi: dimension mismatch");
    }
    ComplexMatrix marginal = partial_trace(choi.matrix, DimShape{choi.in_dim, choi.out_dim}, {1});
    ComplexMatrix expect = ComplexMatrix::Identity(choi.in_dim, choi.in_dim) / static_cast<double>(choi.in_dim);
    if ((marginal - expect).norm() > 1e-8) {
        throw std::invalid_argument("channel_from_choi: input marginal is not maximally mixed");
    }
    auto eig = eig_hermitian(choi.matrix);
    const double scale = std::max(eig.values.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index e = 0; e < eig.values.size(); e++) {
        if (eig.values(e) < -kPsdTol * std::max(1.0, scale)) {
            throw std::invalid_argument("channel_from_choi: Choi matrix is not PSD");
        }
        if (eig.values(e) <= 1e-13 * scale) {
            continue;
        }
        double w = std::sqrt(eig.values(e) * static_cast<double>(choi.in_dim));
        ComplexMatrix k(choi.out_dim, choi.in_dim);
        for (std::size_t i = 0; i < choi.in_dim; i++) {
            for (std::size_t a = 0; a < choi.out_dim; a++) {
                k(a, i) = w * eig.vectors(i * choi.out_dim + a, e);
            }
        }
        kraus.push_back(std::move(k));
    }
    return QuantumChannel(std::move(kraus), in_shape, out_shape);
}

QuantumChannel identity_channel(const DimShape &shape) {
    const auto d = static_cast<Eigen::Index>(shape.total());
    return QuantumChannel({ComplexMatrix::Identity(d, d)}, shape, shape);
}

QuantumChannel unitary_channel(const ComplexMatrix &u, const DimShape &shape) {
    check_unitary(u, "unitary_channel");
    return QuantumChannel({u}, shape, shape);
}

QuantumChannel erasure_channel(const DimShape &shape, std::span<const std::size_t> erased) {
    if (erased.empty()) {
        throw std::invalid_argument("erasure_channel: nothing to erase");
    }
    if (erased.size() >= shape.size()) {
        throw std::invalid_argument("erasure_channel: cannot erase every factor");
    }
    return trace_out_after(identity_channel(shape), erased);
}

QuantumChannel depolarizing_channel(std::size_t d, double p) {
    return depolarizing_channel(DimShape::single(d), p);
}

QuantumChannel depolarizing_channel(const DimShape &shape, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing_channel: p must lie in [0, 1]");
    }
    const std::size_t d = shape.total();
    std::vector<ComplexMatrix> kraus;
    if (p < 1.0) {
        kraus.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(d, d));
    }
    if (p > 0.0) {
        const double w = std::sqrt(p / static_cast<double>(d));
        for (std::size_t a = 0; a < d; a++) {
            for (std::size_t b = 0; b < d; b++) {
                ComplexMatrix k = ComplexMatrix::Zero(d, d);
                k(a, b) = w;
                kraus.push_back(std::move(k));
            }
        }
    }
    return QuantumChannel(std::move(kraus), shape, shape);
}

QuantumChannel known_erasure_channel(const DimShape &shape, const std::vector<bool> &s) {
    const std::size_t n = shape.size();
    if (s.size() != n) {
        throw std::invalid_argument("known_erasure_channel: pattern length " + std::to_string(s.size()) +
                                    " does not match " + std::to_string(n) + " factors");
    }
    if (n >= 63) {
        throw std::invalid_argument("known_erasure_channel: too many factors for the classical register");
    }
    if (std::all_of(s.begin(), s.end(), [](bool b) { return b; })) {
        throw std::invalid_argument("known_erasure_channel: every factor erased");
    }
    std::vector<std::size_t> erased;
    std::size_t x_index = 0;
    for (std::size_t k = 0; k < n; k++) {
        x_index = x_index * 2 + (s[k] ? 1 : 0);
        if (s[k]) {
            erased.push_back(k);
        }
    }
    const std::size_t x_dim = std::size_t{1} << n;
    const std::size_t din = shape.total();
    std::vector<std::size_t> out_factors{x_dim};
    out_factors.insert(out_factors.end(), shape.factors().begin(), shape.factors().end());
    DimShape out_shape(out_factors);

    std::size_t erased_dim = 1;
    for (auto e : erased) {
        erased_dim *= shape[e];
    }
    std::vector<ComplexMatrix> kraus(erased_dim, ComplexMatrix::Zero(x_dim * din, din));
    for (std::size_t idx = 0; idx < din; idx++) {
        auto digits = unflatten_index(idx, shape);
        std::size_t m = 0;
        for (auto e : erased) {
            m = m * shape[e] + digits[e];
            digits[e] = 0;
        }
        kraus[m](x_index * din + flatten_index(digits, shape), idx) = 1.0;
    }
    return QuantumChannel(std::move(kraus), shape, out_shape);
}

QuantumChannel trace_out_after(const QuantumChannel &ch, std::span<const std::size_t> erased) {
    FactorSplit split = split_factors(ch.out_shape(), erased);
    const std::size_t kept_dim = split.kept_shape.total();
    std::vector<ComplexMatrix> kraus;
    for (const auto &k : ch.kraus()) {
        std::vector<ComplexMatrix> pieces(split.traced_dim, ComplexMatrix::Zero(kept_dim, k.cols()));
        for (Eigen::Index r = 0; r < k.rows(); r++) {
            pieces[split.traced[r]].row(split.kept[r]) = k.row(r);
        }
        for (auto &p : pieces) {
            if (p.norm() > 0.0) {
                kraus.push_back(std::move(p));
            }
        }
    }
    if (kraus.empty()) {
        kraus.push_back(ComplexMatrix::Zero(kept_dim, ch.in_dim()));
    }
    return QuantumChannel(std::move(kraus), ch.in_shape(), split.kept_shape, ch.is_instrument());
}

CompressedChannel compress_output(const QuantumChannel &ch) {
    const auto din = static_cast<Eigen::Index>(ch.in_dim());
    ComplexMatrix stacked(ch.out_dim(), din * static_cast<Eigen::Index>(ch.kraus().size()));
    for (std::size_t k = 0; k < ch.kraus().size(); k++) {
        stacked.middleCols(static_cast<Eigen::Index>(k) * din, din) = ch.kraus()[k];
    }
    ComplexMatrix q = orthonormal_range(stacked);
    if (q.cols() == 0) {
        throw std::invalid_argument("compress_output: channel is zero");
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(ch.kraus().size());
    for (const auto &k : ch.kraus()) {
        kraus.push_back(q.adjoint() * k);
    }
    QuantumChannel out(std::move(kraus), ch.in_shape(), DimShape::single(static_cast<std::size_t>(q.cols())),
                       ch.is_instrument());
    return {std::move(out), std::move(q)};
}

GroupRep::GroupRep(std::vector<std::string> labels, std::vector<ComplexMatrix> unitaries_in,
                   std::vector<ComplexMatrix> unitaries_out)
    : labels_(std::move(labels)), unitaries_in_(std::move(unitaries_in)), unitaries_out_(std::move(unitaries_out)) {
    if (unitaries_in_.empty()) {
        throw std::invalid_argument("GroupRep: empty representation");
    }
    if (labels_.empty()) {
        for (std::size_t g = 0; g < unitaries_in_.size(); g++) {
            labels_.push_back("g" + std::to_string(g));
        }
    }
    if (labels_.size() != unitaries_in_.size() || unitaries_out_.size() != unitaries_in_.size()) {
        throw std::invalid_argument("GroupRep: labels and unitary lists differ in length");
    }
    for (std::size_t g = 0; g < unitaries_in_.size(); g++) {
        check_unitary(unitaries_in_[g], "GroupRep input");
        check_unitary(unitaries_out_[g], "GroupRep output");
        if (unitaries_in_[g].rows() != unitaries_in_[0].rows() || unitaries_out_[g].rows() != unitaries_out_[0].rows()) {
            throw std::invalid_argument("GroupRep: unitaries of inconsistent dimension");
        }
    }
}

GroupRep GroupRep::symmetric(std::vector<std::string> labels, std::vector<ComplexMatrix> unitaries) {
    auto copy = unitaries;
    return GroupRep(std::move(labels), std::move(unitaries), std::move(copy));
}

GroupRep GroupRep::tensor(const GroupRep &other) const {
    if (other.size() != size()) {
        throw std::invalid_argument("GroupRep::tensor: group sizes differ");
    }
    std::vector<ComplexMatrix> in;
    std::vector<ComplexMatrix> out;
    for (std::size_t g = 0; g < size(); g++) {
        in.push_back(kron(unitaries_in_[g], other.unitaries_in_[g]));
        out.push_back(kron(unitaries_out_[g], other.unitaries_out_[g]));
    }
    return GroupRep(labels_, std::move(in), std::move(out));
}

bool GroupRep::check_closure(double tol, double *max_deviation) const {
    std::vector<ComplexMatrix> norm_in;
    std::vector<ComplexMatrix> norm_out;
    for (std::size_t g = 0; g < size(); g++) {
        norm_in.push_back(phase_normalized(unitaries_in_[g]));
        norm_out.push_back(phase_normalized(unitaries_out_[g]));
    }
    double worst = 0.0;
    for (std::size_t g = 0; g < size(); g++) {
        for (std::size_t h = 0; h < size(); h++) {
            ComplexMatrix pin = phase_normalized(unitaries_in_[g] * unitaries_in_[h]);
            ComplexMatrix pout = phase_normalized(unitaries_out_[g] * unitaries_out_[h]);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < size(); k++) {
                double dev = std::max((pin - norm_in[k]).norm(), (pout - norm_out[k]).norm());
                best = std::min(best, dev);
            }
            worst = std::max(worst, best);
        }
    }
    if (max_deviation != nullptr) {
        *max_deviation = worst;
    }
    return worst <= tol;
}

ComplexMatrix phase_normalized(const ComplexMatrix &u) {
    double max_mag = 0.0;
    for (Eigen::Index c = 0; c < u.cols(); c++) {
        for (Eigen::Index r = 0; r < u.rows(); r++) {
            max_mag = std::max(max_mag, std::abs(u(r, c)));
        }
    }
    if (max_mag == 0.0) {
        return u;
    }
    // Row-major scan; the first entry within rounding of the maximum sets the phase.
    for (Eigen::Index r = 0; r < u.rows(); r++) {
        for (Eigen::Index c = 0; c < u.cols(); c++) {
            double mag = std::abs(u(r, c));
            if (mag >= max_mag * (1.0 - 1e-6)) {
                return u * (std::abs(u(r, c)) / u(r, c));
            }
        }
    }
    return u;
}

std::vector<ComplexMatrix> generate_unitary_group(const std::vector<ComplexMatrix> &generators, std::size_t max_size) {
    if (generators.empty()) {
        throw std::invalid_argument("generate_unitary_group: no generators");
    }
    const auto d = generators[0].rows();
    for (const auto &g : generators) {
        check_unitary(g, "generate_unitary_group");
        if (g.rows() != d) {
            throw std::invalid_argument("generate_unitary_group: generators differ in dimension");
        }
    }
    std::vector<ComplexMatrix> elements{ComplexMatrix::Identity(d, d)};
    auto find = [&](const ComplexMatrix &m) {
        for (const auto &e : elements) {
            if ((e - m).norm() < 1e-8) {
                return true;
            }
        }
        return false;
    };
    for (std::size_t frontier = 0; frontier < elements.size(); frontier++) {
        for (const auto &g : generators) {
            ComplexMatrix next = phase_normalized(g * elements[frontier]);
            if (!find(next)) {
                if (elements.size() >= max_size) {
                    throw std::runtime_error("generate_unitary_group: group exceeds " + std::to_string(max_size) +
                                             " elements");
                }
                elements.push_back(std::move(next));
            }
        }
    }
    return elements;
}

namespace {

// Frobenius distance between sum_k (a_k)(b_k)^dagger and sum_k (c_k)(d_k)^dagger for
// columns i, j of the given per-Kraus matrices.
double column_pair_distance(const std::vector<ComplexMatrix> &lhs, const std::vector<ComplexMatrix> &rhs,
                            Eigen::Index i, Eigen::Index j) {
    std::vector<ComplexVector> a, b, c, d;
    a.reserve(lhs.size());
    for (std::size_t k = 0; k < lhs.size(); k++) {
        a.emplace_back(lhs[k].col(i));
        b.emplace_back(lhs[k].col(j));
        c.emplace_back(rhs[k].col(i));
        d.emplace_back(rhs[k].col(j));
    }
    return outer_sum_distance(a, b, c, d);
}

double max_pair_distance(const std::vector<ComplexMatrix> &lhs, const std::vector<ComplexMatrix> &rhs) {
    double worst = 0.0;
    const Eigen::Index cols = lhs.front().cols();
    for (Eigen::Index i = 0; i < cols; i++) {
        for (Eigen::Index j = 0; j < cols; j++) {
            worst = std::max(worst, column_pair_distance(lhs, rhs, i, j));
        }
    }
    return worst;
}

}  // namespace

CovarianceCheck is_covariant(const QuantumChannel &ch, const GroupRep &rep, double tol) {
    if (rep.dim_in() != ch.in_dim() || rep.dim_out() != ch.out_dim()) {
        throw std::invalid_argument("is_covariant: representation dimensions " + dims_str(rep.dim_in(), rep.dim_out()) +
                                    " do not match channel " + dims_str(ch.in_dim(), ch.out_dim()));
    }
    double worst = 0.0;
    for (std::size_t g = 0; g < rep.size(); g++) {
        std::vector<ComplexMatrix> lhs;
        std::vector<ComplexMatrix> rhs;
        for (const auto &k : ch.kraus()) {
            lhs.push_back(k * rep.unitaries_in()[g]);
            rhs.push_back(rep.unitaries_out()[g] * k);
        }
        worst = std::max(worst, max_pair_distance(lhs, rhs));
    }
    return {worst <= tol, worst};
}

UnitaryLift direct_sum_lift(const DimShape &shape) {
    return [shape](const ComplexMatrix &u) {
        std::vector<ComplexMatrix> ops;
        ops.reserve(shape.size());
        for (std::size_t k = 0; k < shape.size(); k++) {
            const auto f = static_cast<Eigen::Index>(shape[k]);
            if (f < u.rows()) {
                throw std::invalid_argument("direct_sum_lift: factor of dimension " + std::to_string(f) +
                                            " is smaller than the logical dimension");
            }
            ComplexMatrix op = ComplexMatrix::Identity(f, f);
            op.topLeftCorner(u.rows(), u.cols()) = u;
            ops.push_back(std::move(op));
        }
        return ops;
    };
}

CovarianceCheck sampled_covariance(const QuantumChannel &ch, const UnitaryLift &lift_in, const UnitaryLift &lift_out,
                                   std::size_t logical_dim, std::size_t samples, Rng &rng, double tol) {
    const std::size_t din = ch.in_dim();
    const bool use_units = din <= 16;
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; s++) {
        ComplexMatrix u = haar_unitary(logical_dim, rng);
        auto ops_in = lift_in(u);
        auto ops_out = lift_out(u);
        std::vector<ComplexVector> inputs;
        if (use_units) {
            for (std::size_t i = 0; i < din; i++) {
                inputs.push_back(basis_vector(din, i));
            }
        } else {
            for (int r = 0; r < 4; r++) {
                inputs.push_back(random_pure_state(din, rng));
            }
        }
        // Columns of lhs[k] are K_k U x; columns of rhs[k] are U' K_k x.
        std::vector<ComplexMatrix> lhs(ch.kraus().size(), ComplexMatrix(ch.out_dim(), inputs.size()));
        std::vector<ComplexMatrix> rhs(ch.kraus().size(), ComplexMatrix(ch.out_dim(), inputs.size()));
        for (std::size_t x = 0; x < inputs.size(); x++) {
            ComplexVector ux = apply_local(ops_in, ch.in_shape(), inputs[x]);
            for (std::size_t k = 0; k < ch.kraus().size(); k++) {
                lhs[k].col(x) = ch.kraus()[k] * ux;
                rhs[k].col(x) = apply_local(ops_out, ch.out_shape(), ch.kraus()[k] * inputs[x]);
            }
        }
        worst = std::max(worst, max_pair_distance(lhs, rhs));
    }
    return {worst <= tol, worst};
}

ComplexMatrix g_twirl(const ComplexMatrix &op, std::span<const ComplexMatrix> u_r, std::span<const ComplexMatrix> u_a) {
    if (u_r.empty() || u_r.size() != u_a.size()) {
        throw std::invalid_argument("g_twirl: representations must be non-empty and of equal size");
    }
    const auto dim = u_r[0].rows() * u_a[0].rows();
    if (op.rows() != dim || op.cols() != dim) {
        throw std::invalid_argument("g_twirl: operator is " + dims_str(op.rows(), op.cols()) + ", expected " +
                                    dims_str(dim, dim));
    }
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (std::size_t g = 0; g < u_r.size(); g++) {
        ComplexMatrix w = kron(ComplexMatrix(u_r[g].conjugate()), u_a[g]);
        acc.noalias() += w * op * w.adjoint();
    }
    return acc / static_cast<double>(u_r.size());
}

ComplexMatrix g_twirl(const ComplexMatrix &op, const GroupRep &rep_r, const GroupRep &rep_a) {
    return g_twirl(op, rep_r.unitaries_in(), rep_a.unitaries_in());
}

double haar_second_moment_lambda(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("haar_second_moment_lambda: d must be at least 2");
    }
    const double dd = static_cast<double>(d);
    return (dd * dd - dd) / (dd * dd - 1.0);
}

ComplexMatrix haar_pair_twirl(const ComplexMatrix &op, std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("haar_pair_twirl: d must be at least 2");
    }
    const auto dim = static_cast<Eigen::Index>(d * d);
    if (op.rows() != dim || op.cols() != dim) {
        throw std::invalid_argument("haar_pair_twirl: operator has the wrong dimension");
    }
    ComplexVector omega = max_entangled_vector(d);
    const Complex t1 = op.trace();
    const Complex t2 = omega.dot(op * omega);
    const double dd = static_cast<double>(d);
    const double det = dd * dd * dd * dd - dd * dd;
    const Complex a = (dd * dd * t1 - dd * t2) / det;
    const Complex b = (dd * dd * t2 - dd * t1) / det;
    return a * ComplexMatrix::Identity(dim, dim) + b * projector(omega);
}

ComplexMatrix haar_pair_twirl_state(std::size_t d) {
    const double lambda = haar_second_moment_lambda(d);
    const double dd = static_cast<double>(d);
    const auto dim = static_cast<Eigen::Index>(d * d);
    return lambda * ComplexMatrix::Identity(dim, dim) / (dd * dd) +
           (1.0 - lambda) * projector(max_entangled_vector(d)) / dd;
}

}  // namespace covcert

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

#include "covcert/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace covcert {

DimShape::DimShape(std::initializer_list<std::size_t> factors) : DimShape(std::vector<std::size_t>(factors)) {
}

DimShape::DimShape(std::vector<std::size_t> factors) : factors_(std::move(factors)) {
    for (auto f : factors_) {
        if (f == 0) {
            throw std::invalid_argument("DimShape factors must be >= 1");
        }
    }
}

DimShape DimShape::single(std::size_t d) {
    return DimShape(std::vector<std::size_t>{d});
}

DimShape DimShape::uniform(std::size_t d, std::size_t n) {
    return DimShape(std::vector<std::size_t>(n, d));
}

std::size_t DimShape::total() const {
    std::size_t t = 1;
    for (auto f : factors_) {
        t *= f;
    }
    return t;
}

DimShape DimShape::without(std::span<const std::size_t> removed) const {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < factors_.size(); i++) {
        if (std::find(removed.begin(), removed.end(), i) == removed.end()) {
            kept.push_back(factors_[i]);
        }
    }
    return DimShape(std::move(kept));
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); i++) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

std::vector<std::size_t> unflatten_index(std::size_t index, const DimShape &shape) {
    std::vector<std::size_t> digits(shape.size());
    for (std::size_t k = shape.size(); k-- > 0;) {
        digits[k] = index % shape[k];
        index /= shape[k];
    }
    return digits;
}

std::size_t flatten_index(std::span<const std::size_t> digits, const DimShape &shape) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < shape.size(); k++) {
        index = index * shape[k] + digits[k];
    }
    return index;
}

namespace {

void check_square_shape(const ComplexMatrix &m, const DimShape &shape, const char *what) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(what) + ": matrix is not square");
    }
    if (static_cast<std::size_t>(m.rows()) != shape.total()) {
        throw std::invalid_argument(std::string(what) + ": shape product " + std::to_string(shape.total()) +
                                    " does not match matrix dimension " + std::to_string(m.rows()));
    }
}

// For each flat index, the flat index restricted to the kept and to the traced factors.
struct SplitIndex {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> traced;
    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
};

SplitIndex split_indices(const DimShape &shape, std::span<const std::size_t> traced) {
    std::vector<bool> is_traced(shape.size(), false);
    for (auto t : traced) {
        if (t >= shape.size()) {
            throw std::invalid_argument("partial_trace: factor index " + std::to_string(t) + " out of range");
        }
        if (is_traced[t]) {
            throw std::invalid_argument("partial_trace: factor index listed twice");
        }
        is_traced[t] = true;
    }
    SplitIndex s;
    for (std::size_t k = 0; k < shape.size(); k++) {
        (is_traced[k] ? s.traced_dim : s.kept_dim) *= shape[k];
    }
    std::size_t total = shape.total();
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

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix &m, const DimShape &shape, std::span<const std::size_t> traced) {
    check_square_shape(m, shape, "partial_trace");
    SplitIndex s = split_indices(shape, traced);
    // Bucket flat indices by their traced-factor value.
    std::vector<std::vector<std::size_t>> buckets(s.traced_dim);
    for (std::size_t idx = 0; idx < s.traced.size(); idx++) {
        buckets[s.traced[idx]].push_back(idx);
    }
    ComplexMatrix out = ComplexMatrix::Zero(s.kept_dim, s.kept_dim);
    for (const auto &bucket : buckets) {
        for (auto r : bucket) {
            for (auto c : bucket) {
                out(s.kept[r], s.kept[c]) += m(r, c);
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const DimShape &shape, std::initializer_list<std::size_t> traced) {
    std::vector<std::size_t> t(traced);
    return partial_trace(m, shape, std::span<const std::size_t>(t));
}

namespace {

std::vector<std::size_t> permutation_map(const DimShape &shape, std::span<const std::size_t> perm) {
    if (perm.size() != shape.size()) {
        throw std::invalid_argument("permute_factors: permutation length mismatch");
    }
    std::vector<bool> seen(perm.size(), false);
    std::vector<std::size_t> new_factors(perm.size());
    for (std::size_t k = 0; k < perm.size(); k++) {
        if (perm[k] >= perm.size() || seen[perm[k]]) {
            throw std::invalid_argument("permute_factors: not a permutation");
        }
        seen[perm[k]] = true;
        new_factors[k] = shape[perm[k]];
    }
    DimShape out_shape(new_factors);
    std::size_t total = shape.total();
    std::vector<std::size_t> map(total);  // map[old] = new
    std::vector<std::size_t> new_digits(perm.size());
    for (std::size_t idx = 0; idx < total; idx++) {
        auto digits = unflatten_index(idx, shape);
        for (std::size_t k = 0; k < perm.size(); k++) {
            new_digits[k] = digits[perm[k]];
        }
        map[idx] = flatten_index(new_digits, out_shape);
    }
    return map;
}

}  // namespace

ComplexMatrix permute_factors(const ComplexMatrix &m, const DimShape &shape, std::span<const std::size_t> perm) {
    check_square_shape(m, shape, "permute_factors");
    auto map = permutation_map(shape, perm);
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            out(map[r], map[c]) = m(r, c);
        }
    }
    return out;
}

ComplexVector permute_factors(const ComplexVector &v, const DimShape &shape, std::span<const std::size_t> perm) {
    if (static_cast<std::size_t>(v.size()) != shape.total()) {
        throw std::invalid_argument("permute_factors: vector length does not match shape");
    }
    auto map = permutation_map(shape, perm);
    ComplexVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); i++) {
        out(map[i]) = v(i);
    }
    return out;
}

ComplexVector apply_local(std::span<const ComplexMatrix> factor_ops, const DimShape &shape, const ComplexVector &v) {
    if (factor_ops.size() != shape.size()) {
        throw std::invalid_argument("apply_local: need one operator per factor");
    }
    if (static_cast<std::size_t>(v.size()) != shape.total()) {
        throw std::invalid_argument("apply_local: vector length does not match shape");
    }
    ComplexVector cur = v;
    ComplexVector next(v.size());
    std::size_t left = 1;
    std::size_t right = shape.total();
    for (std::size_t k = 0; k < shape.size(); k++) {
        const std::size_t d = shape[k];
        const ComplexMatrix &op = factor_ops[k];
        if (static_cast<std::size_t>(op.rows()) != d || static_cast<std::size_t>(op.cols()) != d) {
            throw std::invalid_argument("apply_local: factor operator has wrong dimension");
        }
        right /= d;
        next.setZero();
        for (std::size_t l = 0; l < left; l++) {
            for (std::size_t a = 0; a < d; a++) {
                for (std::size_t b = 0; b < d; b++) {
                    const Complex u = op(a, b);
                    if (u == Complex(0.0, 0.0)) {
                        continue;
                    }
                    const std::size_t out_base = (l * d + a) * right;
                    const std::size_t in_base = (l * d + b) * right;
                    for (std::size_t r = 0; r < right; r++) {
                        next(out_base + r) += u * cur(in_base + r);
                    }
                }
            }
        }
        std::swap(cur, next);
        left *= d;
    }
    return cur;
}

double hermitian_deviation(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).norm();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return hermitian_deviation(m) <= tol * std::max(1.0, m.norm());
}

ComplexMatrix symmetrized(const ComplexMatrix &m) {
    if (!is_hermitian(m)) {
        throw std::invalid_argument("matrix is not Hermitian within tolerance");
    }
    return (m + m.adjoint()) / 2.0;
}

HermitianEigen eig_hermitian(const ComplexMatrix &m) {
    ComplexMatrix h = symmetrized(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix &m) {
    ComplexMatrix h = symmetrized(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

bool is_psd(const ComplexMatrix &m, double tol) {
    if (!is_hermitian(m)) {
        return false;
    }
    return min_eigenvalue(m) >= -tol * std::max(1.0, m.norm());
}

bool is_density(const ComplexMatrix &m) {
    return is_psd(m) && std::abs(m.trace() - Complex(1.0, 0.0)) <= kTraceTol;
}

ComplexMatrix clip_to_psd(const ComplexMatrix &m) {
    auto eig = eig_hermitian(m);
    double scale = std::max(1.0, m.norm());
    RealVector vals = eig.values;
    for (Eigen::Index i = 0; i < vals.size(); i++) {
        if (vals(i) < -kPsdTol * scale) {
            throw std::invalid_argument("clip_to_psd: matrix has a significantly negative eigenvalue");
        }
        vals(i) = std::max(vals(i), 0.0);
    }
    return eig.vectors * vals.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix sqrt_psd(const ComplexMatrix &m) {
    auto eig = eig_hermitian(m);
    RealVector vals = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * vals.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

namespace {

// Square root that zeroes eigenvalues at rounding level, so rank-deficient
// inputs do not pick up sqrt(eps) contributions.
ComplexMatrix sqrt_psd_truncated(const ComplexMatrix &m) {
    auto eig = eig_hermitian(m);
    const double top = std::max(eig.values.maxCoeff(), 0.0);
    RealVector vals(eig.values.size());
    for (Eigen::Index i = 0; i < vals.size(); i++) {
        vals(i) = eig.values(i) > 1e-14 * top ? std::sqrt(eig.values(i)) : 0.0;
    }
    return eig.vectors * vals.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

double fidelity(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    if (!is_density(rho) || !is_density(sigma)) {
        throw std::invalid_argument("fidelity: inputs must be density operators");
    }
    // tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(rho) sqrt(sigma).
    ComplexMatrix prod = sqrt_psd_truncated(rho) * sqrt_psd_truncated(sigma);
    Eigen::JacobiSVD<ComplexMatrix> svd(prod);
    const double tr = svd.singularValues().sum();
    return std::clamp(tr * tr, 0.0, 1.0);
}

RealMatrix embed_complex_as_real(const ComplexMatrix &h) {
    if (!is_hermitian(h)) {
        throw std::invalid_argument("embed_complex_as_real: input is not Hermitian");
    }
    ComplexMatrix s = (h + h.adjoint()) / 2.0;
    const Eigen::Index n = s.rows();
    RealMatrix out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = s.real();
    out.topRightCorner(n, n) = -s.imag();
    out.bottomLeftCorner(n, n) = s.imag();
    out.bottomRightCorner(n, n) = s.real();
    return out;
}

ComplexMatrix extract_complex_from_real(const RealMatrix &r) {
    if (r.rows() != r.cols() || r.rows() % 2 != 0) {
        throw std::invalid_argument("extract_complex_from_real: need an even square matrix");
    }
    const Eigen::Index n = r.rows() / 2;
    RealMatrix re = (r.topLeftCorner(n, n) + r.bottomRightCorner(n, n)) / 2.0;
    RealMatrix im = (r.bottomLeftCorner(n, n) - r.topRightCorner(n, n)) / 2.0;
    ComplexMatrix out(n, n);
    out.real() = re;
    out.imag() = im;
    return (out + out.adjoint()) / 2.0;
}

ComplexMatrix orthonormal_range(const ComplexMatrix &m, double rel_tol) {
    if (m.cols() == 0 || m.rows() == 0) {
        return ComplexMatrix(m.rows(), 0);
    }
    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    const RealVector &sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) {
        return ComplexMatrix(m.rows(), 0);
    }
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > rel_tol * sv(0)) {
        rank++;
    }
    return svd.matrixU().leftCols(rank);
}

double outer_sum_distance(std::span<const ComplexVector> a, std::span<const ComplexVector> b,
                          std::span<const ComplexVector> c, std::span<const ComplexVector> d) {
    if (a.size() != b.size() || c.size() != d.size()) {
        throw std::invalid_argument("outer_sum_distance: mismatched factor lists");
    }
    const std::size_t k = a.size() + c.size();
    if (k == 0) {
        return 0.0;
    }
    const Eigen::Index rows_left = (a.empty() ? c[0] : a[0]).size();
    const Eigen::Index rows_right = (b.empty() ? d[0] : b[0]).size();
    ComplexMatrix left(rows_left, k);
    ComplexMatrix right(rows_right, k);
    for (std::size_t i = 0; i < a.size(); i++) {
        left.col(i) = a[i];
        right.col(i) = b[i];
    }
    for (std::size_t i = 0; i < c.size(); i++) {
        left.col(a.size() + i) = c[i];
        right.col(a.size() + i) = -d[i];
    }
    // ||L R^dagger||_F = ||R_L R^dagger||_F with L = Q_L R_L (thin QR).
    Eigen::HouseholderQR<ComplexMatrix> qr(left);
    const Eigen::Index r = std::min<Eigen::Index>(rows_left, static_cast<Eigen::Index>(k));
    ComplexMatrix upper = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    return (upper * right.adjoint()).norm();
}

std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(d * d);
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 0; k < d; k++) {
        ComplexMatrix e = ComplexMatrix::Zero(d, d);
        e(k, k) = 1.0;
        basis.push_back(e);
    }
    for (std::size_t k = 0; k < d; k++) {
        for (std::size_t l = k + 1; l < d; l++) {
            ComplexMatrix re = ComplexMatrix::Zero(d, d);
            re(k, l) = s;
            re(l, k) = s;
            basis.push_back(re);
            ComplexMatrix im = ComplexMatrix::Zero(d, d);
            im(k, l) = Complex(0.0, s);
            im(l, k) = Complex(0.0, -s);
            basis.push_back(im);
        }
    }
    return basis;
}

ComplexMatrix projector(const ComplexVector &v) {
    return v * v.adjoint();
}

ComplexVector basis_vector(std::size_t d, std::size_t i) {
    if (i >= d) {
        throw std::invalid_argument("basis_vector: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(d);
    v(i) = 1.0;
    return v;
}

ComplexVector max_entangled_vector(std::size_t d) {
    ComplexVector v = ComplexVector::Zero(d * d);
    for (std::size_t i = 0; i < d; i++) {
        v(i * d + i) = 1.0;
    }
    return v;
}

}  // namespace covcert

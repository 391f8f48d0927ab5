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


#include "covcert/sdp.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <stdexcept>

namespace covcert {

SdpProblem::SdpProblem(std::vector<std::size_t> block_sizes) : block_sizes_(std::move(block_sizes)) {
    if (block_sizes_.empty()) {
        throw std::invalid_argument("SdpProblem: no blocks");
    }
    for (auto n : block_sizes_) {
        if (n == 0) {
            throw std::invalid_argument("SdpProblem: empty block");
        }
        objective_.push_back(RealMatrix::Zero(n, n));
    }
}

void SdpProblem::check_index(std::size_t block, std::size_t row, std::size_t col) const {
    if (block >= block_sizes_.size() || row >= block_sizes_[block] || col >= block_sizes_[block]) {
        throw std::invalid_argument("SdpProblem: entry (" + std::to_string(block) + ", " + std::to_string(row) + ", " +
                                    std::to_string(col) + ") out of range");
    }
}

void SdpProblem::add_objective_entry(std::size_t block, std::size_t row, std::size_t col, double value) {
    check_index(block, row, col);
    objective_[block](row, col) += value;
    if (row != col) {
        objective_[block](col, row) += value;
    }
}

void SdpProblem::set_objective_block(std::size_t block, const RealMatrix &c) {
    check_index(block, 0, 0);
    const auto n = static_cast<Eigen::Index>(block_sizes_[block]);
    if (c.rows() != n || c.cols() != n) {
        throw std::invalid_argument("SdpProblem: objective block has the wrong size");
    }
    objective_[block] = c;
}

std::size_t SdpProblem::add_constraint(double rhs) {
    constraints_.push_back({{}, rhs});
    return constraints_.size() - 1;
}

void SdpProblem::add_constraint_entry(std::size_t k, std::size_t block, std::size_t row, std::size_t col,
                                      double value) {
    if (k >= constraints_.size()) {
        throw std::invalid_argument("SdpProblem: constraint index out of range");
    }
    check_index(block, row, col);
    if (row > col) {
        std::swap(row, col);
    }
    constraints_[k].entries.push_back({block, row, col, value});
}

std::vector<RealMatrix> SdpProblem::constraint_matrix(std::size_t k) const {
    std::vector<RealMatrix> out;
    for (auto n : block_sizes_) {
        out.push_back(RealMatrix::Zero(n, n));
    }
    for (const auto &e : constraints_.at(k).entries) {
        out[e.block](e.row, e.col) += e.value;
        if (e.row != e.col) {
            out[e.block](e.col, e.row) += e.value;
        }
    }
    return out;
}

void SdpProblem::validate() const {
    for (std::size_t b = 0; b < objective_.size(); b++) {
        const auto &c = objective_[b];
        if (!c.allFinite()) {
            throw std::invalid_argument("SdpProblem: non-finite objective entry");
        }
        if ((c - c.transpose()).norm() > 1e-10 * std::max(1.0, c.norm())) {
            throw std::invalid_argument("SdpProblem: objective block " + std::to_string(b) + " is not symmetric");
        }
    }
    for (const auto &con : constraints_) {
        if (!std::isfinite(con.rhs)) {
            throw std::invalid_argument("SdpProblem: non-finite right-hand side");
        }
        for (const auto &e : con.entries) {
            if (!std::isfinite(e.value)) {
                throw std::invalid_argument("SdpProblem: non-finite constraint entry");
            }
        }
    }
}

std::string to_string(SdpStatus status) {
    switch (status) {
        case SdpStatus::kOptimal:
            return "optimal";
        case SdpStatus::kMaxIter:
            return "max_iter";
        case SdpStatus::kInfeasible:
            return "infeasible";
        case SdpStatus::kNumericalError:
            return "numerical_error";
    }
    return "unknown";
}

namespace {

using Blocks = std::vector<RealMatrix>;

// Constraint entries regrouped by block.
struct BlockEntry {
    Eigen::Index row;
    Eigen::Index col;
    double value;
};

struct Operator {
    std::vector<std::size_t> sizes;
    // entries[k][b]: entries of constraint k in block b.
    std::vector<std::vector<std::vector<BlockEntry>>> entries;
    RealVector rhs;

    std::size_t m() const { return entries.size(); }

    RealVector apply(const Blocks &x) const {
        RealVector out = RealVector::Zero(static_cast<Eigen::Index>(m()));
        for (std::size_t k = 0; k < m(); k++) {
            double s = 0.0;
            for (std::size_t b = 0; b < sizes.size(); b++) {
                for (const auto &e : entries[k][b]) {
                    s += e.row == e.col ? e.value * x[b](e.row, e.row) : 2.0 * e.value * x[b](e.row, e.col);
                }
            }
            out(static_cast<Eigen::Index>(k)) = s;
        }
        return out;
    }

    Blocks adjoint(const RealVector &y) const {
        Blocks out;
        for (auto n : sizes) {
            out.push_back(RealMatrix::Zero(n, n));
        }
        for (std::size_t k = 0; k < m(); k++) {
            const double yk = y(static_cast<Eigen::Index>(k));
            if (yk == 0.0) {
                continue;
            }
            for (std::size_t b = 0; b < sizes.size(); b++) {
                for (const auto &e : entries[k][b]) {
                    out[b](e.row, e.col) += yk * e.value;
                    if (e.row != e.col) {
                        out[b](e.col, e.row) += yk * e.value;
                    }
                }
            }
        }
        return out;
    }
};

double inner(const Blocks &a, const Blocks &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); i++) {
        s += a[i].cwiseProduct(b[i]).sum();
    }
    return s;
}

double norm(const Blocks &a) {
    return std::sqrt(inner(a, a));
}

Blocks add_scaled(const Blocks &a, double alpha, const Blocks &b) {
    Blocks out = a;
    for (std::size_t i = 0; i < a.size(); i++) {
        out[i] += alpha * b[i];
    }
    return out;
}

void symmetrize(Blocks &a) {
    for (auto &m : a) {
        m = (m + m.transpose()).eval() / 2.0;
    }
}

// Nesterov-Todd scaling of one block: G with G^T Z G = G^{-1} X G^{-T} = diag(lambda).
struct BlockScaling {
    RealMatrix g;
    RealMatrix g_inv;
    RealMatrix w;
    RealVector lambda;
};

bool compute_scaling(const RealMatrix &x, const RealMatrix &z, BlockScaling &out) {
    Eigen::LLT<RealMatrix> llt(x);
    if (llt.info() != Eigen::Success) {
        return false;
    }
    RealMatrix l = llt.matrixL();
    RealMatrix ltzl = l.transpose() * z * l;
    ltzl = (ltzl + ltzl.transpose()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(ltzl);
    if (eig.info() != Eigen::Success) {
        return false;
    }
    RealVector s = eig.eigenvalues();
    if (s.minCoeff() <= 0.0 || !s.allFinite()) {
        return false;
    }
    const RealMatrix &q = eig.eigenvectors();
    RealVector s_m14 = s.array().pow(-0.25);
    RealVector s_p14 = s.array().pow(0.25);
    out.g = l * q * s_m14.asDiagonal();
    // G^{-1} = S^{1/4} Q^T L^{-1}
    RealMatrix linv = llt.matrixL().solve(RealMatrix::Identity(x.rows(), x.cols()));
    out.g_inv = s_p14.asDiagonal() * q.transpose() * linv;
    out.w = out.g * out.g.transpose();
    out.w = (out.w + out.w.transpose()).eval() / 2.0;
    out.lambda = s.cwiseSqrt();
    return true;
}

// Largest alpha with x + alpha dx PSD (infinity when dx keeps x PSD for all alpha).
double max_step(const RealMatrix &x, const RealMatrix &dx) {
    Eigen::LLT<RealMatrix> llt(x);
    if (llt.info() != Eigen::Success) {
        return 0.0;
    }
    RealMatrix t = llt.matrixL().solve(dx);
    RealMatrix u = llt.matrixL().solve(t.transpose());
    u = (u + u.transpose()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(u, Eigen::EigenvaluesOnly);
    double lmin = eig.eigenvalues()(0);
    if (lmin >= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -1.0 / lmin;
}

double max_step(const Blocks &x, const Blocks &dx) {
    double a = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < x.size(); b++) {
        a = std::min(a, max_step(x[b], dx[b]));
    }
    return a;
}

// Schur complement M_ij = <A_i, W A_j W>.
RealMatrix build_schur(const Operator &op, const std::vector<BlockScaling> &scal) {
    const auto m = static_cast<Eigen::Index>(op.m());
    RealMatrix schur = RealMatrix::Zero(m, m);
    for (std::size_t b = 0; b < op.sizes.size(); b++) {
        const RealMatrix &w = scal[b].w;
        const auto n = w.rows();
        const double dense_cost = 2.0 * static_cast<double>(n) * n * n;
        RealMatrix wajw(n, n);
        for (Eigen::Index j = 0; j < m; j++) {
            const auto &ej = op.entries[j][b];
            if (ej.empty()) {
                continue;
            }
            const double sparse_cost = static_cast<double>(ej.size()) * 2.0 * n * n;
            if (sparse_cost <= dense_cost) {
                wajw.setZero();
                for (const auto &e : ej) {
                    if (e.row == e.col) {
                        wajw.noalias() += e.value * w.col(e.row) * w.col(e.row).transpose();
                    } else {
                        wajw.noalias() += e.value * w.col(e.row) * w.col(e.col).transpose();
                        wajw.noalias() += e.value * w.col(e.col) * w.col(e.row).transpose();
                    }
                }
            } else {
                RealMatrix a = RealMatrix::Zero(n, n);
                for (const auto &e : ej) {
                    a(e.row, e.col) += e.value;
                    if (e.row != e.col) {
                        a(e.col, e.row) += e.value;
                    }
                }
                wajw.noalias() = w * a * w;
            }
            for (Eigen::Index i = j; i < m; i++) {
                double s = 0.0;
                for (const auto &e : op.entries[i][b]) {
                    s += e.row == e.col ? e.value * wajw(e.row, e.row) : 2.0 * e.value * wajw(e.row, e.col);
                }
                schur(i, j) += s;
            }
        }
    }
    for (Eigen::Index j = 0; j < m; j++) {
        for (Eigen::Index i = j + 1; i < m; i++) {
            schur(j, i) = schur(i, j);
        }
    }
    return schur;
}

struct Direction {
    Blocks dx;
    RealVector dy;
    Blocks dz;
};

class SchurSolver {
   public:
    bool factor(const RealMatrix &m) {
        llt_.compute(m);
        if (llt_.info() == Eigen::Success) {
            use_ldlt_ = false;
            return true;
        }
        // Regularize slightly and fall back to LDL^T.
        RealMatrix reg = m;
        const double ridge = 1e-14 * std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
        reg.diagonal().array() += ridge;
        ldlt_.compute(reg);
        use_ldlt_ = true;
        return ldlt_.info() == Eigen::Success;
    }
    RealVector solve(const RealVector &rhs) const {
        if (use_ldlt_) {
            return ldlt_.solve(rhs);
        }
        return llt_.solve(rhs);
    }

   private:
    Eigen::LLT<RealMatrix> llt_;
    Eigen::LDLT<RealMatrix> ldlt_;
    bool use_ldlt_ = false;
};

Direction solve_direction(const Operator &op, const std::vector<BlockScaling> &scal, const SchurSolver &schur,
                          const RealVector &rp, const Blocks &rd, const Blocks &rc) {
    // M dy = rp - A(Rc) + A(W Rd W); dz = Rd - A* dy; dx = Rc - W dz W.
    Blocks wrdw;
    for (std::size_t b = 0; b < scal.size(); b++) {
        wrdw.push_back(scal[b].w * rd[b] * scal[b].w);
    }
    RealVector rhs = rp - op.apply(rc) + op.apply(wrdw);
    Direction d;
    d.dy = schur.solve(rhs);
    Blocks aty = op.adjoint(d.dy);
    for (std::size_t b = 0; b < scal.size(); b++) {
        d.dz.push_back(rd[b] - aty[b]);
        d.dx.push_back(rc[b] - scal[b].w * d.dz.back() * scal[b].w);
    }
    symmetrize(d.dx);
    symmetrize(d.dz);
    return d;
}

Operator build_operator(const SdpProblem &problem, const std::vector<std::size_t> &kept) {
    Operator op;
    op.sizes = problem.block_sizes();
    op.rhs.resize(static_cast<Eigen::Index>(kept.size()));
    for (std::size_t k = 0; k < kept.size(); k++) {
        const auto &con = problem.constraints()[kept[k]];
        std::vector<std::vector<BlockEntry>> per_block(op.sizes.size());
        for (const auto &e : con.entries) {
            if (e.value != 0.0) {
                per_block[e.block].push_back(
                    {static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col), e.value});
            }
        }
        op.entries.push_back(std::move(per_block));
        op.rhs(static_cast<Eigen::Index>(k)) = con.rhs;
    }
    return op;
}

std::vector<double> svec(const SdpProblem &problem, const SdpConstraint &con) {
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    for (auto n : problem.block_sizes()) {
        offsets.push_back(total);
        total += n * (n + 1) / 2;
    }
    std::vector<double> v(total, 0.0);
    for (const auto &e : con.entries) {
        const std::size_t n = problem.block_sizes()[e.block];
        // Upper-triangle packed index of (row, col), row <= col.
        const std::size_t idx = offsets[e.block] + e.row * n - e.row * (e.row + 1) / 2 + e.col;
        v[idx] += e.row == e.col ? e.value : std::sqrt(2.0) * e.value;
    }
    return v;
}

}  // namespace

ReducedConstraints reduce_dependent_constraints(const SdpProblem &problem, double rel_tol) {
    ReducedConstraints out;
    std::vector<RealVector> basis;
    std::vector<double> basis_rhs;
    for (std::size_t k = 0; k < problem.num_constraints(); k++) {
        auto raw = svec(problem, problem.constraints()[k]);
        RealVector v = Eigen::Map<RealVector>(raw.data(), static_cast<Eigen::Index>(raw.size()));
        double rhs = problem.constraints()[k].rhs;
        const double norm0 = v.norm();
        // Two passes of modified Gram-Schmidt.
        for (int pass = 0; pass < 2; pass++) {
            for (std::size_t j = 0; j < basis.size(); j++) {
                double c = basis[j].dot(v);
                v -= c * basis[j];
                rhs -= c * basis_rhs[j];
            }
        }
        const double nv = v.norm();
        if (norm0 == 0.0 || nv <= rel_tol * std::max(1.0, norm0) * 1e2) {
            if (std::abs(rhs) > 1e-8 * (1.0 + std::abs(problem.constraints()[k].rhs))) {
                out.consistent = false;
            }
            continue;
        }
        basis.push_back(v / nv);
        basis_rhs.push_back(rhs / nv);
        out.kept.push_back(k);
    }
    return out;
}

SdpSolution solve(const SdpProblem &problem, const SdpOptions &options) {
    problem.validate();
    SdpSolution sol;
    ReducedConstraints reduced = reduce_dependent_constraints(problem);
    sol.dropped_constraints = problem.num_constraints() - reduced.kept.size();
    const Operator op = build_operator(problem, reduced.kept);
    const Blocks &c = problem.objective();
    const std::size_t nb = op.sizes.size();
    double n_total = 0.0;
    for (auto n : op.sizes) {
        n_total += static_cast<double>(n);
    }
    const double norm_b = op.rhs.norm();
    const double norm_c = norm(c);

    // Starting point X = xi I, Z = eta I per block.
    Blocks x;
    Blocks z;
    for (std::size_t b = 0; b < nb; b++) {
        const double n = static_cast<double>(op.sizes[b]);
        double xi = std::max(10.0, std::sqrt(n));
        double eta = std::max({10.0, std::sqrt(n), c[b].norm()});
        for (std::size_t k = 0; k < op.m(); k++) {
            double a_norm = 0.0;
            for (const auto &e : op.entries[k][b]) {
                a_norm += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
            }
            a_norm = std::sqrt(a_norm);
            xi = std::max(xi, std::sqrt(n) * (1.0 + std::abs(op.rhs(static_cast<Eigen::Index>(k)))) / (1.0 + a_norm));
            eta = std::max(eta, a_norm);
        }
        if (options.initial_scale > 0.0) {
            xi = eta = options.initial_scale;
        }
        x.push_back(xi * RealMatrix::Identity(op.sizes[b], op.sizes[b]));
        z.push_back(eta * RealMatrix::Identity(op.sizes[b], op.sizes[b]));
    }
    RealVector y = RealVector::Zero(static_cast<Eigen::Index>(op.m()));

    auto finalize = [&](SdpStatus status, std::size_t iters) {
        sol.status = status;
        sol.iterations = iters;
        sol.x = x;
        sol.z = z;
        sol.y.assign(problem.num_constraints(), 0.0);
        for (std::size_t k = 0; k < reduced.kept.size(); k++) {
            sol.y[reduced.kept[k]] = y(static_cast<Eigen::Index>(k));
        }
        return sol;
    };

    if (!reduced.consistent) {
        return finalize(SdpStatus::kInfeasible, 0);
    }

    for (std::size_t iter = 0;; iter++) {
        const RealVector rp = op.rhs - op.apply(x);
        Blocks aty = op.adjoint(y);
        Blocks rd;
        for (std::size_t b = 0; b < nb; b++) {
            rd.push_back(c[b] - aty[b] - z[b]);
        }
        sol.primal_value = inner(c, x);
        sol.dual_value = op.rhs.dot(y);
        sol.gap = std::abs(sol.primal_value - sol.dual_value) / std::max(1.0, std::abs(sol.primal_value));
        sol.primal_infeasibility = rp.norm() / (1.0 + norm_b);
        sol.dual_infeasibility = norm(rd) / (1.0 + norm_c);
        sol.complementarity = inner(x, z);
        sol.kkt_residual =
            std::max({sol.primal_infeasibility, sol.dual_infeasibility,
                      sol.complementarity / (1.0 + std::abs(sol.primal_value) + std::abs(sol.dual_value))});
        if (options.record_trace) {
            sol.trace.push_back({sol.primal_value, sol.dual_value, sol.primal_infeasibility, sol.dual_infeasibility});
        }
        const double mu = inner(x, z) / n_total;
        if (sol.gap <= options.gap_tol && sol.primal_infeasibility <= options.feas_tol &&
            sol.dual_infeasibility <= options.feas_tol && mu / std::max(1.0, std::abs(sol.primal_value)) <= options.gap_tol) {
            return finalize(SdpStatus::kOptimal, iter);
        }
        if (!std::isfinite(mu) || norm(x) > 1e10 || norm(z) > 1e10) {
            return finalize(SdpStatus::kInfeasible, iter);
        }
        if (iter >= options.max_iter) {
            return finalize(SdpStatus::kMaxIter, iter);
        }

        std::vector<BlockScaling> scal(nb);
        for (std::size_t b = 0; b < nb; b++) {
            if (!compute_scaling(x[b], z[b], scal[b])) {
                return finalize(SdpStatus::kNumericalError, iter);
            }
        }
        SchurSolver schur;
        if (!schur.factor(build_schur(op, scal))) {
            return finalize(SdpStatus::kNumericalError, iter);
        }

        // Predictor: target mu = 0, Rc = -X.
        Blocks rc_aff;
        for (std::size_t b = 0; b < nb; b++) {
            rc_aff.push_back(-x[b]);
        }
        Direction aff = solve_direction(op, scal, schur, rp, rd, rc_aff);
        const double ap_aff = std::min(1.0, max_step(x, aff.dx));
        const double ad_aff = std::min(1.0, max_step(z, aff.dz));
        const double mu_aff = inner(add_scaled(x, ap_aff, aff.dx), add_scaled(z, ad_aff, aff.dz)) / n_total;
        const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

        // Corrector in the scaled space.
        Blocks rc;
        for (std::size_t b = 0; b < nb; b++) {
            const BlockScaling &s = scal[b];
            const auto n = static_cast<Eigen::Index>(op.sizes[b]);
            RealMatrix dxs = s.g_inv * aff.dx[b] * s.g_inv.transpose();
            RealMatrix dzs = s.g.transpose() * aff.dz[b] * s.g;
            RealMatrix prod = dxs * dzs;
            RealMatrix rmat = -(prod + prod.transpose()) / 2.0;
            for (Eigen::Index i = 0; i < n; i++) {
                rmat(i, i) += sigma * mu - s.lambda(i) * s.lambda(i);
            }
            RealMatrix rs(n, n);
            for (Eigen::Index i = 0; i < n; i++) {
                for (Eigen::Index j = 0; j < n; j++) {
                    rs(i, j) = 2.0 * rmat(i, j) / (s.lambda(i) + s.lambda(j));
                }
            }
            rc.push_back(s.g * rs * s.g.transpose());
        }
        Direction dir = solve_direction(op, scal, schur, rp, rd, rc);
        const double ap = std::min(1.0, options.step_fraction * max_step(x, dir.dx));
        const double ad = std::min(1.0, options.step_fraction * max_step(z, dir.dz));
        if (!(ap > 0.0) || !(ad > 0.0) || (ap < 1e-10 && ad < 1e-10)) {
            return finalize(SdpStatus::kNumericalError, iter + 1);
        }
        x = add_scaled(x, ap, dir.dx);
        y += ad * dir.dy;
        z = add_scaled(z, ad, dir.dz);
        symmetrize(x);
        symmetrize(z);
    }
}

void write_sdpa_sparse(const SdpProblem &problem, std::ostream &out) {
    out << "\"covcert standard-form problem: SDPA dual with F0 = -C\n";
    out << problem.num_constraints() << "\n";
    out << problem.num_blocks() << "\n";
    for (std::size_t b = 0; b < problem.num_blocks(); b++) {
        out << (b ? " " : "") << problem.block_sizes()[b];
    }
    out << "\n";
    out << std::setprecision(17);
    for (std::size_t k = 0; k < problem.num_constraints(); k++) {
        out << (k ? " " : "") << problem.constraints()[k].rhs;
    }
    out << "\n";
    for (std::size_t b = 0; b < problem.num_blocks(); b++) {
        const auto &c = problem.objective()[b];
        for (Eigen::Index i = 0; i < c.rows(); i++) {
            for (Eigen::Index j = i; j < c.cols(); j++) {
                if (c(i, j) != 0.0) {
                    out << 0 << " " << b + 1 << " " << i + 1 << " " << j + 1 << " " << -c(i, j) << "\n";
                }
            }
        }
    }
    for (std::size_t k = 0; k < problem.num_constraints(); k++) {
        auto dense = problem.constraint_matrix(k);
        for (std::size_t b = 0; b < problem.num_blocks(); b++) {
            for (Eigen::Index i = 0; i < dense[b].rows(); i++) {
                for (Eigen::Index j = i; j < dense[b].cols(); j++) {
                    if (dense[b](i, j) != 0.0) {
                        out << k + 1 << " " << b + 1 << " " << i + 1 << " " << j + 1 << " " << dense[b](i, j) << "\n";
                    }
                }
            }
        }
    }
}

}  // namespace covcert

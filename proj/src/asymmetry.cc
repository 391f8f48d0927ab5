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


#include "covcert/asymmetry.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "covcert/hermitian_program.h"

namespace covcert {

namespace {

void check_state(const ComplexMatrix &m, std::size_t dim, const std::string &what) {
    if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim)) {
        throw std::invalid_argument(what + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                                    " matrix");
    }
    if (!is_density(m)) {
        throw std::invalid_argument(what + ": not a density operator");
    }
}

void check_pure(const ComplexMatrix &m, std::size_t dim, const std::string &what) {
    check_state(m, dim, what);
    if (std::abs((m * m).trace().real() - 1.0) > 1e-9) {
        throw std::invalid_argument(what + ": target is not pure");
    }
}

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
}

}  // namespace

void ConversionQuery::validate() const {
    if (inputs.empty()) {
        throw std::invalid_argument("conversion query: no states");
    }
    if (inputs.size() != targets.size()) {
        throw std::invalid_argument("conversion query: inputs and targets differ in length");
    }
    for (std::size_t mu = 0; mu < inputs.size(); mu++) {
        check_state(inputs[mu], rep.dim_in(), "conversion query input " + std::to_string(mu));
        check_pure(targets[mu], rep.dim_out(), "conversion query target " + std::to_string(mu));
    }
    check_epsilon(epsilon);
}

ComplexMatrix twirled_pair(const ComplexMatrix &eta, const ComplexMatrix &rho, const GroupRep &rep) {
    check_state(eta, rep.dim_out(), "twirled_pair eta");
    check_state(rho, rep.dim_in(), "twirled_pair rho");
    return g_twirl(kron(ComplexMatrix(eta.transpose()), rho), rep.unitaries_out(), rep.unitaries_in());
}

double fidelity_of_distillation(const ComplexMatrix &eta, const ComplexMatrix &rho, const GroupRep &rep,
                                const MinEntropyOptions &options) {
    return hmin(twirled_pair(eta, rho, rep), rep.dim_out(), rep.dim_in(), options).phi;
}

CovariantOracleResult covariant_channel_oracle(const ComplexMatrix &eta, const ComplexMatrix &rho, const GroupRep &rep,
                                               const SdpOptions &options) {
    const std::size_t da = rep.dim_in();
    const std::size_t db = rep.dim_out();
    check_state(eta, db, "covariant_channel_oracle eta");
    check_state(rho, da, "covariant_channel_oracle rho");
    const std::size_t n = da * db;

    // Invariant subspace of C -> avg_g (conj U_g (x) V_g) C (...)^dagger in the
    // coordinates of an orthonormal Hermitian basis; constraints span the
    // orthogonal complement.
    const std::vector<ComplexMatrix> basis = hermitian_basis(n);
    const auto nb = static_cast<Eigen::Index>(basis.size());
    RealMatrix defect(nb, nb);
    for (Eigen::Index l = 0; l < nb; l++) {
        ComplexMatrix t = g_twirl(basis[static_cast<std::size_t>(l)], rep.unitaries_in(), rep.unitaries_out());
        for (Eigen::Index k = 0; k < nb; k++) {
            const double tkl = (basis[static_cast<std::size_t>(k)] * t).trace().real();
            defect(k, l) = (k == l ? 1.0 : 0.0) - tkl;
        }
    }
    Eigen::JacobiSVD<RealMatrix> svd(defect, Eigen::ComputeFullU);
    const RealVector sv = svd.singularValues();
    const double cutoff = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);

    HermitianProgram prog;
    const std::size_t block = prog.add_block(n);
    const ComplexMatrix objective = kron(ComplexMatrix(rho.transpose()), eta);
    prog.add_objective(block, -(objective + objective.adjoint()) / 2.0);
    const ComplexMatrix id_b = ComplexMatrix::Identity(static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(db));
    for (const auto &f : hermitian_basis(da)) {
        const std::size_t k = prog.add_constraint(f.trace().real());
        prog.add_term(k, block, kron(f, id_b));
    }
    for (Eigen::Index r = 0; r < sv.size() && sv(r) > cutoff; r++) {
        ComplexMatrix q = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (Eigen::Index l = 0; l < nb; l++) {
            q += svd.matrixU()(l, r) * basis[static_cast<std::size_t>(l)];
        }
        const std::size_t k = prog.add_constraint(0.0);
        prog.add_term(k, block, q);
    }
    SdpSolution sol = solve(prog.build(), options);
    require_usable(sol, "covariant channel oracle");
    return {-sol.primal_value, prog.primal_block(sol, block), stats_of(sol)};
}

bool exact_pure_conversion(const ComplexMatrix &rho, const ComplexMatrix &psi, const GroupRep &rep,
                           const MinEntropyOptions &options) {
    return approx_pure_conversion(rho, psi, rep, 0.0, options);
}

bool approx_pure_conversion(const ComplexMatrix &rho, const ComplexMatrix &psi, const GroupRep &rep, double epsilon,
                            const MinEntropyOptions &options) {
    check_epsilon(epsilon);
    check_pure(psi, rep.dim_out(), "pure conversion target");
    return fidelity_of_distillation(psi, rho, rep, options) >= 1.0 - epsilon - kConversionSlack;
}

ConversionVerdict multi_state_conversion(const ConversionQuery &query, const SdpOptions &options) {
    query.validate();
    const std::size_t da = query.rep.dim_in();
    const std::size_t db = query.rep.dim_out();
    const std::size_t count = query.inputs.size();
    std::vector<ComplexMatrix> omega;
    omega.reserve(count);
    for (std::size_t mu = 0; mu < count; mu++) {
        omega.push_back(twirled_pair(query.targets[mu], query.inputs[mu], query.rep));
    }

    // Dual (LMI) form over y = (x_k, p_1 .. p_{K-1}) with X = sum_k x_k F_k and
    // p_K = 1 - sum p. Each block reads C - sum_i y_i A_i >= 0.
    const std::vector<ComplexMatrix> fa = hermitian_basis(da);
    const ComplexMatrix id_b = ComplexMatrix::Identity(static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(db));
    HermitianProgram prog;
    const std::size_t lmi = prog.add_block(db * da);
    const std::size_t xblk = prog.add_block(da);
    prog.add_objective(lmi, -omega.back());
    std::vector<std::size_t> pos_blocks;
    for (std::size_t mu = 0; mu + 1 < count; mu++) {
        pos_blocks.push_back(prog.add_block(1, false));
    }
    std::size_t last_block = 0;
    if (count > 1) {
        last_block = prog.add_block(1, false);
        prog.add_objective(last_block, ComplexMatrix::Ones(1, 1));
    }
    std::vector<std::size_t> x_idx;
    for (const auto &f : fa) {
        const std::size_t k = prog.add_constraint(-f.trace().real());
        prog.add_term(k, lmi, -kron(id_b, f));
        prog.add_term(k, xblk, -f);
        x_idx.push_back(k);
    }
    std::vector<std::size_t> p_idx;
    for (std::size_t mu = 0; mu + 1 < count; mu++) {
        const std::size_t k = prog.add_constraint(0.0);
        prog.add_term(k, lmi, omega[mu] - omega.back());
        prog.add_term(k, pos_blocks[mu], -ComplexMatrix::Ones(1, 1));
        prog.add_term(k, last_block, ComplexMatrix::Ones(1, 1));
        p_idx.push_back(k);
    }
    SdpSolution sol = solve(prog.build(), options);
    require_usable(sol, "multi-state conversion");

    ConversionVerdict v;
    v.optimal_value = -sol.dual_value;
    v.hmin_equiv = v.optimal_value > 0.0 ? -std::log2(v.optimal_value) : INFINITY;
    v.witness_X = ComplexMatrix::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
    for (std::size_t k = 0; k < fa.size(); k++) {
        v.witness_X += sol.y[x_idx[k]] * fa[k];
    }
    double rest = 1.0;
    for (auto k : p_idx) {
        const double p = std::clamp(sol.y[k], 0.0, 1.0);
        v.witness_p.push_back(p);
        rest -= p;
    }
    v.witness_p.push_back(std::max(0.0, rest));
    v.feasible = v.optimal_value >= 1.0 - query.epsilon - kConversionSlack;
    v.stats = stats_of(sol);
    return v;
}

QuantumChannel twirl_decoder(const QuantumChannel &dec, const GroupRep &rep) {
    if (dec.in_dim() != rep.dim_in() || dec.out_dim() != rep.dim_out()) {
        throw std::invalid_argument("twirl_decoder: representation dimensions do not match the channel");
    }
    const double w = 1.0 / std::sqrt(static_cast<double>(rep.size()));
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(rep.size() * dec.kraus().size());
    for (std::size_t g = 0; g < rep.size(); g++) {
        const ComplexMatrix &u = rep.unitaries_in()[g];
        const ComplexMatrix &v = rep.unitaries_out()[g];
        for (const auto &k : dec.kraus()) {
            kraus.push_back(w * v.adjoint() * k * u);
        }
    }
    return QuantumChannel(std::move(kraus), dec.in_shape(), dec.out_shape(), dec.is_instrument());
}

}  // namespace covcert

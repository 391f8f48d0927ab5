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


#include "covcert/minentropy.h"

#include <cmath>
#include <limits>

#include "covcert/hermitian_program.h"

namespace covcert {

SolverStats stats_of(const SdpSolution &sol) {
    return {sol.status, sol.gap, sol.kkt_residual, sol.primal_infeasibility, sol.dual_infeasibility,
            sol.iterations, sol.dropped_constraints};
}

void require_usable(const SdpSolution &sol, const std::string &what) {
    if (sol.status == SdpStatus::kOptimal) {
        return;
    }
    const bool near = sol.gap <= 1e-5 && sol.primal_infeasibility <= 1e-5 && sol.dual_infeasibility <= 1e-5;
    if (sol.status == SdpStatus::kInfeasible || !near) {
        throw SolverError(what + ": solver finished with status " + to_string(sol.status) + " (gap " +
                          std::to_string(sol.gap) + ")");
    }
}

namespace {

HermitianProgram min_entropy_program(const ComplexMatrix &sigma, std::size_t dA, std::size_t dB) {
    HermitianProgram prog;
    const std::size_t y_block = prog.add_block(dA * dB);
    const std::size_t t_block = prog.add_block(dB);
    prog.add_objective(y_block, -sigma);
    const ComplexMatrix id_a = ComplexMatrix::Identity(dA, dA);
    for (const auto &f : hermitian_basis(dB)) {
        const std::size_t k = prog.add_constraint(f.trace().real());
        prog.add_term(k, y_block, kron(id_a, f));
        prog.add_term(k, t_block, f);
    }
    return prog;
}

void check_inputs(const ComplexMatrix &sigma, std::size_t dA, std::size_t dB) {
    if (dA == 0 || dB == 0 || sigma.rows() != static_cast<Eigen::Index>(dA * dB) || sigma.cols() != sigma.rows()) {
        throw std::invalid_argument("min-entropy: sigma is " + std::to_string(sigma.rows()) + "x" +
                                    std::to_string(sigma.cols()) + ", expected dimension " +
                                    std::to_string(dA * dB));
    }
    if (!is_psd(sigma)) {
        throw std::invalid_argument("min-entropy: sigma is not PSD");
    }
}

}  // namespace

SdpProblem assemble_min_entropy_program(const ComplexMatrix &sigma, std::size_t dA, std::size_t dB) {
    check_inputs(sigma, dA, dB);
    return min_entropy_program(symmetrized(sigma), dA, dB).build();
}

MinEntropyResult hmin(const ComplexMatrix &sigma_in, std::size_t dA, std::size_t dB, const MinEntropyOptions &options) {
    check_inputs(sigma_in, dA, dB);
    MinEntropyResult res;
    ComplexMatrix sigma = symmetrized(sigma_in);
    const double scale = sigma.trace().real();
    if (scale <= 1e-300 || sigma.norm() == 0.0) {
        res.hmin = std::numeric_limits<double>::infinity();
        res.phi = 0.0;
        res.witness_X = ComplexMatrix::Zero(dB, dB);
        return res;
    }
    sigma /= scale;

    // Restrict B to the support of the B marginal.
    ComplexMatrix iso = ComplexMatrix::Identity(dB, dB);
    if (options.compress) {
        ComplexMatrix sigma_b = partial_trace(sigma, DimShape{dA, dB}, {0});
        auto eig = eig_hermitian(sigma_b);
        const double top = eig.values.maxCoeff();
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < eig.values.size(); i++) {
            if (eig.values(i) > 1e-12 * top) {
                keep.push_back(i);
            }
        }
        if (keep.size() < dB) {
            iso.resize(dB, static_cast<Eigen::Index>(keep.size()));
            for (std::size_t c = 0; c < keep.size(); c++) {
                iso.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(keep[c]);
            }
        }
    }
    const auto db = static_cast<std::size_t>(iso.cols());
    ComplexMatrix lift = kron(ComplexMatrix::Identity(dA, dA), iso);
    ComplexMatrix reduced = lift.adjoint() * sigma * lift;
    reduced = (reduced + reduced.adjoint()) / 2.0;

    HermitianProgram prog = min_entropy_program(reduced, dA, db);
    SdpSolution sol = solve(prog.build(), options.sdp);
    require_usable(sol, "min-entropy");

    auto basis = hermitian_basis(db);
    ComplexMatrix x = ComplexMatrix::Zero(db, db);
    for (std::size_t k = 0; k < basis.size(); k++) {
        x -= sol.y[k] * basis[k];
    }
    x = (x + x.adjoint()) / 2.0;
    // Shift onto the feasible set: I (x) X >= sigma and X >= 0.
    ComplexMatrix slack = kron(ComplexMatrix::Identity(dA, dA), x) - reduced;
    double shift = std::max(0.0, -min_eigenvalue((slack + slack.adjoint()) / 2.0));
    shift = std::max(shift, -min_eigenvalue(x));
    x += shift * ComplexMatrix::Identity(db, db);

    ComplexMatrix witness = iso * x * iso.adjoint();
    res.witness_X = scale * (witness + witness.adjoint()) / 2.0;
    res.phi = res.witness_X.trace().real();
    res.phi_lower = -sol.primal_value * scale;
    res.hmin = -std::log2(res.phi);
    res.solver_gap = sol.gap;
    res.stats = stats_of(sol);
    return res;
}

double phi(const ComplexMatrix &sigma, std::size_t dA, std::size_t dB, const MinEntropyOptions &options) {
    return hmin(sigma, dA, dB, options).phi;
}

double phi_decompose(double lambda1, const ComplexMatrix &l, double lambda2, const ComplexMatrix &m, std::size_t dA,
                     std::size_t dB, const MinEntropyOptions &options) {
    if (lambda1 < 0.0 || lambda2 < 0.0) {
        throw std::invalid_argument("phi_decompose: coefficients must be non-negative");
    }
    if (l.rows() != static_cast<Eigen::Index>(dB) || !is_psd(l)) {
        throw std::invalid_argument("phi_decompose: L must be PSD on B");
    }
    return lambda1 * l.trace().real() + lambda2 * phi(m, dA, dB, options);
}

}  // namespace covcert

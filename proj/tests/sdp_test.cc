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

#include <cmath>
#include <sstream>

#include "covcert/hermitian_program.h"
#include "covcert/random.h"
#include "gtest/gtest.h"

using namespace covcert;

namespace {

// min x s.t. x - s = 2 with x, s >= 0 as 1x1 blocks.
SdpProblem scalar_problem() {
    SdpProblem p({1, 1});
    p.add_objective_entry(0, 0, 0, 1.0);
    auto k = p.add_constraint(2.0);
    p.add_constraint_entry(k, 0, 0, 0, 1.0);
    p.add_constraint_entry(k, 1, 0, 0, -1.0);
    return p;
}

// min tr X s.t. X - S = diag(1, 3), X, S >= 0.
SdpProblem dominating_problem() {
    SdpProblem p({2, 2});
    p.add_objective_entry(0, 0, 0, 1.0);
    p.add_objective_entry(0, 1, 1, 1.0);
    const double target[2][2] = {{1.0, 0.0}, {0.0, 3.0}};
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = i; j < 2; j++) {
            // <E_ij + E_ji, X> / 2 for off-diagonals keeps the rhs equal to the entry.
            const double w = i == j ? 1.0 : 0.5;
            auto k = p.add_constraint(target[i][j]);
            p.add_constraint_entry(k, 0, i, j, w);
            p.add_constraint_entry(k, 1, i, j, -w);
        }
    }
    return p;
}

ComplexMatrix phi_plus() {
    ComplexVector v = max_entangled_vector(2) / std::sqrt(2.0);
    return projector(v);
}

// min tr X s.t. I (x) X - S = phi+, written directly with a slack block.
HermitianProgram phi_plus_program() {
    HermitianProgram prog;
    auto xb = prog.add_block(2);
    auto sb = prog.add_block(4);
    prog.add_objective(xb, ComplexMatrix::Identity(2, 2));
    ComplexMatrix sigma = phi_plus();
    for (const auto &f : hermitian_basis(4)) {
        auto k = prog.add_constraint((f * sigma).trace().real());
        // tr(f (I (x) X)) = tr(tr_A(f) X)
        ComplexMatrix fb = partial_trace(f, DimShape{2, 2}, {0});
        prog.add_term(k, xb, fb);
        prog.add_term(k, sb, -f);
    }
    return prog;
}

double brute_force_phi_plus() {
    // Search over X = [[p, q], [conj(q), r]] on a grid; feasibility by eigenvalues.
    ComplexMatrix sigma = phi_plus();
    double best = 1e9;
    for (int ip = 0; ip <= 150; ip++) {
        for (int ir = 0; ir <= 150; ir++) {
            for (int iq = -4; iq <= 4; iq++) {
                for (int iqi = -4; iqi <= 4; iqi++) {
                    const double p = ip * 0.01 + 0.5;
                    const double r = ir * 0.01 + 0.5;
                    if (p + r >= best) {
                        continue;
                    }
                    ComplexMatrix x(2, 2);
                    x << p, Complex(iq * 0.05, iqi * 0.05), Complex(iq * 0.05, -iqi * 0.05), r;
                    ComplexMatrix slack = kron(ComplexMatrix::Identity(2, 2), x) - sigma;
                    if (min_eigenvalue(slack) >= -1e-12) {
                        best = p + r;
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace

TEST(Sdp, ScalarLowerBound) {
    SdpSolution sol = solve(scalar_problem());
    ASSERT_EQ(sol.status, SdpStatus::kOptimal);
    EXPECT_NEAR(sol.primal_value, 2.0, 1e-7);
    EXPECT_NEAR(sol.dual_value, 2.0, 1e-7);
    EXPECT_NEAR(sol.x[0](0, 0), 2.0, 1e-7);
}

TEST(Sdp, DominatingMatrix) {
    SdpSolution sol = solve(dominating_problem());
    ASSERT_EQ(sol.status, SdpStatus::kOptimal);
    EXPECT_NEAR(sol.primal_value, 4.0, 1e-7);
    EXPECT_LE(sol.gap, 1e-8);
}

TEST(Sdp, PhiPlusMatchesBruteForce) {
    HermitianProgram prog = phi_plus_program();
    SdpSolution sol = solve(prog.build());
    ASSERT_EQ(sol.status, SdpStatus::kOptimal);
    EXPECT_NEAR(sol.primal_value, 2.0, 1e-7);
    const double brute = brute_force_phi_plus();
    EXPECT_NEAR(brute, 2.0, 1e-9);
    EXPECT_NEAR(sol.primal_value, brute, 1e-6);
    ComplexMatrix x = prog.primal_block(sol, 0);
    EXPECT_NEAR(x.trace().real(), 2.0, 1e-7);
}

TEST(Sdp, OptimalStatusGuarantees) {
    for (const auto &problem : {scalar_problem(), dominating_problem(), phi_plus_program().build()}) {
        SdpOptions opts;
        SdpSolution sol = solve(problem, opts);
        ASSERT_EQ(sol.status, SdpStatus::kOptimal);
        EXPECT_LE(std::abs(sol.primal_value - sol.dual_value), opts.gap_tol * std::max(1.0, std::abs(sol.primal_value)));
        EXPECT_LE(sol.primal_infeasibility, opts.feas_tol);
        EXPECT_LE(sol.complementarity, 10 * opts.gap_tol);
        for (const auto &xb : sol.x) {
            Eigen::SelfAdjointEigenSolver<RealMatrix> e(xb, Eigen::EigenvaluesOnly);
            EXPECT_GE(e.eigenvalues()(0), -opts.feas_tol);
        }
    }
}

TEST(Sdp, WeakDualityOnFeasibleIterates) {
    SdpOptions opts;
    opts.record_trace = true;
    SdpSolution sol = solve(phi_plus_program().build(), opts);
    std::size_t checked = 0;
    for (const auto &it : sol.trace) {
        if (it.primal_infeasibility <= 1e-12 && it.dual_infeasibility <= 1e-12) {
            EXPECT_LE(it.dual_value, it.primal_value + 1e-12);
            checked++;
        }
    }
    EXPECT_GT(checked, 3u);
}

TEST(Sdp, DeterministicIterates) {
    SdpOptions opts;
    opts.record_trace = true;
    SdpSolution a = solve(phi_plus_program().build(), opts);
    SdpSolution b = solve(phi_plus_program().build(), opts);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); i++) {
        EXPECT_EQ(a.trace[i].primal_value, b.trace[i].primal_value);
        EXPECT_EQ(a.trace[i].dual_value, b.trace[i].dual_value);
    }
    EXPECT_EQ(a.primal_value, b.primal_value);
}

TEST(Sdp, DependentConstraintsDropped) {
    SdpProblem p = scalar_problem();
    auto k = p.add_constraint(4.0);
    p.add_constraint_entry(k, 0, 0, 0, 2.0);
    p.add_constraint_entry(k, 1, 0, 0, -2.0);
    SdpSolution sol = solve(p);
    EXPECT_EQ(sol.dropped_constraints, 1u);
    ASSERT_EQ(sol.status, SdpStatus::kOptimal);
    EXPECT_NEAR(sol.primal_value, 2.0, 1e-7);
}

TEST(Sdp, InconsistentConstraintsInfeasible) {
    SdpProblem p = scalar_problem();
    auto k = p.add_constraint(5.0);
    p.add_constraint_entry(k, 0, 0, 0, 2.0);
    p.add_constraint_entry(k, 1, 0, 0, -2.0);
    EXPECT_EQ(solve(p).status, SdpStatus::kInfeasible);
}

TEST(Sdp, PrimalInfeasibleDetected) {
    // x + s = -1 with x, s >= 0 has no solution.
    SdpProblem p({1, 1});
    p.add_objective_entry(0, 0, 0, 1.0);
    auto k = p.add_constraint(-1.0);
    p.add_constraint_entry(k, 0, 0, 0, 1.0);
    p.add_constraint_entry(k, 1, 0, 0, 1.0);
    SdpSolution sol = solve(p);
    EXPECT_NE(sol.status, SdpStatus::kOptimal);
}

TEST(Sdp, RejectsNonSymmetricObjective) {
    SdpProblem p({2});
    RealMatrix c(2, 2);
    c << 1, 2, 0, 1;
    p.set_objective_block(0, c);
    EXPECT_THROW(solve(p), std::invalid_argument);
}

TEST(Sdp, RandomFeasibleProgramsCloseGap) {
    // min <C, X> s.t. <A_i, X> = <A_i, X0> for a random interior X0 and C PSD + I.
    Rng rng(77);
    for (int trial = 0; trial < 10; trial++) {
        const std::size_t n = 6;
        SdpProblem p({n, 3});
        RealMatrix c = ginibre(n, n, rng).real();
        c = c * c.transpose() + RealMatrix::Identity(n, n);
        p.set_objective_block(0, c);
        p.add_objective_entry(1, 0, 0, 1.0);
        p.add_objective_entry(1, 1, 1, 1.0);
        p.add_objective_entry(1, 2, 2, 1.0);
        RealMatrix x0 = ginibre(n, n, rng).real();
        x0 = x0 * x0.transpose() + RealMatrix::Identity(n, n);
        for (int k = 0; k < 8; k++) {
            RealMatrix a = ginibre(n, n, rng).real();
            a = (a + a.transpose()).eval();
            RealMatrix a1 = ginibre(3, 3, rng).real();
            a1 = (a1 + a1.transpose()).eval();
            auto idx = p.add_constraint((a.cwiseProduct(x0)).sum() + a1.trace());
            for (std::size_t i = 0; i < n; i++) {
                for (std::size_t j = i; j < n; j++) {
                    p.add_constraint_entry(idx, 0, i, j, a(i, j));
                }
            }
            for (std::size_t i = 0; i < 3; i++) {
                for (std::size_t j = i; j < 3; j++) {
                    p.add_constraint_entry(idx, 1, i, j, a1(i, j));
                }
            }
        }
        SdpSolution sol = solve(p);
        ASSERT_EQ(sol.status, SdpStatus::kOptimal) << "trial " << trial;
        EXPECT_LE(sol.gap, 1e-8);
        EXPECT_LE(sol.kkt_residual, 1e-7);
    }
}

TEST(SdpaFormat, WritesHeaderAndEntries) {
    std::ostringstream os;
    write_sdpa_sparse(scalar_problem(), os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line.front(), '"');
    std::getline(is, line);
    EXPECT_EQ(line, "1");
    std::getline(is, line);
    EXPECT_EQ(line, "2");
    std::getline(is, line);
    EXPECT_EQ(line, "1 1");
    std::getline(is, line);
    EXPECT_EQ(line, "2");
    std::getline(is, line);
    EXPECT_EQ(line, "0 1 1 1 -1");
    std::getline(is, line);
    EXPECT_EQ(line, "1 1 1 1 1");
    std::getline(is, line);
    EXPECT_EQ(line, "1 2 1 1 -1");
}

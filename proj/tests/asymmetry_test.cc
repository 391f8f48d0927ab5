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

#include <cmath>
#include <vector>

#include "covcert/hermitian_program.h"
#include "covcert/random.h"
#include "covcert/wstate.h"
#include "gtest/gtest.h"

using namespace covcert;

namespace {

const double kPi = std::acos(-1.0);

ComplexMatrix pauli(char c) {
    ComplexMatrix m(2, 2);
    switch (c) {
        case 'x':
            m << 0, 1, 1, 0;
            break;
        case 'y':
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        case 'z':
            m << 1, 0, 0, -1;
            break;
        default:
            m = ComplexMatrix::Identity(2, 2);
    }
    return m;
}

ComplexMatrix ket(std::initializer_list<Complex> amps) {
    ComplexVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (auto a : amps) {
        v(i++) = a;
    }
    return projector(v / v.norm());
}

GroupRep z2() { return GroupRep::symmetric({"e", "z"}, {pauli('i'), pauli('z')}); }

GroupRep trivial(std::size_t da, std::size_t db) {
    return GroupRep({"e"}, {ComplexMatrix::Identity(da, da)}, {ComplexMatrix::Identity(db, db)});
}

GroupRep z3() {
    const Complex w = std::polar(1.0, 2.0 * kPi / 3.0);
    std::vector<ComplexMatrix> us;
    for (int k = 0; k < 3; k++) {
        ComplexMatrix u = ComplexMatrix::Zero(3, 3);
        for (int j = 0; j < 3; j++) {
            u(j, j) = std::pow(w, k * j);
        }
        us.push_back(u);
    }
    return GroupRep::symmetric({}, us);
}

// Two-dimensional irrep of S3: rotations by 120 degrees and reflections.
GroupRep s3() {
    ComplexMatrix r(2, 2);
    const double c = std::cos(2.0 * kPi / 3.0);
    const double s = std::sin(2.0 * kPi / 3.0);
    r << c, -s, s, c;
    ComplexMatrix f(2, 2);
    f << 1, 0, 0, -1;
    ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    return GroupRep::symmetric({}, {id, r, r * r, f, f * r, f * r * r});
}

// Independent oracle for multi-state conversion: max over covariant channels
// of the worst fidelity, max t s.t. tr[C (rho_mu^T (x) psi_mu)] >= t.
double worst_case_oracle(const ConversionQuery &q) {
    const std::size_t da = q.rep.dim_in();
    const std::size_t db = q.rep.dim_out();
    const std::size_t n = da * db;
    HermitianProgram prog;
    const std::size_t cb = prog.add_block(n);
    const std::size_t tp = prog.add_block(1, false);
    const std::size_t tm = prog.add_block(1, false);
    prog.add_objective(tp, -ComplexMatrix::Ones(1, 1));
    prog.add_objective(tm, ComplexMatrix::Ones(1, 1));
    for (std::size_t mu = 0; mu < q.inputs.size(); mu++) {
        const std::size_t slack = prog.add_block(1, false);
        const std::size_t k = prog.add_constraint(0.0);
        ComplexMatrix obj = kron(ComplexMatrix(q.inputs[mu].transpose()), q.targets[mu]);
        prog.add_term(k, cb, (obj + obj.adjoint()) / 2.0);
        prog.add_term(k, tp, -ComplexMatrix::Ones(1, 1));
        prog.add_term(k, tm, ComplexMatrix::Ones(1, 1));
        prog.add_term(k, slack, -ComplexMatrix::Ones(1, 1));
    }
    ComplexMatrix id_b = ComplexMatrix::Identity(db, db);
    for (const auto &f : hermitian_basis(da)) {
        prog.add_term(prog.add_constraint(f.trace().real()), cb, kron(f, id_b));
    }
    // Covariance: C commutes with every conj(U_g) (x) V_g.
    for (std::size_t g = 0; g < q.rep.size(); g++) {
        ComplexMatrix w = kron(ComplexMatrix(q.rep.unitaries_in()[g].conjugate()), q.rep.unitaries_out()[g]);
        for (const auto &f : hermitian_basis(n)) {
            ComplexMatrix h = w.adjoint() * f * w - f;
            h = (h + h.adjoint()) / 2.0;
            if (h.norm() > 1e-12) {
                prog.add_term(prog.add_constraint(0.0), cb, h);
            }
        }
    }
    SdpSolution sol = solve(prog.build());
    require_usable(sol, "worst-case oracle");
    return -sol.primal_value;
}

ComplexMatrix mixture(const std::vector<ComplexMatrix> &omega, const std::vector<double> &p) {
    ComplexMatrix acc = ComplexMatrix::Zero(omega[0].rows(), omega[0].cols());
    for (std::size_t i = 0; i < p.size(); i++) {
        acc += p[i] * omega[i];
    }
    return acc;
}

QuantumChannel random_channel(std::size_t din, std::size_t dout, std::size_t k, Rng &rng) {
    ComplexMatrix u = haar_unitary(dout * k, rng);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < k; i++) {
        kraus.push_back(u.block(static_cast<Eigen::Index>(i * dout), 0, static_cast<Eigen::Index>(dout),
                                static_cast<Eigen::Index>(din)));
    }
    return QuantumChannel(kraus, DimShape::single(din), DimShape::single(dout));
}

}  // namespace

TEST(AsymmetryTest, FidelityOfDistillationExamples) {
    Rng rng(1);
    ComplexMatrix psi = projector(random_pure_state(2, rng));
    EXPECT_NEAR(fidelity_of_distillation(psi, random_density(3, rng), trivial(3, 2)), 1.0, 1e-7);
    ComplexMatrix plus = ket({1, 1});
    EXPECT_NEAR(fidelity_of_distillation(plus, plus, z2()), 1.0, 1e-7);
    EXPECT_NEAR(fidelity_of_distillation(plus, ket({1, 0}), z2()), 0.5, 1e-7);
    EXPECT_THROW(fidelity_of_distillation(plus, random_density(3, rng), z2()), std::invalid_argument);
}

TEST(AsymmetryTest, OracleExamples) {
    Rng rng(2);
    ComplexMatrix psi = projector(random_pure_state(2, rng));
    EXPECT_NEAR(covariant_channel_oracle(psi, random_density(2, rng), trivial(2, 2)).value, 1.0, 1e-7);
    ComplexMatrix plus = ket({1, 1});
    EXPECT_NEAR(covariant_channel_oracle(plus, ComplexMatrix::Identity(2, 2) / 2.0, z2()).value, 0.5, 1e-7);
    CovariantOracleResult r = covariant_channel_oracle(plus, ket({1, 0}), z2());
    EXPECT_NEAR(r.value, 0.5, 1e-7);
    // The optimal Choi matrix is a covariant channel.
    const std::size_t out[] = {1};
    ComplexMatrix marginal = partial_trace(r.choi, DimShape{2, 2}, out);
    EXPECT_LT((marginal - ComplexMatrix::Identity(2, 2)).norm(), 1e-6);
    EXPECT_LT((g_twirl(r.choi, z2(), z2()) - r.choi).norm(), 1e-6);
}

TEST(AsymmetryTest, DualRouteAgreement) {
    Rng rng(3);
    std::vector<GroupRep> reps{z2(), z3(), s3()};
    // Z3 acting as diag(1, w, w^2) on A and diag(1, w) on B.
    const Complex w = std::polar(1.0, 2.0 * kPi / 3.0);
    std::vector<ComplexMatrix> in;
    std::vector<ComplexMatrix> outs;
    for (int k = 0; k < 3; k++) {
        in.push_back(z3().unitaries_in()[static_cast<std::size_t>(k)]);
        ComplexMatrix u = ComplexMatrix::Identity(2, 2);
        u(1, 1) = std::pow(w, k);
        outs.push_back(u);
    }
    reps.push_back(GroupRep({}, in, outs));
    for (const auto &rep : reps) {
        for (int trial = 0; trial < 4; trial++) {
            ComplexMatrix eta = random_density(rep.dim_out(), rng, trial % 2 == 0 ? 1 : 0);
            ComplexMatrix rho = random_density(rep.dim_in(), rng);
            const double a = fidelity_of_distillation(eta, rho, rep);
            CovariantOracleResult b = covariant_channel_oracle(eta, rho, rep);
            EXPECT_NEAR(a, b.value, 1e-6);
            EXPECT_LE(b.stats.gap, 1e-8);
        }
    }
}

TEST(AsymmetryTest, ExactConversionExamples) {
    ComplexMatrix plus = ket({1, 1});
    ComplexMatrix minus = ket({1, -1});
    EXPECT_TRUE(exact_pure_conversion(plus, plus, z2()));
    EXPECT_FALSE(exact_pure_conversion(ket({1, 0}), plus, z2()));
    EXPECT_TRUE(exact_pure_conversion(plus, minus, z2()));
    EXPECT_THROW(exact_pure_conversion(plus, ComplexMatrix::Identity(2, 2) / 2.0, z2()), std::invalid_argument);
}

TEST(AsymmetryTest, ApproximateConversionExamples) {
    Rng rng(4);
    ComplexMatrix plus = ket({1, 1});
    ComplexMatrix zero = ket({1, 0});
    EXPECT_TRUE(approx_pure_conversion(zero, plus, z2(), 1.0));
    EXPECT_TRUE(approx_pure_conversion(zero, plus, z2(), 0.5));
    EXPECT_FALSE(approx_pure_conversion(zero, plus, z2(), 0.49));
    EXPECT_TRUE(approx_pure_conversion(plus, plus, z2(), 0.0));
    EXPECT_THROW(approx_pure_conversion(zero, plus, z2(), 1.5), std::invalid_argument);
    for (int trial = 0; trial < 10; trial++) {
        ComplexMatrix rho = random_density(2, rng);
        ComplexMatrix psi = projector(random_pure_state(2, rng));
        EXPECT_EQ(approx_pure_conversion(rho, psi, z2(), 0.0), exact_pure_conversion(rho, psi, z2()));
    }
}

TEST(AsymmetryTest, PureTargetHasUnitSelfFidelity) {
    Rng rng(5);
    for (const auto &rep : {z2(), z3(), s3()}) {
        ComplexMatrix psi = projector(random_pure_state(rep.dim_in(), rng));
        EXPECT_NEAR(fidelity_of_distillation(psi, psi, rep), 1.0, 1e-8);
    }
}

TEST(AsymmetryTest, MonotoneUnderCovariantPreprocessing) {
    Rng rng(6);
    for (const auto &rep : {z2(), z3(), s3()}) {
        const std::size_t d = rep.dim_in();
        for (int trial = 0; trial < 3; trial++) {
            QuantumChannel e = twirl_decoder(random_channel(d, d, 2, rng), rep);
            ComplexMatrix eta = projector(random_pure_state(d, rng));
            ComplexMatrix rho = random_density(d, rng);
            const double before = fidelity_of_distillation(eta, rho, rep);
            const double after = fidelity_of_distillation(eta, covcert::apply(e, rho), rep);
            EXPECT_LE(after, before + 1e-7);
        }
    }
}

TEST(AsymmetryTest, MultiStateExamples) {
    ComplexMatrix zero = ket({1, 0});
    ComplexMatrix one = ket({0, 1});
    ConversionQuery keep{{zero, one}, {zero, one}, z2(), 0.0};
    ConversionVerdict v = multi_state_conversion(keep);
    EXPECT_TRUE(v.feasible);
    EXPECT_NEAR(v.optimal_value, 1.0, 1e-7);

    ConversionQuery rotate{{zero, one}, {ket({1, 1}), ket({1, -1})}, z2(), 0.5};
    ConversionVerdict r = multi_state_conversion(rotate);
    EXPECT_NEAR(r.optimal_value, 0.5, 1e-7);
    EXPECT_NEAR(r.hmin_equiv, 1.0, 1e-6);
    EXPECT_TRUE(r.feasible);
    EXPECT_NEAR(worst_case_oracle(rotate), 0.5, 1e-7);
    rotate.epsilon = 0.49;
    EXPECT_FALSE(multi_state_conversion(rotate).feasible);
    ASSERT_EQ(r.witness_p.size(), 2u);
    EXPECT_NEAR(r.witness_p[0] + r.witness_p[1], 1.0, 1e-9);
}

TEST(AsymmetryTest, MultiStateMatchesWorstCaseOracle) {
    Rng rng(7);
    for (const auto &rep : {z2(), z3(), s3()}) {
        const std::size_t d = rep.dim_in();
        ConversionQuery q{{}, {}, rep, 0.1};
        for (int mu = 0; mu < 3; mu++) {
            q.inputs.push_back(random_density(d, rng));
            q.targets.push_back(projector(random_pure_state(d, rng)));
        }
        ConversionVerdict v = multi_state_conversion(q);
        EXPECT_NEAR(v.optimal_value, worst_case_oracle(q), 1e-6);
        EXPECT_LE(v.stats.gap, 1e-8);
    }
}

TEST(AsymmetryTest, SingletonMatchesSingleStateTest) {
    Rng rng(8);
    std::uniform_real_distribution<double> eps(0.0, 0.6);
    for (int trial = 0; trial < 50; trial++) {
        const GroupRep rep = trial % 3 == 0 ? z2() : (trial % 3 == 1 ? z3() : s3());
        const std::size_t d = rep.dim_in();
        ComplexMatrix rho = random_density(d, rng);
        ComplexMatrix psi = projector(random_pure_state(d, rng));
        const double e = eps(rng);
        ConversionVerdict v = multi_state_conversion({{rho}, {psi}, rep, e});
        EXPECT_EQ(v.feasible, approx_pure_conversion(rho, psi, rep, e));
        EXPECT_NEAR(v.optimal_value, fidelity_of_distillation(psi, rho, rep), 1e-6);
    }
}

TEST(AsymmetryTest, IdenticalPairsMatchSingleton) {
    Rng rng(9);
    ComplexMatrix rho = random_density(3, rng);
    ComplexMatrix psi = projector(random_pure_state(3, rng));
    ConversionVerdict single = multi_state_conversion({{rho}, {psi}, z3(), 0.2});
    ConversionVerdict triple = multi_state_conversion({{rho, rho, rho}, {psi, psi, psi}, z3(), 0.2});
    EXPECT_EQ(single.feasible, triple.feasible);
    EXPECT_NEAR(single.optimal_value, triple.optimal_value, 1e-7);
}

TEST(AsymmetryTest, JointOptimumBelowEveryMixture) {
    Rng rng(10);
    const GroupRep rep = s3();
    ConversionQuery q{{}, {}, rep, 0.0};
    std::vector<ComplexMatrix> omega;
    for (int mu = 0; mu < 3; mu++) {
        q.inputs.push_back(random_density(2, rng));
        q.targets.push_back(projector(random_pure_state(2, rng)));
        omega.push_back(twirled_pair(q.targets.back(), q.inputs.back(), rep));
    }
    ConversionVerdict v = multi_state_conversion(q);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; trial++) {
        std::vector<double> p{u(rng), u(rng), u(rng)};
        const double total = p[0] + p[1] + p[2];
        for (auto &x : p) {
            x /= total;
        }
        EXPECT_LE(v.optimal_value, phi(mixture(omega, p), 2, 2) + 1e-7);
    }
    // The reported witness attains the optimum.
    EXPECT_NEAR(phi(mixture(omega, v.witness_p), 2, 2), v.optimal_value, 1e-6);
    ComplexMatrix slack = kron(ComplexMatrix(ComplexMatrix::Identity(2, 2)), v.witness_X) - mixture(omega, v.witness_p);
    EXPECT_GE(min_eigenvalue(slack), -1e-6);
}

TEST(AsymmetryTest, QueryValidation) {
    ComplexMatrix zero = ket({1, 0});
    EXPECT_THROW(multi_state_conversion({{}, {}, z2(), 0.0}), std::invalid_argument);
    EXPECT_THROW(multi_state_conversion({{zero}, {zero, zero}, z2(), 0.0}), std::invalid_argument);
    EXPECT_THROW(multi_state_conversion({{zero}, {ComplexMatrix::Identity(2, 2) / 2.0}, z2(), 0.0}),
                 std::invalid_argument);
    EXPECT_THROW(multi_state_conversion({{zero}, {zero}, z2(), 2.0}), std::invalid_argument);
    EXPECT_THROW(multi_state_conversion({{ket({1, 0, 0})}, {zero}, z2(), 0.0}), std::invalid_argument);
}

TEST(AsymmetryTest, TwirlFixesCovariantChannels) {
    QuantumChannel z = unitary_channel(pauli('z'), DimShape::single(2));
    QuantumChannel tz = twirl_decoder(z, z2());
    EXPECT_LT((choi_state(tz).matrix - choi_state(z).matrix).norm(), 1e-10);
    QuantumChannel dep = depolarizing_channel(3, 0.3);
    EXPECT_LT((choi_state(twirl_decoder(dep, z3())).matrix - choi_state(dep).matrix).norm(), 1e-10);
}

TEST(AsymmetryTest, TwirledChannelsAreCovariant) {
    Rng rng(11);
    for (const auto &rep : {z2(), z3(), s3()}) {
        const std::size_t d = rep.dim_in();
        QuantumChannel t = twirl_decoder(random_channel(d, d, 2, rng), rep);
        EXPECT_TRUE(is_covariant(t, rep, 1e-10).covariant);
    }
    EXPECT_THROW(twirl_decoder(random_channel(3, 3, 1, rng), z2()), std::invalid_argument);
}

TEST(AsymmetryTest, TwirledDecoderDoesNotLowerWorstFidelity) {
    // W code n = 2, d_L = 2 with the first factor erased; the dihedral group
    // {+-I, +-X, +-Z, +-XZ} acts by U on L and U (+) 1 on the surviving factor.
    Rng rng(12);
    const WCodeParams p{2, 2, 0};
    const std::size_t first[] = {0};
    QuantumChannel channel = trace_out_after(encoder(p), first);
    std::vector<ComplexMatrix> logical;
    for (double sign : {1.0, -1.0}) {
        for (const ComplexMatrix &u : {pauli('i'), pauli('x'), pauli('z'), ComplexMatrix(pauli('x') * pauli('z'))}) {
            logical.push_back(sign * u);
        }
    }
    std::vector<ComplexMatrix> physical;
    for (const auto &u : logical) {
        ComplexMatrix t = ComplexMatrix::Identity(3, 3);
        t.topLeftCorner(2, 2) = u;
        physical.push_back(t);
    }
    GroupRep rep({}, physical, logical);
    // Orbit-closed sample of 64 logical states.
    std::vector<ComplexVector> states;
    for (int s = 0; s < 8; s++) {
        ComplexVector psi = random_pure_state(2, rng);
        for (const auto &u : logical) {
            states.push_back(u * psi);
        }
    }
    auto worst = [&](const QuantumChannel &dec) {
        double lo = 1.0;
        for (const auto &psi : states) {
            ComplexMatrix out = covcert::apply(dec, apply_pure(channel, psi));
            lo = std::min(lo, psi.dot(out * psi).real());
        }
        return lo;
    };
    for (int trial = 0; trial < 5; trial++) {
        QuantumChannel dec = random_channel(3, 2, 2, rng);
        QuantumChannel twirled = twirl_decoder(dec, rep);
        EXPECT_TRUE(is_covariant(twirled, rep, 1e-10).covariant);
        EXPECT_GE(worst(twirled), worst(dec) - 1e-8);
    }
}

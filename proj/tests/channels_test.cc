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

#include <cmath>
#include <vector>

#include "covcert/random.h"
#include "gtest/gtest.h"

using namespace covcert;

namespace {

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix hadamard() {
    ComplexMatrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

ComplexMatrix phase_s() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, Complex(0, 1);
    return m;
}

ComplexMatrix plus_state() {
    ComplexVector v(2);
    v << 1, 1;
    return projector(v / std::sqrt(2.0));
}

ComplexMatrix phi_plus(std::size_t d) { return projector(max_entangled_vector(d)) / static_cast<double>(d); }

GroupRep z_rep() { return GroupRep::symmetric({"e", "z"}, {ComplexMatrix::Identity(2, 2), pauli_z()}); }

// Z4 generated by diag(1, i), acting as g (x) g on two qubits and g on one.
GroupRep z4_erasure_rep() {
    std::vector<ComplexMatrix> one;
    std::vector<ComplexMatrix> two;
    ComplexMatrix g = ComplexMatrix::Identity(2, 2);
    for (int k = 0; k < 4; k++) {
        one.push_back(g);
        two.push_back(kron(g, g));
        g = g * phase_s();
    }
    return GroupRep({}, two, one);
}

std::vector<ComplexMatrix> clifford_group() { return generate_unitary_group({hadamard(), phase_s()}); }

// Random channel from a Haar isometry split into k Kraus blocks.
QuantumChannel random_channel(std::size_t din, std::size_t dout, std::size_t k, Rng &rng) {
    ComplexMatrix u = haar_unitary(dout * k, rng);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < k; i++) {
        kraus.push_back(u.block(static_cast<Eigen::Index>(i * dout), 0, static_cast<Eigen::Index>(dout),
                                static_cast<Eigen::Index>(din)));
    }
    return QuantumChannel(kraus, DimShape::single(din), DimShape::single(dout));
}

// (1/din) sum_ab |a><b| (x) ch(|a><b|), built from matrix units.
ComplexMatrix hand_choi(const QuantumChannel &ch) {
    const std::size_t din = ch.in_dim();
    const std::size_t dout = ch.out_dim();
    ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
    for (std::size_t a = 0; a < din; a++) {
        for (std::size_t b = 0; b < din; b++) {
            ComplexMatrix eab = ComplexMatrix::Zero(din, din);
            eab(a, b) = 1.0;
            j += kron(eab, covcert::apply(ch, eab));
        }
    }
    return j / static_cast<double>(din);
}

double action_distance(const QuantumChannel &a, const QuantumChannel &b) {
    double worst = 0.0;
    const std::size_t d = a.in_dim();
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            ComplexMatrix e = ComplexMatrix::Zero(d, d);
            e(i, j) = 1.0;
            worst = std::max(worst, (covcert::apply(a, e) - covcert::apply(b, e)).norm());
        }
    }
    return worst;
}

}  // namespace

TEST(ChannelTest, RejectsIncompleteKraus) {
    EXPECT_THROW(QuantumChannel({0.5 * ComplexMatrix::Identity(2, 2)}, DimShape::single(2), DimShape::single(2)),
                 std::invalid_argument);
    EXPECT_NO_THROW(
        QuantumChannel({0.5 * ComplexMatrix::Identity(2, 2)}, DimShape::single(2), DimShape::single(2), true));
    EXPECT_THROW(QuantumChannel({ComplexMatrix::Identity(2, 2)}, DimShape::single(3), DimShape::single(2)),
                 std::invalid_argument);
}

TEST(ChannelTest, ApplyExamples) {
    Rng rng(1);
    ComplexMatrix rho = random_density(3, rng);
    EXPECT_LT((covcert::apply(identity_channel(DimShape::single(3)), rho) - rho).norm(), 1e-14);
    EXPECT_LT((covcert::apply(depolarizing_channel(3, 1.0), rho) - ComplexMatrix::Identity(3, 3) / 3.0).norm(), 1e-14);
    ComplexMatrix sigma = random_density(2, rng);
    const std::size_t erased[] = {1};
    ComplexMatrix out = covcert::apply(erasure_channel(DimShape{3, 2}, erased), kron(rho, sigma));
    EXPECT_LT((out - rho).norm(), 1e-12);
    EXPECT_THROW(covcert::apply(identity_channel(DimShape::single(2)), rho), std::invalid_argument);
}

TEST(ChannelTest, ComposeMatchesSequentialApplication) {
    Rng rng(2);
    for (int trial = 0; trial < 5; trial++) {
        QuantumChannel first = random_channel(2, 3, 2, rng);
        QuantumChannel second = random_channel(3, 2, 3, rng);
        QuantumChannel both = compose(second, first);
        ComplexMatrix rho = random_density(2, rng);
        ComplexMatrix seq = covcert::apply(second, covcert::apply(first, rho));
        EXPECT_LT((covcert::apply(both, rho) - seq).norm(), 1e-12);
        EXPECT_EQ(both.kraus().size(), 6u);
    }
    QuantumChannel e = random_channel(2, 3, 2, rng);
    EXPECT_LT(action_distance(compose(identity_channel(DimShape::single(3)), e), e), 1e-14);
    EXPECT_THROW(compose(e, e), std::invalid_argument);
}

TEST(ChannelTest, ComposeChoiMatchesDirectChoi) {
    Rng rng(3);
    QuantumChannel e = random_channel(2, 3, 2, rng);
    QuantumChannel n = random_channel(3, 3, 2, rng);
    // (id (x) N) applied to J(E) directly.
    ComplexMatrix je = choi_state(e).matrix;
    ComplexMatrix direct = ComplexMatrix::Zero(6, 6);
    for (const auto &k : n.kraus()) {
        ComplexMatrix lift = kron(ComplexMatrix(ComplexMatrix::Identity(2, 2)), k);
        direct += lift * je * lift.adjoint();
    }
    EXPECT_LT((choi_state(compose(n, e)).matrix - direct).norm(), 1e-12);
}

TEST(ChannelTest, DepolarizingComposition) {
    Rng rng(4);
    const double p = 0.3;
    const double q = 0.45;
    QuantumChannel both = compose(depolarizing_channel(3, q), depolarizing_channel(3, p));
    QuantumChannel expected = depolarizing_channel(3, 1.0 - (1.0 - p) * (1.0 - q));
    for (int trial = 0; trial < 4; trial++) {
        ComplexMatrix rho = random_density(3, rng);
        EXPECT_LT((covcert::apply(both, rho) - covcert::apply(expected, rho)).norm(), 1e-12);
    }
}

TEST(ChannelTest, ChoiExamples) {
    ChoiState id = choi_state(identity_channel(DimShape::single(2)));
    EXPECT_LT((id.matrix - phi_plus(2)).norm(), 1e-14);
    EXPECT_NEAR(id.matrix.trace().real(), 1.0, 1e-14);
    ChoiState dep = choi_state(depolarizing_channel(2, 1.0));
    EXPECT_LT((dep.matrix - ComplexMatrix::Identity(4, 4) / 4.0).norm(), 1e-14);
    QuantumChannel inst({0.5 * ComplexMatrix::Identity(2, 2)}, DimShape::single(2), DimShape::single(2), true);
    EXPECT_THROW(choi_state(inst), std::invalid_argument);
}

TEST(ChannelTest, ChoiMatchesMatrixUnitConstruction) {
    Rng rng(5);
    QuantumChannel ch = random_channel(3, 2, 3, rng);
    ChoiState j = choi_state(ch);
    EXPECT_LT((j.matrix - hand_choi(ch)).norm(), 1e-13);
    EXPECT_TRUE(is_density(j.matrix));
    const std::size_t out[] = {1};
    EXPECT_LT((partial_trace(j.matrix, DimShape{3, 2}, out) - ComplexMatrix::Identity(3, 3) / 3.0).norm(), 1e-12);
}

TEST(ChannelTest, ChoiKrausRoundTrip) {
    Rng rng(6);
    for (int trial = 0; trial < 5; trial++) {
        QuantumChannel ch = random_channel(2, 3, 1 + static_cast<std::size_t>(trial % 3), rng);
        QuantumChannel back = channel_from_choi(choi_state(ch), DimShape::single(2), DimShape::single(3));
        EXPECT_LT(action_distance(ch, back), 1e-9);
    }
}

TEST(ChannelTest, ErasureExamples) {
    const std::size_t second[] = {1};
    QuantumChannel er = erasure_channel(DimShape{2, 2}, second);
    EXPECT_LT((covcert::apply(er, phi_plus(2)) - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-14);
    EXPECT_LT((er.completeness() - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
    const std::size_t both[] = {0, 1};
    EXPECT_THROW(erasure_channel(DimShape{2, 2}, both), std::invalid_argument);
    EXPECT_THROW(erasure_channel(DimShape{2, 2}, std::span<const std::size_t>{}), std::invalid_argument);
    CovarianceCheck c = is_covariant(er, z4_erasure_rep());
    EXPECT_TRUE(c.covariant);
}

TEST(ChannelTest, ErasureCovariantUnderRandomTensorReps) {
    std::vector<ComplexMatrix> cliff = clifford_group();
    std::vector<ComplexMatrix> in;
    std::vector<ComplexMatrix> out;
    for (const auto &u : cliff) {
        in.push_back(kron(kron(u, u), u));
        out.push_back(kron(u, u));
    }
    const std::size_t last[] = {2};
    QuantumChannel er = erasure_channel(DimShape{2, 2, 2}, last);
    EXPECT_TRUE(is_covariant(er, GroupRep({}, in, out), 1e-9).covariant);
    // Different local representations on each factor.
    Rng rng(7);
    ComplexMatrix basis_change = haar_unitary(2, rng);
    std::vector<ComplexMatrix> in2;
    std::vector<ComplexMatrix> out2;
    for (const auto &u : cliff) {
        ComplexMatrix v = basis_change * u * basis_change.adjoint();
        in2.push_back(kron(kron(u, v), u));
        out2.push_back(kron(u, v));
    }
    EXPECT_TRUE(is_covariant(er, GroupRep({}, in2, out2), 1e-9).covariant);
}

TEST(ChannelTest, DepolarizingExamples) {
    Rng rng(8);
    ComplexMatrix rho = random_density(2, rng);
    EXPECT_LT((covcert::apply(depolarizing_channel(2, 0.0), rho) - rho).norm(), 1e-14);
    const double p = 0.37;
    ComplexMatrix expected = (1.0 - p) * rho + p * ComplexMatrix::Identity(2, 2) / 2.0;
    EXPECT_LT((covcert::apply(depolarizing_channel(2, p), rho) - expected).norm(), 1e-12);
    EXPECT_THROW(depolarizing_channel(2, 1.5), std::invalid_argument);
    EXPECT_THROW(depolarizing_channel(2, -0.1), std::invalid_argument);
    EXPECT_TRUE(is_covariant(depolarizing_channel(2, p), GroupRep::symmetric({}, clifford_group())).covariant);
    std::vector<ComplexMatrix> us;
    for (int k = 0; k < 3; k++) {
        us.push_back(haar_unitary(2, rng));
    }
    EXPECT_TRUE(is_covariant(depolarizing_channel(2, p), GroupRep::symmetric({}, us)).covariant);
}

TEST(ChannelTest, KnownErasureExamples) {
    Rng rng(9);
    ComplexMatrix rho = random_density(2, rng);
    ComplexMatrix sigma = random_density(3, rng);
    DimShape shape{2, 3};
    QuantumChannel none = known_erasure_channel(shape, {false, false});
    ComplexMatrix x00 = projector(basis_vector(4, 0));
    EXPECT_LT((covcert::apply(none, kron(rho, sigma)) - kron(x00, kron(rho, sigma))).norm(), 1e-14);
    QuantumChannel first = known_erasure_channel(shape, {true, false});
    ComplexMatrix x10 = projector(basis_vector(4, 2));
    ComplexMatrix expected = kron(x10, kron(projector(basis_vector(2, 0)), sigma));
    EXPECT_LT((covcert::apply(first, kron(rho, sigma)) - expected).norm(), 1e-14);
    EXPECT_LT((first.completeness() - ComplexMatrix::Identity(6, 6)).norm(), 1e-12);
    EXPECT_THROW(known_erasure_channel(shape, {true, true}), std::invalid_argument);
    EXPECT_THROW(known_erasure_channel(shape, {true}), std::invalid_argument);
}

TEST(ChannelTest, TraceOutAfterMatchesComposedErasure) {
    Rng rng(10);
    ComplexMatrix u = haar_unitary(12, rng);
    QuantumChannel ch({u.leftCols(3)}, DimShape::single(3), DimShape{2, 3, 2});
    for (std::vector<std::size_t> erased : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}}) {
        QuantumChannel fast = trace_out_after(ch, erased);
        QuantumChannel slow = compose(erasure_channel(ch.out_shape(), erased), ch);
        EXPECT_EQ(fast.out_shape(), slow.out_shape());
        EXPECT_LT((choi_state(fast).matrix - choi_state(slow).matrix).norm(), 1e-12);
    }
}

TEST(ChannelTest, CompressOutputPreservesAction) {
    Rng rng(11);
    ComplexMatrix u = haar_unitary(8, rng);
    QuantumChannel ch({u.leftCols(2)}, DimShape::single(2), DimShape::single(8));
    CompressedChannel c = compress_output(ch);
    EXPECT_EQ(c.channel.out_dim(), 2u);
    ComplexMatrix rho = random_density(2, rng);
    ComplexMatrix back = c.isometry * covcert::apply(c.channel, rho) * c.isometry.adjoint();
    EXPECT_LT((back - covcert::apply(ch, rho)).norm(), 1e-12);
}

TEST(ChannelTest, CovarianceExamples) {
    QuantumChannel h = unitary_channel(hadamard(), DimShape::single(2));
    CovarianceCheck c = is_covariant(h, z_rep());
    EXPECT_FALSE(c.covariant);
    EXPECT_GT(c.max_deviation, 0.1);
    Rng rng(12);
    QuantumChannel any = random_channel(2, 2, 3, rng);
    GroupRep trivial = GroupRep::symmetric({"e"}, {ComplexMatrix::Identity(2, 2)});
    EXPECT_TRUE(is_covariant(any, trivial).covariant);
    EXPECT_TRUE(is_covariant(unitary_channel(pauli_z(), DimShape::single(2)), z_rep()).covariant);
    GroupRep wrong_dims = GroupRep::symmetric({"e"}, {ComplexMatrix::Identity(3, 3)});
    EXPECT_THROW(is_covariant(any, wrong_dims), std::invalid_argument);
}

TEST(ChannelTest, GroupGenerationAndClosure) {
    std::vector<ComplexMatrix> cliff = clifford_group();
    EXPECT_EQ(cliff.size(), 24u);
    GroupRep rep = GroupRep::symmetric({}, cliff);
    double dev = 1.0;
    EXPECT_TRUE(rep.check_closure(1e-8, &dev));
    EXPECT_LT(dev, 1e-8);
    GroupRep broken = GroupRep::symmetric({}, {ComplexMatrix::Identity(2, 2), hadamard(), phase_s()});
    EXPECT_FALSE(broken.check_closure());
    EXPECT_EQ(z_rep().labels()[1], "z");
    EXPECT_THROW(GroupRep::symmetric({}, {ComplexMatrix::Identity(2, 2), 2.0 * pauli_z()}), std::invalid_argument);
}

TEST(ChannelTest, SampledCovarianceOfTransversalChannels) {
    Rng rng(13);
    DimShape shape = DimShape::uniform(3, 2);
    const std::size_t first[] = {0};
    QuantumChannel er = erasure_channel(shape, first);
    CovarianceCheck c = sampled_covariance(er, direct_sum_lift(shape), direct_sum_lift(DimShape::single(3)), 2, 8, rng);
    EXPECT_TRUE(c.covariant);
    QuantumChannel h = unitary_channel(kron(hadamard(), hadamard()), DimShape{2, 2});
    CovarianceCheck bad =
        sampled_covariance(h, direct_sum_lift(DimShape{2, 2}), direct_sum_lift(DimShape{2, 2}), 2, 4, rng);
    EXPECT_FALSE(bad.covariant);
}

TEST(TwirlTest, TrivialGroupLeavesOperatorUnchanged) {
    Rng rng(14);
    ComplexMatrix op = random_hermitian(6, rng);
    std::vector<ComplexMatrix> r{ComplexMatrix::Identity(2, 2)};
    std::vector<ComplexMatrix> a{ComplexMatrix::Identity(3, 3)};
    EXPECT_LT((g_twirl(op, r, a) - op).norm(), 1e-14);
}

TEST(TwirlTest, IdempotentAndInvariant) {
    Rng rng(15);
    std::vector<ComplexMatrix> cliff = clifford_group();
    ComplexMatrix op = random_hermitian(4, rng);
    ComplexMatrix once = g_twirl(op, cliff, cliff);
    EXPECT_LT((g_twirl(once, cliff, cliff) - once).norm(), 1e-12);
    for (const auto &u : cliff) {
        ComplexMatrix w = kron(ComplexMatrix(u.conjugate()), u);
        EXPECT_LT((w * once - once * w).norm(), 1e-10);
    }
}

TEST(TwirlTest, ZGroupHandSum) {
    GroupRep z = z_rep();
    ComplexMatrix rho = plus_state();
    ComplexMatrix op = kron(ComplexMatrix(rho.transpose()), rho);
    ComplexMatrix zz = kron(pauli_z(), pauli_z());
    ComplexMatrix expected = 0.5 * (op + zz * op * zz);
    EXPECT_LT((g_twirl(op, z, z) - expected).norm(), 1e-14);
    // Dephased correlated state: only |00>,|11> and |01>,|10> coherences survive.
    ComplexMatrix t = g_twirl(op, z, z);
    EXPECT_NEAR(std::abs(t(0, 3)), 0.25, 1e-14);
    EXPECT_NEAR(std::abs(t(0, 1)), 0.0, 1e-14);
}

TEST(TwirlTest, HaarPairStateQubit) {
    ComplexMatrix expected = (2.0 / 3.0) * ComplexMatrix::Identity(4, 4) / 4.0 + (1.0 / 3.0) * phi_plus(2);
    EXPECT_NEAR(haar_second_moment_lambda(2), 2.0 / 3.0, 1e-15);
    EXPECT_LT((haar_pair_twirl_state(2) - expected).norm(), 1e-14);
    for (std::size_t d = 2; d <= 4; d++) {
        ComplexMatrix s = haar_pair_twirl_state(d);
        EXPECT_NEAR(s.trace().real(), 1.0, 1e-13);
        EXPECT_TRUE(is_psd(s));
    }
    EXPECT_THROW(haar_pair_twirl_state(1), std::invalid_argument);
}

TEST(TwirlTest, HaarPairStateMatchesCliffordTwirl) {
    Rng rng(16);
    std::vector<ComplexMatrix> cliff = clifford_group();
    for (int trial = 0; trial < 4; trial++) {
        ComplexMatrix psi = projector(random_pure_state(2, rng));
        ComplexMatrix op = kron(ComplexMatrix(psi.transpose()), psi);
        EXPECT_LT((g_twirl(op, cliff, cliff) - haar_pair_twirl_state(2)).norm(), 1e-10);
    }
}

TEST(TwirlTest, HaarPairStateMatchesMonteCarlo) {
    Rng rng(17);
    for (std::size_t d : {2u, 3u}) {
        ComplexMatrix psi = projector(random_pure_state(d, rng));
        ComplexMatrix op = kron(ComplexMatrix(psi.transpose()), psi);
        ComplexMatrix acc = ComplexMatrix::Zero(d * d, d * d);
        const int samples = 512;
        for (int s = 0; s < samples; s++) {
            ComplexMatrix u = haar_unitary(d, rng);
            ComplexMatrix w = kron(ComplexMatrix(u.conjugate()), u);
            acc += w * op * w.adjoint();
        }
        acc /= samples;
        EXPECT_LT((acc - haar_pair_twirl_state(d)).cwiseAbs().maxCoeff(), 2e-2);
    }
}

TEST(TwirlTest, HaarPairTwirlIsProjection) {
    Rng rng(18);
    ComplexMatrix op = random_hermitian(9, rng);
    ComplexMatrix once = haar_pair_twirl(op, 3);
    EXPECT_LT((haar_pair_twirl(once, 3) - once).norm(), 1e-12);
    EXPECT_NEAR(once.trace().real(), op.trace().real(), 1e-12);
}

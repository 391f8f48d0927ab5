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


#include "covcert/certifier.h"

#include <algorithm>
#include <cmath>

#include "covcert/hermitian_program.h"

namespace covcert {

std::string to_string(Verdict v) {
    return v == Verdict::kCorrectable ? "correctable" : "not_correctable";
}

std::string to_string(CovarianceStatus s) {
    switch (s) {
        case CovarianceStatus::kAsserted:
            return "asserted";
        case CovarianceStatus::kSampledPass:
            return "sampled-pass";
        case CovarianceStatus::kSampledFail:
            return "sampled-fail";
    }
    return "unknown";
}

CertReport make_report(double phi, std::size_t d_L, std::optional<double> epsilon) {
    if (d_L < 2) {
        throw std::invalid_argument("certifier: logical dimension must be at least 2");
    }
    if (epsilon && !(*epsilon >= 0.0 && *epsilon <= 1.0)) {
        throw std::invalid_argument("certifier: epsilon must lie in [0, 1]");
    }
    const double d = static_cast<double>(d_L);
    CertReport r;
    r.phi = phi;
    r.hmin_bits = phi > 0.0 ? -std::log2(phi) : std::numeric_limits<double>::infinity();
    r.d_L = d_L;
    r.c = (d + 1.0) / d;
    r.epsilon_min = std::clamp((d - phi) / (d + 1.0), 0.0, d / (d + 1.0));
    if (epsilon) {
        r.epsilon_query = epsilon;
        const double required = d * (1.0 - r.c * *epsilon);
        if (required > 0.0) {
            r.threshold_bits = -std::log2(required);
        }
        r.verdict = phi >= required - kVerdictSlack ? Verdict::kCorrectable : Verdict::kNotCorrectable;
    }
    return r;
}

MinEntropyResult channel_min_entropy(const QuantumChannel &channel, const MinEntropyOptions &options) {
    CompressedChannel compressed = compress_output(channel);
    ChoiState j = choi_state(compressed.channel);
    return hmin(j.matrix, j.in_dim, j.out_dim, options);
}

namespace {

void check_composable(const QuantumChannel &encoder, const QuantumChannel &noise) {
    if (encoder.out_dim() != noise.in_dim()) {
        throw std::invalid_argument("certifier: encoder outputs dimension " + std::to_string(encoder.out_dim()) +
                                    " but noise expects " + std::to_string(noise.in_dim()));
    }
    if (encoder.in_dim() < 2) {
        throw std::invalid_argument("certifier: logical dimension must be at least 2");
    }
}

double verify_sampled(const QuantumChannel &ch, std::size_t d_L, std::size_t samples, Rng &rng, const char *what) {
    CovarianceCheck check = sampled_covariance(ch, direct_sum_lift(ch.in_shape()), direct_sum_lift(ch.out_shape()), d_L,
                                               samples, rng, 1e-8);
    if (!check.covariant) {
        throw CovarianceError(std::string("sampled covariance check failed for the ") + what + " (deviation " +
                              std::to_string(check.max_deviation) + ")");
    }
    return check.max_deviation;
}

CertReport certify_composed(const QuantumChannel &composed, std::optional<double> epsilon,
                            const CertifyOptions &options) {
    const std::size_t d_L = composed.in_dim();
    if (epsilon && !(*epsilon >= 0.0 && *epsilon <= 1.0)) {
        throw std::invalid_argument("certifier: epsilon must lie in [0, 1]");
    }
    MinEntropyResult me = channel_min_entropy(composed, options.minentropy);
    CertReport r = make_report(me.phi, d_L, epsilon);
    r.solver = me.stats;
    return r;
}

}  // namespace

CertReport certify(const QuantumChannel &encoder, const QuantumChannel &noise, std::optional<double> epsilon,
                   const CertifyOptions &options) {
    check_composable(encoder, noise);
    QuantumChannel composed = compose(noise, encoder);
    double deviation = 0.0;
    if (options.verify_covariance > 0) {
        Rng rng(options.seed);
        const std::size_t d_L = encoder.in_dim();
        deviation = std::max(deviation, verify_sampled(encoder, d_L, options.verify_covariance, rng, "encoder"));
        deviation = std::max(deviation, verify_sampled(noise, d_L, options.verify_covariance, rng, "noise"));
        deviation = std::max(deviation, verify_sampled(composed, d_L, options.verify_covariance, rng, "composed channel"));
    }
    CertReport r = certify_composed(composed, epsilon, options);
    if (options.verify_covariance > 0) {
        r.covariance_check = CovarianceStatus::kSampledPass;
        r.covariance_deviation = deviation;
    }
    return r;
}

double epsilon_min(const QuantumChannel &encoder, const QuantumChannel &noise, const CertifyOptions &options) {
    return certify(encoder, noise, std::nullopt, options).epsilon_min;
}

CertReport certify_erasure_transversal(const QuantumChannel &encoder, std::span<const std::size_t> erased,
                                       std::optional<double> epsilon, const CertifyOptions &options) {
    if (erased.empty() || erased.size() >= encoder.out_shape().size()) {
        throw std::invalid_argument("certifier: erased set must be a non-empty proper subset of the output factors");
    }
    if (encoder.in_dim() < 2) {
        throw std::invalid_argument("certifier: logical dimension must be at least 2");
    }
    QuantumChannel composed = trace_out_after(encoder, erased);
    double deviation = 0.0;
    if (options.verify_covariance > 0) {
        Rng rng(options.seed);
        const std::size_t d_L = encoder.in_dim();
        deviation = std::max(deviation, verify_sampled(encoder, d_L, options.verify_covariance, rng, "encoder"));
        deviation = std::max(deviation, verify_sampled(composed, d_L, options.verify_covariance, rng, "composed channel"));
    }
    CertReport r = certify_composed(composed, epsilon, options);
    r.erased.assign(erased.begin(), erased.end());
    if (options.verify_covariance > 0) {
        r.covariance_check = CovarianceStatus::kSampledPass;
        r.covariance_deviation = deviation;
    }
    return r;
}

double exact_ek_gap(const QuantumChannel &encoder, std::span<const std::size_t> erased, const CertifyOptions &options) {
    CertReport r = certify_erasure_transversal(encoder, erased, std::nullopt, options);
    const double gap = r.hmin_bits + std::log2(static_cast<double>(r.d_L));
    return gap < 0.0 && gap > -1e-6 ? 0.0 : gap;
}

OracleResult decoder_choi_oracle(const QuantumChannel &encoder, const QuantumChannel &noise,
                                 const SdpOptions &options) {
    check_composable(encoder, noise);
    CompressedChannel compressed = compress_output(compose(noise, encoder));
    ChoiState j = choi_state(compressed.channel);
    const std::size_t dl = j.in_dim;
    const std::size_t dp = j.out_dim;
    // Objective: tr(C K) with K[(b, j), (a, i)] = J[(i, a), (j, b)] / d_L, C the
    // decoder Choi matrix on P' (x) L.
    ComplexMatrix k(dp * dl, dp * dl);
    for (std::size_t i = 0; i < dl; i++) {
        for (std::size_t a = 0; a < dp; a++) {
            for (std::size_t jj = 0; jj < dl; jj++) {
                for (std::size_t b = 0; b < dp; b++) {
                    k(b * dl + jj, a * dl + i) = j.matrix(i * dp + a, jj * dp + b) / static_cast<double>(dl);
                }
            }
        }
    }
    HermitianProgram prog;
    const std::size_t block = prog.add_block(dp * dl);
    prog.add_objective(block, -(k + k.adjoint()) / 2.0);
    const ComplexMatrix id_l = ComplexMatrix::Identity(dl, dl);
    for (const auto &f : hermitian_basis(dp)) {
        const std::size_t c = prog.add_constraint(f.trace().real());
        prog.add_term(c, block, kron(f, id_l));
    }
    SdpSolution sol = solve(prog.build(), options);
    require_usable(sol, "decoder oracle");
    return {-sol.primal_value, stats_of(sol)};
}

}  // namespace covcert

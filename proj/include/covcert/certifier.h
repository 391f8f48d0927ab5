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


#ifndef COVCERT_CERTIFIER_H
#define COVCERT_CERTIFIER_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "covcert/channels.h"
#include "covcert/minentropy.h"

namespace covcert {

/// Raised when sampled verification finds the covariance hypothesis violated.
class CovarianceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Slack applied to every verdict, in Phi-space.
inline constexpr double kVerdictSlack = 1e-7;

enum class Verdict { kCorrectable, kNotCorrectable };
enum class CovarianceStatus { kAsserted, kSampledPass, kSampledFail };

std::string to_string(Verdict v);
std::string to_string(CovarianceStatus s);

struct CertifyOptions {
    MinEntropyOptions minentropy;
    /// Number of sampled unitaries for the covariance spot check; 0 trusts the caller.
    std::size_t verify_covariance = 0;
    std::uint64_t seed = 0;
};

struct CertReport {
    double hmin_bits = 0.0;
    double phi = 0.0;
    std::size_t d_L = 0;
    /// (d_L + 1) / d_L.
    double c = 0.0;
    /// (d_L - phi) / (d_L + 1).
    double epsilon_min = 0.0;
    std::optional<double> epsilon_query;
    /// -log2(d_L (1 - c epsilon)); absent without a query or when c epsilon >= 1.
    std::optional<double> threshold_bits;
    std::optional<Verdict> verdict;
    CovarianceStatus covariance_check = CovarianceStatus::kAsserted;
    double covariance_deviation = 0.0;
    /// "sdp" or "analytic".
    std::string path = "sdp";
    /// Erased factors (0-based) when the noise is an erasure.
    std::vector<std::size_t> erased;
    std::optional<SolverStats> solver;
};

/// Builds a report from a known value of Phi, filling in epsilon_min, the
/// threshold and the verdict.
CertReport make_report(double phi, std::size_t d_L, std::optional<double> epsilon);

/// Decides epsilon-correctability of a U(d_L)-covariant encoder under covariant
/// noise from Phi(L|P') of the Choi state of noise o encoder.
CertReport certify(const QuantumChannel &encoder, const QuantumChannel &noise, std::optional<double> epsilon,
                   const CertifyOptions &options = {});

/// (d_L - Phi) / (d_L + 1) for the composed channel.
double epsilon_min(const QuantumChannel &encoder, const QuantumChannel &noise, const CertifyOptions &options = {});

/// certify() with the noise given as erasure of the listed output factors.
CertReport certify_erasure_transversal(const QuantumChannel &encoder, std::span<const std::size_t> erased,
                                       std::optional<double> epsilon, const CertifyOptions &options = {});

/// H_min(L|P') + log2(d_L) in bits for erasure of the listed factors; zero
/// exactly when the code corrects the erasure perfectly.
double exact_ek_gap(const QuantumChannel &encoder, std::span<const std::size_t> erased,
                    const CertifyOptions &options = {});

struct OracleResult {
    double value = 0.0;
    SolverStats stats;
};

/// Maximal <phi+| (id (x) D)(J) |phi+> over all decoders D, with J the Choi
/// state of noise o encoder, found by an SDP over decoder Choi matrices.
OracleResult decoder_choi_oracle(const QuantumChannel &encoder, const QuantumChannel &noise,
                                 const SdpOptions &options = {});

/// Phi(L|P') of the Choi state of a channel (output compressed to the Kraus span).
MinEntropyResult channel_min_entropy(const QuantumChannel &channel, const MinEntropyOptions &options = {});

}  // namespace covcert

#endif

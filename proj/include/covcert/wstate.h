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


#ifndef COVCERT_WSTATE_H
#define COVCERT_WSTATE_H

#include <optional>
#include <vector>

#include "covcert/channels.h"

namespace covcert {

/// W-state code: d_L-dimensional logical system spread over n physical
/// (d_L + 1)-dimensional subsystems, N_e of which are erased.
struct WCodeParams {
    std::size_t n = 1;
    std::size_t d_L = 2;
    std::size_t N_e = 0;

    /// Throws std::invalid_argument unless n >= 1, d_L >= 2 and N_e < n.
    void validate() const;
    std::size_t phys_dim() const { return d_L + 1; }
    DimShape physical_shape() const { return DimShape::uniform(d_L + 1, n); }
};

/// Dense path cap on physical amplitudes.
inline constexpr std::size_t kDenseAmplitudeCap = 4096;
/// Cap for the structured state-vector simulation.
inline constexpr std::size_t kStructuredAmplitudeCap = std::size_t{1} << 20;

/// |i^(n)> = n^{-1/2} sum_k |d ... d i d ... d> with i at position k.
ComplexVector codeword(std::size_t i, const WCodeParams &params);

/// Isometry V = sum_i |i^(n)><i| as a single-Kraus channel.
QuantumChannel encoder(const WCodeParams &params);

/// Choi state of the encoder followed by erasure of the first N_e factors,
/// built by erasing one factor at a time: each erasure of a factor of an
/// m-factor code block moves weight 1/m of the code part onto I_L/d_L (x) |d..d><d..d|.
ChoiState choi_after_erasure_recursive(const WCodeParams &params);

/// Closed-form Phi(L|P') after erasing N_e factors: N_e/(d_L n) + (1 - N_e/n) d_L.
double analytic_phi(const WCodeParams &params);
/// (N_e / n)(1 - 1/d_L).
double analytic_epsilon_min(const WCodeParams &params);
/// Limit d_L -> infinity: N_e / n.
double analytic_epsilon_min_unbounded(std::size_t n, std::size_t N_e);

enum class CompletionPolicy { kResetToZero, kNone };
enum class WeightFamily { kExact, kUpTo };

struct DecoderOptions {
    CompletionPolicy completion = CompletionPolicy::kResetToZero;
    WeightFamily weights = WeightFamily::kExact;
};

/// Input dimension cap for the dense decoder.
inline constexpr std::size_t kDenseDecoderCap = 2048;

/// Known-erasure decoder from X (x) P to L. For every pattern s in the weight
/// family and every basis state j of the erased factors, the Kraus operator
/// <s|_X <j|_{P_s} (x) V^(n-|s|)^dagger. With reset completion, the rest of the
/// input space is sent to |0>_L by rank-one Kraus operators.
QuantumChannel decoder(const WCodeParams &params, const DecoderOptions &options = {});

/// Bitstring with ones at the given positions.
std::vector<bool> erasure_pattern(std::size_t n, std::span<const std::size_t> erased);

struct SimulationResult {
    /// Output of the completed (trace-preserving) decoder.
    ComplexMatrix decoded;
    /// F(decoded, psi).
    double fidelity = 0.0;
    /// Output of the decoder Kraus operators without the completion.
    ComplexMatrix recovered;
    /// <psi| recovered |psi>.
    double recovered_fidelity = 0.0;
    /// Weight routed to |0>_L by the completion.
    double completion_weight = 0.0;
};

/// Encodes psi, applies known erasure with pattern s and decodes. Uses sparse
/// codeword structure, so it runs up to kStructuredAmplitudeCap amplitudes.
SimulationResult simulate_known_erasure(const ComplexVector &psi, const WCodeParams &params, const std::vector<bool> &s);

/// The same pipeline with dense channels (encoder, known_erasure_channel,
/// decoder); limited by kDenseDecoderCap.
SimulationResult simulate_known_erasure_dense(const ComplexVector &psi, const WCodeParams &params,
                                              const std::vector<bool> &s);

struct SweepRow {
    std::size_t n;
    std::size_t N_e;
    /// Logical dimension, or nullopt for the d_L -> infinity limit.
    std::optional<std::size_t> d_L;
    double epsilon_min;
    double faist_bound;
};

/// Rows for every n in n_values and N_e in ne_values with N_e < n, ordered by
/// (N_e, n). faist_bound = (sqrt 2 + d_L)/sqrt n, with d_L = 2 for the
/// unbounded rows. Computed by `threads` workers (0 = hardware concurrency).
std::vector<SweepRow> sweep_fig2(const std::vector<std::size_t> &n_values, const std::vector<std::size_t> &ne_values,
                                 std::optional<std::size_t> d_L, std::size_t threads = 0);

}  // namespace covcert

#endif

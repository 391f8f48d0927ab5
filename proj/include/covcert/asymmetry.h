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


#ifndef COVCERT_ASYMMETRY_H
#define COVCERT_ASYMMETRY_H

#include <vector>

#include "covcert/channels.h"
#include "covcert/minentropy.h"

namespace covcert {

/// Conversion task {rho_mu -> psi_mu} under free operations of a finite group.
/// The representation acts on A through unitaries_in and on B through
/// unitaries_out.
struct ConversionQuery {
    std::vector<ComplexMatrix> inputs;
    std::vector<ComplexMatrix> targets;
    GroupRep rep;
    double epsilon = 0.0;

    /// Throws std::invalid_argument on empty or mismatched lists, non-state
    /// inputs, non-pure targets, dimension mismatches or epsilon outside [0, 1].
    void validate() const;
};

struct ConversionVerdict {
    bool feasible = false;
    /// min over p of Phi(B|A) of the mixed twirled operator.
    double optimal_value = 0.0;
    /// -log2(optimal_value).
    double hmin_equiv = 0.0;
    std::vector<double> witness_p;
    ComplexMatrix witness_X;
    SolverStats stats;
};

/// Slack applied to conversion verdicts.
inline constexpr double kConversionSlack = 1e-7;

/// Twirl of eta^T (x) rho over the group, ordered B (x) A.
ComplexMatrix twirled_pair(const ComplexMatrix &eta, const ComplexMatrix &rho, const GroupRep &rep);

/// Maximal overlap with eta reachable from rho by covariant channels, computed
/// as 2^{-H_min(B|A)} of twirled_pair(eta, rho).
double fidelity_of_distillation(const ComplexMatrix &eta, const ComplexMatrix &rho, const GroupRep &rep,
                                const MinEntropyOptions &options = {});

struct CovariantOracleResult {
    double value = 0.0;
    /// Choi matrix (unnormalized, tr_B C = I_A) of an optimal channel.
    ComplexMatrix choi;
    SolverStats stats;
};

/// max tr[eta E(rho)] over covariant channels E, solved directly over Choi
/// matrices restricted to the twirl-invariant subspace.
CovariantOracleResult covariant_channel_oracle(const ComplexMatrix &eta, const ComplexMatrix &rho, const GroupRep &rep,
                                               const SdpOptions &options = {});

/// True iff rho converts exactly to the pure state psi.
bool exact_pure_conversion(const ComplexMatrix &rho, const ComplexMatrix &psi, const GroupRep &rep,
                           const MinEntropyOptions &options = {});

/// True iff rho converts to psi within fidelity error epsilon.
bool approx_pure_conversion(const ComplexMatrix &rho, const ComplexMatrix &psi, const GroupRep &rep, double epsilon,
                            const MinEntropyOptions &options = {});

/// Joint program over X and the probability simplex:
/// min tr X  s.t.  I_B (x) X >= sum_mu p_mu twirled_pair(psi_mu, rho_mu), X >= 0.
ConversionVerdict multi_state_conversion(const ConversionQuery &query, const SdpOptions &options = {});

/// Group average |G|^{-1} sum_g V_g^dagger o dec o U_g, with U on the decoder
/// input (unitaries_in) and V on its output (unitaries_out).
QuantumChannel twirl_decoder(const QuantumChannel &dec, const GroupRep &rep);

}  // namespace covcert

#endif

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


#ifndef COVCERT_MINENTROPY_H
#define COVCERT_MINENTROPY_H

#include <stdexcept>
#include <string>

#include "covcert/linalg.h"
#include "covcert/sdp.h"

namespace covcert {

/// Raised when an SDP does not reach a usable solution.
class SolverError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Solver diagnostics carried alongside computed values.
struct SolverStats {
    SdpStatus status = SdpStatus::kOptimal;
    double gap = 0.0;
    double kkt_residual = 0.0;
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;
    std::size_t iterations = 0;
    std::size_t dropped_constraints = 0;
};

SolverStats stats_of(const SdpSolution &sol);

/// Throws SolverError unless the solution is optimal or within loose
/// tolerances of optimality (1e-5).
void require_usable(const SdpSolution &sol, const std::string &what);

struct MinEntropyOptions {
    SdpOptions sdp;
    /// Restrict B to the support of tr_A(sigma) before solving.
    bool compress = true;
};

struct MinEntropyResult {
    /// -log2(phi), in bits; +infinity for sigma = 0.
    double hmin = 0.0;
    /// min tr X subject to I_A (x) X >= sigma.
    double phi = 0.0;
    /// Lower bound on phi from the primal iterate.
    double phi_lower = 0.0;
    /// Feasible witness with tr X = phi.
    ComplexMatrix witness_X;
    double solver_gap = 0.0;
    SolverStats stats;
};

/// The standard-form program whose optimum is -Phi(A|B)(sigma).
///
/// Primal blocks: Y on A (x) B and T on B (complex, embedded), with
/// tr_A(Y) + T = I_B imposed on each element F_k of hermitian_basis(dB) and
/// objective -tr(sigma Y). The dual slack blocks are then I (x) X - sigma and X
/// with X = -sum_k y_k F_k, so the dual value is -tr X.
SdpProblem assemble_min_entropy_program(const ComplexMatrix &sigma, std::size_t dA, std::size_t dB);

/// Conditional min-entropy H_min(A|B) of a PSD operator (not necessarily
/// normalized) on A (x) B.
MinEntropyResult hmin(const ComplexMatrix &sigma, std::size_t dA, std::size_t dB, const MinEntropyOptions &options = {});

/// Phi(A|B)(sigma) = 2^{-H_min}.
double phi(const ComplexMatrix &sigma, std::size_t dA, std::size_t dB, const MinEntropyOptions &options = {});

/// lambda1 tr(L) + lambda2 Phi(M), the value of Phi on lambda1 I (x) L + lambda2 M.
double phi_decompose(double lambda1, const ComplexMatrix &l, double lambda2, const ComplexMatrix &m, std::size_t dA,
                     std::size_t dB, const MinEntropyOptions &options = {});

}  // namespace covcert

#endif

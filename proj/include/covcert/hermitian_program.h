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


#ifndef COVCERT_HERMITIAN_PROGRAM_H
#define COVCERT_HERMITIAN_PROGRAM_H

#include <vector>

#include "covcert/linalg.h"
#include "covcert/sdp.h"

namespace covcert {

/// Builder for standard-form programs over complex Hermitian (or real
/// symmetric) PSD blocks. A complex block of size n becomes a real block of
/// size 2n holding embed_complex_as_real(X); every data matrix H enters as
/// embed(H)/2 so that inner products equal tr(H X).
class HermitianProgram {
   public:
    /// Adds a PSD variable block and returns its index.
    std::size_t add_block(std::size_t n, bool complex = true);
    /// Adds an equality constraint sum_b tr(H_b X_b) = rhs and returns its index.
    std::size_t add_constraint(double rhs);
    /// Adds tr(h X_block) to constraint k. h must be Hermitian.
    void add_term(std::size_t k, std::size_t block, const ComplexMatrix &h);
    /// Adds tr(h X_block) to the minimized objective.
    void add_objective(std::size_t block, const ComplexMatrix &h);

    std::size_t num_constraints() const { return rhs_.size(); }
    std::size_t block_size(std::size_t block) const { return sizes_.at(block); }

    SdpProblem build() const;

    /// Complex (or real) matrix of a primal block of a solution.
    ComplexMatrix primal_block(const SdpSolution &sol, std::size_t block) const;
    /// Complex (or real) matrix of a dual slack block of a solution.
    ComplexMatrix dual_block(const SdpSolution &sol, std::size_t block) const;

   private:
    struct Term {
        std::size_t block;
        ComplexMatrix h;
    };
    ComplexMatrix extract(const RealMatrix &m, std::size_t block) const;
    void append_entries(SdpProblem &p, std::size_t block, const ComplexMatrix &h, long constraint) const;

    std::vector<std::size_t> sizes_;
    std::vector<bool> complex_;
    std::vector<double> rhs_;
    std::vector<std::vector<Term>> terms_;
    std::vector<Term> objective_;
};

}  // namespace covcert

#endif

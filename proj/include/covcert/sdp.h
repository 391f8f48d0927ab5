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


#ifndef COVCERT_SDP_H
#define COVCERT_SDP_H

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "covcert/linalg.h"

namespace covcert {

/// One upper-triangle entry of a symmetric block matrix. An off-diagonal entry
/// (row < col) stands for both (row, col) and (col, row).
struct SymEntry {
    std::size_t block;
    std::size_t row;
    std::size_t col;
    double value;
};

/// <A, X> = rhs with A stored sparsely.
struct SdpConstraint {
    std::vector<SymEntry> entries;
    double rhs = 0.0;
};

/// minimize <C, X> subject to <A_i, X> = b_i, X block diagonal and PSD.
///
/// The dual is maximize b^T y subject to Z = C - sum_i y_i A_i PSD.
class SdpProblem {
   public:
    explicit SdpProblem(std::vector<std::size_t> block_sizes);

    const std::vector<std::size_t> &block_sizes() const { return block_sizes_; }
    std::size_t num_blocks() const { return block_sizes_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }
    const std::vector<RealMatrix> &objective() const { return objective_; }
    const std::vector<SdpConstraint> &constraints() const { return constraints_; }

    /// Adds value to C(row, col) and C(col, row) (once on the diagonal).
    void add_objective_entry(std::size_t block, std::size_t row, std::size_t col, double value);
    void set_objective_block(std::size_t block, const RealMatrix &c);

    /// Returns the index of a new constraint with the given right-hand side.
    std::size_t add_constraint(double rhs);
    /// Adds value to A_k(row, col) and A_k(col, row).
    void add_constraint_entry(std::size_t k, std::size_t block, std::size_t row, std::size_t col, double value);

    /// Dense form of constraint k, block by block.
    std::vector<RealMatrix> constraint_matrix(std::size_t k) const;

    /// Throws std::invalid_argument when a matrix is not symmetric within 1e-10.
    void validate() const;

   private:
    void check_index(std::size_t block, std::size_t row, std::size_t col) const;

    std::vector<std::size_t> block_sizes_;
    std::vector<RealMatrix> objective_;
    std::vector<SdpConstraint> constraints_;
};

enum class SdpStatus { kOptimal, kMaxIter, kInfeasible, kNumericalError };

std::string to_string(SdpStatus status);

struct SdpOptions {
    double gap_tol = 1e-8;
    double feas_tol = 1e-8;
    std::size_t max_iter = 100;
    double step_fraction = 0.98;
    /// Scale of the starting point X = Z = tau I. 0 selects a scale from the data.
    double initial_scale = 0.0;
    /// Record per-iterate objective values and residuals.
    bool record_trace = false;
};

struct SdpIterate {
    double primal_value;
    double dual_value;
    double primal_infeasibility;
    double dual_infeasibility;
};

struct SdpSolution {
    std::vector<RealMatrix> x;
    std::vector<double> y;
    std::vector<RealMatrix> z;
    double primal_value = 0.0;
    double dual_value = 0.0;
    /// |primal - dual| / max(1, |primal|).
    double gap = 0.0;
    /// ||b - A(X)|| / (1 + ||b||).
    double primal_infeasibility = 0.0;
    /// ||C - A*(y) - Z|| / (1 + ||C||).
    double dual_infeasibility = 0.0;
    /// X . Z = tr(X Z), which equals the duality gap at feasible points.
    double complementarity = 0.0;
    /// max(primal_infeasibility, dual_infeasibility,
    ///     complementarity / (1 + |primal| + |dual|)).
    double kkt_residual = 0.0;
    std::size_t iterations = 0;
    SdpStatus status = SdpStatus::kMaxIter;
    std::size_t dropped_constraints = 0;
    std::vector<SdpIterate> trace;
};

/// Primal-dual path-following interior point method with Nesterov-Todd
/// scaling and Mehrotra predictor-corrector steps, starting from an infeasible
/// point. Linearly dependent constraints are removed first when consistent.
SdpSolution solve(const SdpProblem &problem, const SdpOptions &options = {});

/// Result of removing linearly dependent constraints.
struct ReducedConstraints {
    std::vector<std::size_t> kept;  // indices into the original constraint list
    bool consistent = true;         // false when a dependent row has a conflicting rhs
};

ReducedConstraints reduce_dependent_constraints(const SdpProblem &problem, double rel_tol = 1e-10);

/// Writes the problem in SDPA sparse format. Our minimization is SDPA's dual
/// problem with F0 = -C, F_i = A_i and c_i = b_i, so SDPA's objective values are
/// the negatives of ours.
void write_sdpa_sparse(const SdpProblem &problem, std::ostream &out);

}  // namespace covcert

#endif

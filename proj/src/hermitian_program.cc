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


#include "covcert/hermitian_program.h"

#include <stdexcept>

namespace covcert {

std::size_t HermitianProgram::add_block(std::size_t n, bool complex) {
    if (n == 0) {
        throw std::invalid_argument("HermitianProgram: empty block");
    }
    sizes_.push_back(n);
    complex_.push_back(complex);
    return sizes_.size() - 1;
}

std::size_t HermitianProgram::add_constraint(double rhs) {
    rhs_.push_back(rhs);
    terms_.emplace_back();
    return rhs_.size() - 1;
}

void HermitianProgram::add_term(std::size_t k, std::size_t block, const ComplexMatrix &h) {
    if (k >= rhs_.size() || block >= sizes_.size()) {
        throw std::invalid_argument("HermitianProgram: index out of range");
    }
    if (h.rows() != static_cast<Eigen::Index>(sizes_[block]) || !is_hermitian(h, 1e-10)) {
        throw std::invalid_argument("HermitianProgram: term must be Hermitian of the block size");
    }
    terms_[k].push_back({block, (h + h.adjoint()) / 2.0});
}

void HermitianProgram::add_objective(std::size_t block, const ComplexMatrix &h) {
    if (block >= sizes_.size()) {
        throw std::invalid_argument("HermitianProgram: index out of range");
    }
    if (h.rows() != static_cast<Eigen::Index>(sizes_[block]) || !is_hermitian(h, 1e-10)) {
        throw std::invalid_argument("HermitianProgram: objective must be Hermitian of the block size");
    }
    objective_.push_back({block, (h + h.adjoint()) / 2.0});
}

void HermitianProgram::append_entries(SdpProblem &p, std::size_t block, const ComplexMatrix &h,
                                      long constraint) const {
    auto put = [&](std::size_t r, std::size_t c, double v) {
        if (v == 0.0) {
            return;
        }
        if (constraint < 0) {
            p.add_objective_entry(block, r, c, v);
        } else {
            p.add_constraint_entry(static_cast<std::size_t>(constraint), block, r, c, v);
        }
    };
    const std::size_t n = sizes_[block];
    if (!complex_[block]) {
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = i; j < n; j++) {
                put(i, j, h(i, j).real());
            }
        }
        return;
    }
    // embed(h)/2 = [[Re, -Im], [Im, Re]] / 2, upper triangle only.
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i; j < n; j++) {
            const double re = h(i, j).real() / 2.0;
            put(i, j, re);
            put(n + i, n + j, re);
        }
        for (std::size_t j = 0; j < n; j++) {
            // Row i, column n + j holds -Im h(i, j) / 2.
            put(i, n + j, -h(i, j).imag() / 2.0);
        }
    }
}

SdpProblem HermitianProgram::build() const {
    std::vector<std::size_t> real_sizes;
    for (std::size_t b = 0; b < sizes_.size(); b++) {
        real_sizes.push_back(complex_[b] ? 2 * sizes_[b] : sizes_[b]);
    }
    SdpProblem p(real_sizes);
    for (const auto &t : objective_) {
        append_entries(p, t.block, t.h, -1);
    }
    for (std::size_t k = 0; k < rhs_.size(); k++) {
        const std::size_t idx = p.add_constraint(rhs_[k]);
        for (const auto &t : terms_[k]) {
            append_entries(p, t.block, t.h, static_cast<long>(idx));
        }
    }
    return p;
}

ComplexMatrix HermitianProgram::extract(const RealMatrix &m, std::size_t block) const {
    if (complex_.at(block)) {
        return extract_complex_from_real(m);
    }
    return m.cast<Complex>();
}

ComplexMatrix HermitianProgram::primal_block(const SdpSolution &sol, std::size_t block) const {
    return extract(sol.x.at(block), block);
}

ComplexMatrix HermitianProgram::dual_block(const SdpSolution &sol, std::size_t block) const {
    return extract(sol.z.at(block), block);
}

}  // namespace covcert

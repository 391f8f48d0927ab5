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


#include "covcert/random.h"

#include <cmath>

namespace covcert {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
    ComplexMatrix g(rows, cols);
    for (std::size_t c = 0; c < cols; c++) {
        for (std::size_t r = 0; r < rows; r++) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

ComplexMatrix haar_unitary(std::size_t d, Rng &rng) {
    ComplexMatrix g = ginibre(d, d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix &r = qr.matrixQR();
    for (std::size_t k = 0; k < d; k++) {
        Complex diag = r(k, k);
        double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(k) *= diag / mag;
        }
    }
    return q;
}

ComplexVector random_pure_state(std::size_t d, Rng &rng) {
    ComplexVector v = ginibre(d, 1, rng).col(0);
    return v / v.norm();
}

ComplexMatrix random_psd(std::size_t d, Rng &rng, std::size_t rank) {
    ComplexMatrix g = ginibre(d, rank == 0 ? d : rank, rng);
    ComplexMatrix p = g * g.adjoint();
    return (p + p.adjoint()) / 2.0;
}

ComplexMatrix random_density(std::size_t d, Rng &rng, std::size_t rank) {
    ComplexMatrix p = random_psd(d, rng, rank);
    return p / p.trace().real();
}

ComplexMatrix random_hermitian(std::size_t d, Rng &rng) {
    ComplexMatrix g = ginibre(d, d, rng);
    return (g + g.adjoint()) / 2.0;
}

}  // namespace covcert

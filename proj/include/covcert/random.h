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


#ifndef COVCERT_RANDOM_H
#define COVCERT_RANDOM_H

#include <cstdint>
#include <random>

#include "covcert/linalg.h"

namespace covcert {

using Rng = std::mt19937_64;

/// Ginibre matrix with i.i.d. standard complex normal entries.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng);

/// Haar-distributed d x d unitary (QR of a Ginibre matrix with the phases of
/// R's diagonal absorbed into Q).
ComplexMatrix haar_unitary(std::size_t d, Rng &rng);

/// Haar-random unit vector in C^d.
ComplexVector random_pure_state(std::size_t d, Rng &rng);

/// Random density operator G G^dagger / tr(G G^dagger) with G a d x rank
/// Ginibre matrix. rank = 0 means full rank.
ComplexMatrix random_density(std::size_t d, Rng &rng, std::size_t rank = 0);

/// Random PSD matrix G G^dagger (unnormalized).
ComplexMatrix random_psd(std::size_t d, Rng &rng, std::size_t rank = 0);

/// Random Hermitian matrix (G + G^dagger) / 2.
ComplexMatrix random_hermitian(std::size_t d, Rng &rng);

}  // namespace covcert

#endif

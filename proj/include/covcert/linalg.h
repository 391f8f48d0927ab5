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

#ifndef COVCERT_LINALG_H
#define COVCERT_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace covcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Hermiticity tolerance, relative to the Frobenius norm.
inline constexpr double kHermitianTol = 1e-9;
/// Smallest eigenvalue accepted as PSD is -kPsdTol * max(1, ||m||).
inline constexpr double kPsdTol = 1e-9;
/// Trace tolerance for density operators.
inline constexpr double kTraceTol = 1e-8;

/// Ordered subsystem dimensions of a tensor-product space. Factor 0 is the
/// most significant index in the row-major (kron) ordering.
class DimShape {
   public:
    DimShape() = default;
    DimShape(std::initializer_list<std::size_t> factors);
    explicit DimShape(std::vector<std::size_t> factors);

    /// A single-factor shape of dimension d.
    static DimShape single(std::size_t d);
    /// n copies of dimension d.
    static DimShape uniform(std::size_t d, std::size_t n);

    std::size_t size() const { return factors_.size(); }
    std::size_t operator[](std::size_t i) const { return factors_[i]; }
    const std::vector<std::size_t> &factors() const { return factors_; }
    std::size_t total() const;

    /// Shape with the given factors removed (order of the others preserved).
    DimShape without(std::span<const std::size_t> removed) const;

    bool operator==(const DimShape &other) const = default;

   private:
    std::vector<std::size_t> factors_;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector kron(const ComplexVector &a, const ComplexVector &b);

/// Partial trace over the factors listed in `traced` (indices into `shape`).
/// Throws std::invalid_argument on a shape mismatch or a bad index.
ComplexMatrix partial_trace(const ComplexMatrix &m, const DimShape &shape, std::span<const std::size_t> traced);
ComplexMatrix partial_trace(const ComplexMatrix &m, const DimShape &shape, std::initializer_list<std::size_t> traced);

/// Reorders tensor factors: output factor k is input factor perm[k].
ComplexMatrix permute_factors(const ComplexMatrix &m, const DimShape &shape, std::span<const std::size_t> perm);
ComplexVector permute_factors(const ComplexVector &v, const DimShape &shape, std::span<const std::size_t> perm);

/// Applies a product operator (one matrix per factor) to a vector without
/// forming the full Kronecker product. Factor matrices must be square.
ComplexVector apply_local(std::span<const ComplexMatrix> factor_ops, const DimShape &shape, const ComplexVector &v);

double hermitian_deviation(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol);
/// (m + m^dagger) / 2 after checking that m is Hermitian within tolerance.
ComplexMatrix symmetrized(const ComplexMatrix &m);

struct HermitianEigen {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // columns are eigenvectors
};

/// Spectral decomposition of a Hermitian matrix. The input is symmetrized
/// before factorization; non-Hermitian input throws std::invalid_argument.
HermitianEigen eig_hermitian(const ComplexMatrix &m);

double min_eigenvalue(const ComplexMatrix &m);
bool is_psd(const ComplexMatrix &m, double tol = kPsdTol);
/// True for PSD matrices of unit trace (within kTraceTol).
bool is_density(const ComplexMatrix &m);
/// Clips negative eigenvalues to zero. Throws if they exceed the PSD tolerance.
ComplexMatrix clip_to_psd(const ComplexMatrix &m);

/// Principal square root of a PSD matrix.
ComplexMatrix sqrt_psd(const ComplexMatrix &m);

/// Uhlmann fidelity F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 between density
/// operators. Throws std::invalid_argument when either input is not a state.
double fidelity(const ComplexMatrix &rho, const ComplexMatrix &sigma);

/// Real symmetric embedding [[Re h, -Im h], [Im h, Re h]] of a Hermitian
/// matrix; spectrum is that of h with each multiplicity doubled.
RealMatrix embed_complex_as_real(const ComplexMatrix &h);
/// Inverse of embed_complex_as_real, averaging the redundant blocks.
ComplexMatrix extract_complex_from_real(const RealMatrix &r);

/// Orthonormal basis (columns) of the column span of m, via SVD with a
/// relative singular value cutoff.
ComplexMatrix orthonormal_range(const ComplexMatrix &m, double rel_tol = 1e-12);

/// Frobenius distance between sum_k a_k b_k^dagger and sum_k c_k d_k^dagger,
/// evaluated from inner products so the outer products are never formed.
double outer_sum_distance(std::span<const ComplexVector> a, std::span<const ComplexVector> b,
                          std::span<const ComplexVector> c, std::span<const ComplexVector> d);

/// Orthonormal Hermitian basis of d x d operators under <A,B> = tr(A B):
/// E_kk, (E_kl + E_lk)/sqrt2 and i(E_kl - E_lk)/sqrt2 for k < l.
std::vector<ComplexMatrix> hermitian_basis(std::size_t d);

ComplexMatrix projector(const ComplexVector &v);
ComplexVector basis_vector(std::size_t d, std::size_t i);
/// Unnormalized maximally entangled vector sum_i |ii>.
ComplexVector max_entangled_vector(std::size_t d);

/// Mixed-radix digits of a flat index, most significant factor first.
std::vector<std::size_t> unflatten_index(std::size_t index, const DimShape &shape);
std::size_t flatten_index(std::span<const std::size_t> digits, const DimShape &shape);

}  // namespace covcert

#endif

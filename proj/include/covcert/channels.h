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


#ifndef COVCERT_CHANNELS_H
#define COVCERT_CHANNELS_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covcert/linalg.h"
#include "covcert/random.h"

namespace covcert {

/// Completeness tolerance for trace-preserving Kraus sets.
inline constexpr double kCompletenessTol = 1e-9;

/// A completely positive map in Kraus form. Trace-preserving unless flagged as
/// an instrument element (trace-non-increasing).
class QuantumChannel {
   public:
    QuantumChannel(std::vector<ComplexMatrix> kraus, DimShape in_shape, DimShape out_shape,
                   bool instrument = false);

    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }
    const DimShape &in_shape() const { return in_shape_; }
    const DimShape &out_shape() const { return out_shape_; }
    std::size_t in_dim() const { return in_shape_.total(); }
    std::size_t out_dim() const { return out_shape_.total(); }
    bool is_instrument() const { return instrument_; }

    /// sum_i K_i^dagger K_i.
    ComplexMatrix completeness() const;

   private:
    std::vector<ComplexMatrix> kraus_;
    DimShape in_shape_;
    DimShape out_shape_;
    bool instrument_;
};

/// Normalized Choi state on input (x) output.
struct ChoiState {
    ComplexMatrix matrix;
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
};

ComplexMatrix apply(const QuantumChannel &ch, const ComplexMatrix &rho);
/// Applies the channel to a pure input, returning sum_k (K_k psi)(K_k psi)^dagger.
ComplexMatrix apply_pure(const QuantumChannel &ch, const ComplexVector &psi);

/// second o first.
QuantumChannel compose(const QuantumChannel &second, const QuantumChannel &first);

/// (1/d_in) (id (x) ch)(sum_ij |ii><jj|). Instruments are rejected.
ChoiState choi_state(const QuantumChannel &ch);

/// Kraus realization of a Choi state (eigendecomposition). The Choi state must
/// have marginal I/d_in on the input.
QuantumChannel channel_from_choi(const ChoiState &choi, const DimShape &in_shape, const DimShape &out_shape);

QuantumChannel identity_channel(const DimShape &shape);
QuantumChannel unitary_channel(const ComplexMatrix &u, const DimShape &shape);

/// Partial trace over the `erased` factors of `shape`.
QuantumChannel erasure_channel(const DimShape &shape, std::span<const std::size_t> erased);

/// rho -> (1 - p) rho + p tr(rho) I/d.
QuantumChannel depolarizing_channel(std::size_t d, double p);
QuantumChannel depolarizing_channel(const DimShape &shape, double p);

/// Known erasure of the factors flagged in `s`: the output is a 2^n-dimensional
/// classical register holding |s> followed by the original factors, with each
/// erased factor reset to |0>.
QuantumChannel known_erasure_channel(const DimShape &shape, const std::vector<bool> &s);

/// Equivalent to compose(erasure_channel(ch.out_shape(), erased), ch), computed
/// by selecting rows of each Kraus operator.
QuantumChannel trace_out_after(const QuantumChannel &ch, std::span<const std::size_t> erased);

/// A channel whose output is restricted to the joint column span of the Kraus
/// operators, together with the isometry embedding it back.
struct CompressedChannel {
    QuantumChannel channel;
    ComplexMatrix isometry;  // out_dim x compressed_dim, orthonormal columns
};
CompressedChannel compress_output(const QuantumChannel &ch);

/// Finite group represented by explicit unitaries on an input and output space.
class GroupRep {
   public:
    GroupRep(std::vector<std::string> labels, std::vector<ComplexMatrix> unitaries_in,
             std::vector<ComplexMatrix> unitaries_out);
    /// Same unitaries on input and output.
    static GroupRep symmetric(std::vector<std::string> labels, std::vector<ComplexMatrix> unitaries);

    std::size_t size() const { return labels_.size(); }
    std::size_t dim_in() const { return static_cast<std::size_t>(unitaries_in_.front().rows()); }
    std::size_t dim_out() const { return static_cast<std::size_t>(unitaries_out_.front().rows()); }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::vector<ComplexMatrix> &unitaries_in() const { return unitaries_in_; }
    const std::vector<ComplexMatrix> &unitaries_out() const { return unitaries_out_; }

    /// Elementwise Kronecker product with another representation of the same group.
    GroupRep tensor(const GroupRep &other) const;

    /// True when every product U_g U_h matches some U_k up to a global phase, on
    /// both spaces (and with the same k). Reports the worst mismatch.
    bool check_closure(double tol = 1e-8, double *max_deviation = nullptr) const;

   private:
    std::vector<std::string> labels_;
    std::vector<ComplexMatrix> unitaries_in_;
    std::vector<ComplexMatrix> unitaries_out_;
};

/// Divides out the phase of the first largest-magnitude entry.
ComplexMatrix phase_normalized(const ComplexMatrix &u);

/// Group generated by the given unitaries (modulo global phases), found by
/// closure. Throws if more than max_size elements are produced.
std::vector<ComplexMatrix> generate_unitary_group(const std::vector<ComplexMatrix> &generators,
                                                  std::size_t max_size = 10000);

struct CovarianceCheck {
    bool covariant = false;
    double max_deviation = 0.0;
};

/// Checks ch(U_g rho U_g^dagger) = V_g ch(rho) V_g^dagger on all matrix units.
CovarianceCheck is_covariant(const QuantumChannel &ch, const GroupRep &rep, double tol = 1e-9);

/// Maps a logical unitary to one operator per tensor factor.
using UnitaryLift = std::function<std::vector<ComplexMatrix>(const ComplexMatrix &)>;

/// Lift U -> (U (+) I) on every factor; factors smaller than U are rejected.
UnitaryLift direct_sum_lift(const DimShape &shape);

/// Spot-checks covariance for `samples` Haar-random unitaries drawn from `rng`.
/// Inputs up to 16 dimensions use all matrix units; larger inputs use four
/// random pure states per sample.
CovarianceCheck sampled_covariance(const QuantumChannel &ch, const UnitaryLift &lift_in, const UnitaryLift &lift_out,
                                   std::size_t logical_dim, std::size_t samples, Rng &rng, double tol = 1e-8);

/// |G|^{-1} sum_g (conj(U^R_g) (x) U^A_g) op (...)^dagger.
ComplexMatrix g_twirl(const ComplexMatrix &op, std::span<const ComplexMatrix> u_r, std::span<const ComplexMatrix> u_a);
/// Uses the input unitaries of each representation.
ComplexMatrix g_twirl(const ComplexMatrix &op, const GroupRep &rep_r, const GroupRep &rep_a);

/// Weight lambda = (d^2 - d)/(d^2 - 1) of the maximally mixed part after the
/// U(d) twirl of a pure product state.
double haar_second_moment_lambda(std::size_t d);

/// Exact Haar average of (conj U (x) U) op (conj U (x) U)^dagger for an operator
/// on C^d (x) C^d: the projection onto span{I, |Omega><Omega|}.
ComplexMatrix haar_pair_twirl(const ComplexMatrix &op, std::size_t d);

/// lambda I/d^2 + (1 - lambda) |Omega><Omega|/d, the twirl of any pure psi^T (x) psi.
ComplexMatrix haar_pair_twirl_state(std::size_t d);

}  // namespace covcert

#endif

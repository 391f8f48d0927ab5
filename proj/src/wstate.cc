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


#include "covcert/wstate.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace covcert {

void WCodeParams::validate() const {
    if (n < 1) {
        throw std::invalid_argument("W code: n must be at least 1");
    }
    if (d_L < 2) {
        throw std::invalid_argument("W code: d_L must be at least 2");
    }
    if (N_e >= n) {
        throw std::invalid_argument("W code: N_e must be smaller than n");
    }
}

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap, const char *what) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < exp; k++) {
        if (r > cap / base) {
            throw std::invalid_argument(std::string(what) + ": dimension exceeds the cap of " + std::to_string(cap));
        }
        r *= base;
    }
    return r;
}

// Flat index of |d..d i d..d> (i at position k) in an m-factor register of dimension base.
std::size_t codeword_index(std::size_t i, std::size_t k, std::size_t m, std::size_t base) {
    std::size_t idx = 0;
    for (std::size_t q = 0; q < m; q++) {
        idx = idx * base + (q == k ? i : base - 1);
    }
    return idx;
}

// Isometry V^(m) for an m-factor block.
ComplexMatrix isometry(std::size_t m, std::size_t d, std::size_t cap) {
    const std::size_t dim = checked_power(d + 1, m, cap, "W code isometry");
    ComplexMatrix v = ComplexMatrix::Zero(dim, d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t k = 0; k < m; k++) {
            v(codeword_index(i, k, m, d + 1), i) = amp;
        }
    }
    return v;
}

// |d..d> on m factors.
std::size_t all_d_index(std::size_t m, std::size_t base) {
    std::size_t idx = 0;
    for (std::size_t q = 0; q < m; q++) {
        idx = idx * base + (base - 1);
    }
    return idx;
}

std::size_t weight(const std::vector<bool> &s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
}

}  // namespace

ComplexVector codeword(std::size_t i, const WCodeParams &params) {
    params.validate();
    if (i >= params.d_L) {
        throw std::invalid_argument("codeword: logical index " + std::to_string(i) + " out of range");
    }
    return isometry(params.n, params.d_L, kStructuredAmplitudeCap).col(static_cast<Eigen::Index>(i));
}

QuantumChannel encoder(const WCodeParams &params) {
    params.validate();
    ComplexMatrix v = isometry(params.n, params.d_L, kDenseAmplitudeCap);
    return QuantumChannel({v}, DimShape::single(params.d_L), params.physical_shape());
}

ChoiState choi_after_erasure_recursive(const WCodeParams &params) {
    params.validate();
    if (params.N_e < 1) {
        throw std::invalid_argument("choi_after_erasure_recursive: N_e must be at least 1");
    }
    const double d = static_cast<double>(params.d_L);
    // Current state: a I_L (x) |d..d><d..d| + b J(E^(m)).
    double a = 0.0;
    double b = 1.0;
    std::size_t m = params.n;
    for (std::size_t k = 0; k < params.N_e; k++) {
        const double md = static_cast<double>(m);
        a += b / (d * md);
        b *= 1.0 - 1.0 / md;
        m--;
    }
    const std::size_t dl = params.d_L;
    const std::size_t base = dl + 1;
    const std::size_t dp = checked_power(base, m, kDenseAmplitudeCap, "choi_after_erasure_recursive");
    const std::size_t dim = dl * dp;
    ComplexMatrix j = ComplexMatrix::Zero(dim, dim);
    const std::size_t idx_d = all_d_index(m, base);
    for (std::size_t i = 0; i < dl; i++) {
        j(i * dp + idx_d, i * dp + idx_d) += a;
    }
    // J(E^(m)) = |Omega><Omega| / d_L with |Omega> = sum_i |i>|i^(m)>.
    ComplexVector omega = ComplexVector::Zero(dim);
    ComplexMatrix v = isometry(m, dl, kDenseAmplitudeCap);
    for (std::size_t i = 0; i < dl; i++) {
        omega.segment(i * dp, dp) = v.col(i);
    }
    j += (b / d) * omega * omega.adjoint();
    return {j, dl, dp};
}

double analytic_phi(const WCodeParams &params) {
    params.validate();
    const double n = static_cast<double>(params.n);
    const double ne = static_cast<double>(params.N_e);
    const double d = static_cast<double>(params.d_L);
    return ne / (d * n) + (1.0 - ne / n) * d;
}

double analytic_epsilon_min(const WCodeParams &params) {
    params.validate();
    return (static_cast<double>(params.N_e) / static_cast<double>(params.n)) *
           (1.0 - 1.0 / static_cast<double>(params.d_L));
}

double analytic_epsilon_min_unbounded(std::size_t n, std::size_t N_e) {
    if (n < 1 || N_e >= n) {
        throw std::invalid_argument("W code: need 0 <= N_e < n");
    }
    return static_cast<double>(N_e) / static_cast<double>(n);
}

std::vector<bool> erasure_pattern(std::size_t n, std::span<const std::size_t> erased) {
    std::vector<bool> s(n, false);
    for (auto e : erased) {
        if (e >= n) {
            throw std::invalid_argument("erasure_pattern: position out of range");
        }
        s[e] = true;
    }
    return s;
}

QuantumChannel decoder(const WCodeParams &params, const DecoderOptions &options) {
    params.validate();
    const std::size_t n = params.n;
    const std::size_t dl = params.d_L;
    const std::size_t base = dl + 1;
    const std::size_t x_dim = std::size_t{1} << n;
    const std::size_t p_dim = checked_power(base, n, kDenseDecoderCap, "decoder");
    if (x_dim * p_dim > kDenseDecoderCap) {
        throw std::invalid_argument("decoder: input dimension " + std::to_string(x_dim * p_dim) +
                                    " exceeds the dense cap of " + std::to_string(kDenseDecoderCap));
    }
    const std::size_t in_dim = x_dim * p_dim;
    const DimShape p_shape = params.physical_shape();
    std::vector<std::size_t> in_factors{x_dim};
    in_factors.insert(in_factors.end(), p_shape.factors().begin(), p_shape.factors().end());
    DimShape in_shape(in_factors);

    std::vector<ComplexMatrix> kraus;
    auto rank_one = [&](std::size_t col) {
        ComplexMatrix k = ComplexMatrix::Zero(dl, in_dim);
        k(0, col) = 1.0;
        kraus.push_back(std::move(k));
    };

    for (std::size_t xs = 0; xs < x_dim; xs++) {
        std::vector<bool> s(n);
        for (std::size_t q = 0; q < n; q++) {
            s[q] = (xs >> (n - 1 - q)) & 1;
        }
        const std::size_t w = weight(s);
        const bool in_family = w < n && (options.weights == WeightFamily::kExact ? w == params.N_e : w <= params.N_e);
        if (!in_family) {
            if (options.completion == CompletionPolicy::kResetToZero) {
                for (std::size_t p = 0; p < p_dim; p++) {
                    rank_one(xs * p_dim + p);
                }
            }
            continue;
        }
        const std::size_t m = n - w;
        ComplexMatrix v = isometry(m, dl, kDenseDecoderCap);
        ComplexMatrix complement;
        if (options.completion == CompletionPolicy::kResetToZero) {
            Eigen::JacobiSVD<ComplexMatrix> svd(v, Eigen::ComputeFullU);
            complement = svd.matrixU().rightCols(v.rows() - static_cast<Eigen::Index>(dl));
        }
        std::vector<std::size_t> erased;
        std::vector<std::size_t> kept;
        for (std::size_t q = 0; q < n; q++) {
            (s[q] ? erased : kept).push_back(q);
        }
        const std::size_t j_dim = checked_power(base, w, kDenseDecoderCap, "decoder");
        // Map (j, kept index) to a physical flat index.
        auto flat = [&](std::size_t j, std::size_t kept_idx) {
            std::vector<std::size_t> digits(n);
            for (std::size_t q = erased.size(); q-- > 0;) {
                digits[erased[q]] = j % base;
                j /= base;
            }
            for (std::size_t q = kept.size(); q-- > 0;) {
                digits[kept[q]] = kept_idx % base;
                kept_idx /= base;
            }
            return flatten_index(digits, p_shape);
        };
        const std::size_t kept_dim = static_cast<std::size_t>(v.rows());
        for (std::size_t j = 0; j < j_dim; j++) {
            ComplexMatrix k = ComplexMatrix::Zero(dl, in_dim);
            for (std::size_t r = 0; r < kept_dim; r++) {
                k.col(xs * p_dim + flat(j, r)) = v.row(r).adjoint();
            }
            kraus.push_back(std::move(k));
            for (Eigen::Index c = 0; c < complement.cols(); c++) {
                ComplexMatrix kc = ComplexMatrix::Zero(dl, in_dim);
                for (std::size_t r = 0; r < kept_dim; r++) {
                    kc(0, xs * p_dim + flat(j, r)) = std::conj(complement(r, c));
                }
                kraus.push_back(std::move(kc));
            }
        }
    }
    return QuantumChannel(std::move(kraus), in_shape, DimShape::single(dl),
                          options.completion == CompletionPolicy::kNone);
}

namespace {

void check_simulation_inputs(const ComplexVector &psi, const WCodeParams &params, const std::vector<bool> &s) {
    params.validate();
    if (psi.size() != static_cast<Eigen::Index>(params.d_L)) {
        throw std::invalid_argument("simulate_known_erasure: logical state has dimension " +
                                    std::to_string(psi.size()) + ", expected " + std::to_string(params.d_L));
    }
    if (std::abs(psi.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("simulate_known_erasure: logical state is not normalized");
    }
    if (s.size() != params.n) {
        throw std::invalid_argument("simulate_known_erasure: pattern length does not match n");
    }
    if (weight(s) != params.N_e) {
        throw std::invalid_argument("simulate_known_erasure: pattern weight must equal N_e");
    }
}

SimulationResult finish(const ComplexVector &psi, ComplexMatrix recovered, double completion_weight) {
    SimulationResult r;
    const auto dl = psi.size();
    recovered = (recovered + recovered.adjoint()) / 2.0;
    r.recovered = recovered;
    r.completion_weight = std::max(0.0, completion_weight);
    r.decoded = recovered;
    r.decoded(0, 0) += r.completion_weight;
    r.recovered_fidelity = psi.dot(recovered * psi).real();
    ComplexMatrix target = projector(psi);
    // Exact trace normalization guards against rounding in the state check.
    ComplexMatrix decoded = r.decoded / r.decoded.trace().real();
    r.fidelity = fidelity(decoded, target);
    (void)dl;
    return r;
}

}  // namespace

SimulationResult simulate_known_erasure(const ComplexVector &psi, const WCodeParams &params,
                                        const std::vector<bool> &s) {
    check_simulation_inputs(psi, params, s);
    const std::size_t n = params.n;
    const std::size_t dl = params.d_L;
    const std::size_t base = dl + 1;
    checked_power(base, n, kStructuredAmplitudeCap, "simulate_known_erasure");
    std::vector<std::size_t> erased;
    std::vector<std::size_t> kept;
    for (std::size_t q = 0; q < n; q++) {
        (s[q] ? erased : kept).push_back(q);
    }
    const std::size_t m = kept.size();

    // Encoded state: amplitude psi_i / sqrt(n) on |d..i..d> (i at position k).
    // Known erasure projects the erased factors onto a basis state j and resets
    // them; each branch is decoded by V^(m)^dagger.
    std::vector<std::size_t> branch_index;
    std::vector<std::vector<std::pair<std::size_t, Complex>>> branches;
    auto branch_of = [&](std::size_t j) -> std::vector<std::pair<std::size_t, Complex>> & {
        auto it = std::find(branch_index.begin(), branch_index.end(), j);
        if (it != branch_index.end()) {
            return branches[static_cast<std::size_t>(it - branch_index.begin())];
        }
        branch_index.push_back(j);
        branches.emplace_back();
        return branches.back();
    };
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < dl; i++) {
        for (std::size_t k = 0; k < n; k++) {
            std::size_t j = 0;
            std::size_t kept_idx = 0;
            for (std::size_t q = 0; q < n; q++) {
                const std::size_t digit = q == k ? i : base - 1;
                if (s[q]) {
                    j = j * base + digit;
                } else {
                    kept_idx = kept_idx * base + digit;
                }
            }
            branch_of(j).emplace_back(kept_idx, psi(static_cast<Eigen::Index>(i)) * amp);
        }
    }

    ComplexMatrix recovered = ComplexMatrix::Zero(dl, dl);
    double completion = 0.0;
    const double amp_m = m > 0 ? 1.0 / std::sqrt(static_cast<double>(m)) : 0.0;
    for (const auto &branch : branches) {
        // Merge duplicate kept indices into a sparse vector.
        std::vector<std::pair<std::size_t, Complex>> vec;
        for (const auto &[idx, a] : branch) {
            auto it = std::find_if(vec.begin(), vec.end(), [&](const auto &p) { return p.first == idx; });
            if (it == vec.end()) {
                vec.emplace_back(idx, a);
            } else {
                it->second += a;
            }
        }
        double norm2 = 0.0;
        for (const auto &[idx, a] : vec) {
            norm2 += std::norm(a);
        }
        ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(dl));
        for (std::size_t l = 0; l < dl; l++) {
            for (std::size_t k = 0; k < m; k++) {
                const std::size_t target = codeword_index(l, k, m, base);
                for (const auto &[idx, a] : vec) {
                    if (idx == target) {
                        out(static_cast<Eigen::Index>(l)) += amp_m * a;
                    }
                }
            }
        }
        recovered += out * out.adjoint();
        completion += norm2 - out.squaredNorm();
    }
    return finish(psi, recovered, completion);
}

SimulationResult simulate_known_erasure_dense(const ComplexVector &psi, const WCodeParams &params,
                                              const std::vector<bool> &s) {
    check_simulation_inputs(psi, params, s);
    QuantumChannel enc = encoder(params);
    QuantumChannel noise = known_erasure_channel(params.physical_shape(), s);
    QuantumChannel dec = decoder(params, {CompletionPolicy::kNone, WeightFamily::kExact});
    ComplexMatrix noisy = covcert::apply(noise, apply_pure(enc, psi));
    ComplexMatrix recovered = covcert::apply(dec, noisy);
    QuantumChannel full = decoder(params);
    ComplexMatrix decoded = covcert::apply(full, noisy);
    SimulationResult r = finish(psi, recovered, decoded(0, 0).real() - recovered(0, 0).real());
    return r;
}

std::vector<SweepRow> sweep_fig2(const std::vector<std::size_t> &n_values, const std::vector<std::size_t> &ne_values,
                                 std::optional<std::size_t> d_L, std::size_t threads) {
    if (d_L && *d_L < 2) {
        throw std::invalid_argument("sweep_fig2: d_L must be at least 2");
    }
    std::vector<std::size_t> ns = n_values;
    std::vector<std::size_t> nes = ne_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::sort(nes.begin(), nes.end());
    nes.erase(std::unique(nes.begin(), nes.end()), nes.end());
    std::vector<SweepRow> rows;
    for (auto ne : nes) {
        for (auto n : ns) {
            if (n >= 1 && ne < n) {
                rows.push_back({n, ne, d_L, 0.0, 0.0});
            }
        }
    }
    auto compute = [&](SweepRow &row) {
        const double comparison_dl = static_cast<double>(d_L.value_or(2));
        row.faist_bound = (std::sqrt(2.0) + comparison_dl) / std::sqrt(static_cast<double>(row.n));
        row.epsilon_min = d_L ? analytic_epsilon_min({row.n, *d_L, row.N_e})
                              : analytic_epsilon_min_unbounded(row.n, row.N_e);
    };
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, std::max<std::size_t>(rows.size(), 1));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; t++) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < rows.size(); i = next++) {
                compute(rows[i]);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    return rows;
}

}  // namespace covcert

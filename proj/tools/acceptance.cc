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


#include "acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cli.h"
#include "covcert/asymmetry.h"
#include "covcert/certifier.h"
#include "covcert/channels.h"
#include "covcert/json_io.h"
#include "covcert/minentropy.h"
#include "covcert/random.h"
#include "covcert/wstate.h"

namespace covcert::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

const double kPi = std::acos(-1.0);

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }

std::string twelve(double v) { return fmt("%.12g", v); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Solver statistics gathered for the solver-health criterion.
struct StatsLog {
    std::vector<std::pair<std::string, SolverStats>> entries;

    void add(std::string where, const SolverStats &s) { entries.emplace_back(std::move(where), s); }
};

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::size_t> prefix(std::size_t k) {
    std::vector<std::size_t> v(k);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

// (N_e / n)(1 - 1/d_L), evaluated independently of the library.
double expected_epsilon(std::size_t n, std::size_t dl, std::size_t ne) {
    return static_cast<double>(ne) / static_cast<double>(n) * (1.0 - 1.0 / static_cast<double>(dl));
}

struct WInstance {
    std::size_t n;
    std::size_t dl;
    std::size_t ne;
};

// (n, d_L, N_e) in {2..6} x {2,3} x {1,2} with N_e < n.
std::vector<WInstance> small_w_instances() {
    std::vector<WInstance> out;
    for (std::size_t n = 2; n <= 6; n++) {
        for (std::size_t dl : {2u, 3u}) {
            for (std::size_t ne = 1; ne <= 2 && ne < n; ne++) {
                out.push_back({n, dl, ne});
            }
        }
    }
    return out;
}

std::string label(const WInstance &w) {
    return "n=" + std::to_string(w.n) + ",d=" + std::to_string(w.dl) + ",Ne=" + std::to_string(w.ne);
}

ComplexMatrix hadamard() {
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

ComplexMatrix phase_s() {
    ComplexMatrix s = ComplexMatrix::Identity(2, 2);
    s(1, 1) = Complex(0, 1);
    return s;
}

ComplexMatrix qutrit_fourier() {
    ComplexMatrix f(3, 3);
    for (int j = 0; j < 3; j++) {
        for (int k = 0; k < 3; k++) {
            f(j, k) = std::polar(1.0 / std::sqrt(3.0), 2.0 * kPi * j * k / 3.0);
        }
    }
    return f;
}

ComplexMatrix qutrit_phase() {
    ComplexMatrix s = ComplexMatrix::Identity(3, 3);
    s(2, 2) = std::polar(1.0, 2.0 * kPi / 3.0);
    return s;
}

GroupRep z2_rep() {
    ComplexMatrix z = ComplexMatrix::Identity(2, 2);
    z(1, 1) = -1.0;
    return GroupRep::symmetric({"e", "z"}, {ComplexMatrix::Identity(2, 2), z});
}

GroupRep z3_rep() {
    std::vector<ComplexMatrix> us;
    for (int k = 0; k < 3; k++) {
        ComplexMatrix u = ComplexMatrix::Zero(3, 3);
        for (int j = 0; j < 3; j++) {
            u(j, j) = std::polar(1.0, 2.0 * kPi * k * j / 3.0);
        }
        us.push_back(u);
    }
    return GroupRep::symmetric({"e", "g", "g2"}, us);
}

GroupRep s3_rep() {
    ComplexMatrix r(2, 2);
    r << std::cos(2.0 * kPi / 3.0), -std::sin(2.0 * kPi / 3.0), std::sin(2.0 * kPi / 3.0), std::cos(2.0 * kPi / 3.0);
    ComplexMatrix f(2, 2);
    f << 1, 0, 0, -1;
    ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    return GroupRep::symmetric({"e", "r", "r2", "f", "fr", "fr2"}, {id, r, r * r, f, f * r, f * r * r});
}

void note_worst(double value, double &worst) { worst = std::max(worst, value); }

Outcome c1_headline() {
    Outcome o;
    const auto start = Clock::now();
    CliRun r = run_cli({"certify", "--wstate", "n=100,dl=2", "--erase", "1", "--epsilon", "0.005"});
    const double elapsed = seconds_since(start);
    CliRun below = run_cli({"certify", "--wstate", "n=100,dl=2", "--erase", "1", "--epsilon", "0.004"});
    CliRun bad = run_cli({"certify", "--wstate", "n=100,dl=2", "--erase", "1", "--epsilon", "1.5"});
    if (r.code != 0) {
        return {false, "exit " + std::to_string(r.code) + ": " + r.err};
    }
    Json j = Json::parse(r.out);
    const double eps = j.at("epsilon_min").get<double>();
    const std::string path = j.at("path").get<std::string>();
    const double dev = std::abs(eps - 0.005);
    o.pass = dev <= 1e-12 && path == "analytic" && elapsed < 1.0 && below.code == 3 && bad.code == 1;
    o.detail = "epsilon_min=" + twelve(eps) + " |dev|=" + sci(dev) + " path=" + path +
               " exit(0.005)=0 exit(0.004)=" + std::to_string(below.code) + " exit(1.5)=" + std::to_string(bad.code) +
               (elapsed < 1.0 ? " runtime<1s" : " runtime>=1s");
    return o;
}

Outcome c2_cross_check(StatsLog &log) {
    const auto start = Clock::now();
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto &w : small_w_instances()) {
        QuantumChannel enc = encoder({w.n, w.dl, 0});
        const std::vector<std::size_t> erased = prefix(w.ne);
        CertReport r = certify_erasure_transversal(enc, erased, std::nullopt);
        note_worst(std::abs(r.epsilon_min - expected_epsilon(w.n, w.dl, w.ne)), worst);
        if (r.solver) {
            log.add("C2 " + label(w), *r.solver);
        }
        count++;
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-6 && elapsed < 120.0, std::to_string(count) + " instances, max |SDP - (N_e/n)(1-1/d_L)|=" +
                                                  sci(worst) + (elapsed < 120.0 ? ", runtime<120s" : ", runtime>=120s")};
}

Outcome c3_recursion() {
    double worst = 0.0;
    std::size_t count = 0;
    for (std::size_t dl : {2u, 3u}) {
        for (std::size_t n = 2; n <= 6; n++) {
            for (std::size_t ne = 1; ne <= 2 && ne < n; ne++) {
                const WCodeParams p{n, dl, ne};
                const std::vector<std::size_t> erased = prefix(ne);
                ChoiState direct = choi_state(compose(erasure_channel(p.physical_shape(), erased), encoder(p)));
                ChoiState rec = choi_after_erasure_recursive(p);
                if (direct.matrix.rows() != rec.matrix.rows()) {
                    return {false, "dimension mismatch at n=" + std::to_string(n)};
                }
                note_worst((direct.matrix - rec.matrix).norm(), worst);
                count++;
            }
        }
    }
    return {worst <= 1e-10, std::to_string(count) + " instances, max Frobenius distance=" + sci(worst)};
}

Outcome c4_decoder(Rng &rng) {
    double worst_rec = 0.0;
    double worst_closed = 0.0;
    double min_margin = 1.0;
    std::size_t runs = 0;
    for (std::size_t dl : {2u, 3u}) {
        for (std::size_t n = 2; n <= 8; n++) {
            std::vector<std::vector<std::size_t>> patterns;
            for (std::size_t a = 0; a < n; a++) {
                patterns.push_back({a});
                for (std::size_t b = a + 1; b < n && n > 2; b++) {
                    patterns.push_back({a, b});
                }
            }
            for (const auto &pat : patterns) {
                const WCodeParams p{n, dl, pat.size()};
                const std::vector<bool> s = erasure_pattern(n, pat);
                const double bound = 1.0 - static_cast<double>(pat.size()) / static_cast<double>(n);
                for (int k = 0; k < 16; k++) {
                    const ComplexVector psi = random_pure_state(dl, rng);
                    SimulationResult r = simulate_known_erasure(psi, p, s);
                    const double closed = bound + (1.0 - bound) * std::norm(psi(0));
                    note_worst(std::abs(r.recovered_fidelity - bound), worst_rec);
                    note_worst(std::abs(r.fidelity - closed), worst_closed);
                    min_margin = std::min(min_margin, r.fidelity - bound);
                    runs++;
                }
            }
        }
    }
    return {worst_rec <= 1e-10 && worst_closed <= 1e-10 && min_margin >= -1e-10,
            std::to_string(runs) + " runs, max |recovered fidelity - (1-N_e/n)|=" + sci(worst_rec) +
                ", completed fidelity >= 1-N_e/n (min margin " + sci(min_margin) +
                "), max |completed - closed form|=" + sci(worst_closed)};
}

Outcome c5_decomposition(Rng &rng, StatsLog &log) {
    std::uniform_real_distribution<double> coef(0.05, 2.0);
    std::uniform_int_distribution<std::size_t> db_dist(2, 9);
    double worst = 0.0;
    for (int trial = 0; trial < 100; trial++) {
        const std::size_t da = 2 + static_cast<std::size_t>(trial % 2);
        const std::size_t db = db_dist(rng);
        const double l1 = coef(rng);
        const double l2 = coef(rng);
        const ComplexMatrix l = random_psd(db, rng, 1 + static_cast<std::size_t>(trial % db));
        const ComplexMatrix m = random_psd(da * db, rng, 1 + static_cast<std::size_t>(trial % 4));
        const double fast = phi_decompose(l1, l, l2, m, da, db);
        const ComplexMatrix k = l1 * kron(ComplexMatrix(ComplexMatrix::Identity(da, da)), l) + l2 * m;
        MinEntropyResult direct = hmin(k, da, db);
        log.add("C5 direct #" + std::to_string(trial), direct.stats);
        log.add("C5 part #" + std::to_string(trial), hmin(m, da, db).stats);
        note_worst(std::abs(fast - direct.phi) / std::abs(direct.phi), worst);
    }
    return {worst <= 1e-6, "100 decompositions up to 3x9, max relative deviation=" + sci(worst)};
}

Outcome c6_haar(Rng &rng) {
    std::vector<ComplexMatrix> cliff = generate_unitary_group({hadamard(), phase_s()});
    double worst_design = 0.0;
    for (int k = 0; k < 8; k++) {
        const ComplexMatrix psi = projector(random_pure_state(2, rng));
        const ComplexMatrix op = kron(ComplexMatrix(psi.transpose()), psi);
        note_worst((g_twirl(op, cliff, cliff) - haar_pair_twirl_state(2)).norm(), worst_design);
    }
    std::vector<ComplexMatrix> cliff3 = generate_unitary_group({qutrit_fourier(), qutrit_phase()});
    double worst_design3 = 0.0;
    for (int k = 0; k < 4; k++) {
        const ComplexMatrix psi = projector(random_pure_state(3, rng));
        const ComplexMatrix op = kron(ComplexMatrix(psi.transpose()), psi);
        note_worst((g_twirl(op, cliff3, cliff3) - haar_pair_twirl_state(3)).norm(), worst_design3);
    }
    double worst_mc = 0.0;
    std::string per_dim;
    for (std::size_t d : {2u, 3u}) {
        const ComplexMatrix psi = projector(random_pure_state(d, rng));
        const ComplexMatrix op = kron(ComplexMatrix(psi.transpose()), psi);
        ComplexMatrix acc = ComplexMatrix::Zero(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
        const int samples = 512;
        for (int s = 0; s < samples; s++) {
            const ComplexMatrix u = haar_unitary(d, rng);
            const ComplexMatrix w = kron(ComplexMatrix(u.conjugate()), u);
            acc += w * op * w.adjoint();
        }
        acc /= static_cast<double>(samples);
        const double dev = (acc - haar_pair_twirl_state(d)).cwiseAbs().maxCoeff();
        per_dim += (per_dim.empty() ? "d=" : ", d=") + std::to_string(d) + ": " + sci(dev);
        note_worst(dev, worst_mc);
    }
    return {cliff.size() == 24 && worst_design <= 1e-10 && worst_design3 <= 1e-10 && worst_mc <= 2e-2,
            "qubit Clifford (" + std::to_string(cliff.size()) + ") twirl dev=" + sci(worst_design) + ", qutrit Clifford (" +
                std::to_string(cliff3.size()) + ") dev=" + sci(worst_design3) +
                ", 512-sample Monte-Carlo max entry dev (" + per_dim + ") vs tolerance 2e-2"};
}

// Tensor product of single-factor channels.
QuantumChannel product_channel(const std::vector<QuantumChannel> &factors) {
    std::vector<ComplexMatrix> kraus{ComplexMatrix::Identity(1, 1)};
    std::vector<std::size_t> dims;
    for (const auto &f : factors) {
        std::vector<ComplexMatrix> next;
        for (const auto &a : kraus) {
            for (const auto &b : f.kraus()) {
                next.push_back(kron(a, b));
            }
        }
        kraus = std::move(next);
        dims.push_back(f.in_dim());
    }
    return QuantumChannel(std::move(kraus), DimShape(dims), DimShape(dims));
}

Outcome c7_oracle(Rng &rng, StatsLog &log) {
    double worst = 0.0;
    std::size_t count = 0;
    auto check = [&](const QuantumChannel &enc, const QuantumChannel &noise, const std::string &tag) {
        OracleResult oracle = decoder_choi_oracle(enc, noise);
        MinEntropyResult j = channel_min_entropy(compose(noise, enc));
        log.add("C7 oracle " + tag, oracle.stats);
        log.add("C7 phi " + tag, j.stats);
        note_worst(std::abs(oracle.value - j.phi / static_cast<double>(enc.in_dim())), worst);
        count++;
    };
    for (const auto &w : small_w_instances()) {
        QuantumChannel enc = encoder({w.n, w.dl, 0});
        check(enc, erasure_channel(enc.out_shape(), prefix(w.ne)), label(w));
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // Three-factor codes appear only with an erasure, which keeps the output small.
    const WInstance two_factor[] = {{2, 2, 0}, {2, 3, 0}};
    const WInstance any_size[] = {{2, 2, 0}, {3, 2, 0}, {2, 3, 0}};
    for (int trial = 0; trial < 20; trial++) {
        const WInstance &w = trial % 4 < 2 ? two_factor[(trial / 4) % 2] : any_size[(trial / 4) % 3];
        const WCodeParams p{w.n, w.dl, 0};
        QuantumChannel enc = encoder(p);
        QuantumChannel noise = identity_channel(p.physical_shape());
        std::string tag = "random #" + std::to_string(trial);
        switch (trial % 4) {
            case 0:
                noise = depolarizing_channel(p.physical_shape(), unit(rng));
                break;
            case 1: {
                std::vector<QuantumChannel> local;
                for (std::size_t i = 0; i < w.n; i++) {
                    local.push_back(depolarizing_channel(p.phys_dim(), unit(rng)));
                }
                noise = product_channel(local);
                break;
            }
            case 2: {
                const std::size_t erased[] = {static_cast<std::size_t>(trial) % w.n};
                noise = compose(erasure_channel(p.physical_shape(), erased),
                                depolarizing_channel(p.physical_shape(), unit(rng)));
                break;
            }
            default: {
                std::vector<QuantumChannel> local;
                for (std::size_t i = 0; i < w.n; i++) {
                    local.push_back(depolarizing_channel(p.phys_dim(), 0.5 * unit(rng)));
                }
                const std::size_t erased[] = {w.n - 1};
                noise = compose(erasure_channel(p.physical_shape(), erased), product_channel(local));
            }
        }
        check(enc, noise, tag);
    }
    return {worst <= 1e-6, std::to_string(count) + " instances, max |oracle - Phi(J)/d_L|=" + sci(worst)};
}

Outcome c8_ek_gap() {
    double smallest = 1e300;
    std::string where;
    std::size_t count = 0;
    for (std::size_t dl : {2u, 3u}) {
        for (std::size_t n = 2; n <= 6; n++) {
            QuantumChannel enc = encoder({n, dl, 0});
            for (std::size_t ne = 1; ne < n; ne++) {
                const double gap = exact_ek_gap(enc, prefix(ne));
                if (gap < smallest) {
                    smallest = gap;
                    where = label({n, dl, ne});
                }
                count++;
            }
        }
    }
    return {smallest > 1e-3, std::to_string(count) + " instances, smallest gap=" + fmt("%.6f", smallest) + " bits at " + where};
}

Outcome c9_asymmetry(Rng &rng, StatsLog &log) {
    const std::vector<GroupRep> reps{z2_rep(), z3_rep(), s3_rep()};
    double worst = 0.0;
    std::size_t agree = 0;
    std::size_t feasible = 0;
    const int pairs = 50;
    for (int trial = 0; trial < pairs; trial++) {
        const GroupRep &rep = reps[static_cast<std::size_t>(trial) % reps.size()];
        const std::size_t d = rep.dim_in();
        const ComplexMatrix eta = projector(random_pure_state(d, rng));
        const ComplexMatrix rho = trial % 5 == 4 ? eta : random_density(d, rng, 1 + static_cast<std::size_t>(trial % 2));
        const std::string tag = "#" + std::to_string(trial);
        MinEntropyResult h = hmin(twirled_pair(eta, rho, rep), rep.dim_out(), rep.dim_in());
        log.add("C9 hmin " + tag, h.stats);
        const double route1 = fidelity_of_distillation(eta, rho, rep);
        CovariantOracleResult route2 = covariant_channel_oracle(eta, rho, rep);
        log.add("C9 oracle " + tag, route2.stats);
        note_worst(std::abs(route1 - route2.value), worst);
        note_worst(std::abs(h.phi - route2.value), worst);
        const bool exact = exact_pure_conversion(rho, eta, rep);
        ConversionVerdict multi = multi_state_conversion({{rho}, {eta}, rep, 0.0});
        log.add("C9 multi " + tag, multi.stats);
        agree += exact == multi.feasible ? 1 : 0;
        feasible += exact ? 1 : 0;
    }
    return {worst <= 1e-6 && agree == static_cast<std::size_t>(pairs),
            std::to_string(pairs) + " pairs over Z2/Z3/S3, max route deviation=" + sci(worst) + ", eps=0 verdicts agree " +
                std::to_string(agree) + "/" + std::to_string(pairs) + " (" + std::to_string(feasible) + " feasible)"};
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

Outcome c10_sweep() {
    CliRun inf = run_cli({"sweep", "--n", "10:200:10", "--ne", "1,2,3", "--dl", "inf", "--format", "csv"});
    CliRun two = run_cli({"sweep", "--n", "10:200:10", "--ne", "1,2,3", "--dl", "2", "--format", "csv"});
    if (inf.code != 0 || two.code != 0) {
        return {false, "sweep exit codes " + std::to_string(inf.code) + "/" + std::to_string(two.code)};
    }
    const auto rows_inf = parse_csv(inf.out);
    const auto rows_two = parse_csv(two.out);
    const std::string header = "n,N_e,d_L,epsilon_min,faist_bound";
    if (rows_inf.empty() || rows_two.empty() || inf.out.rfind(header, 0) != 0 || two.out.rfind(header, 0) != 0) {
        return {false, "missing CSV header"};
    }
    std::size_t mismatches = 0;
    std::size_t count = 0;
    double eps_100 = -1.0;
    double faist_100 = -1.0;
    for (std::size_t r = 1; r < rows_inf.size(); r++) {
        const auto &a = rows_inf[r];
        const auto &b = rows_two[r];
        if (a.size() != 5 || b.size() != 5) {
            mismatches++;
            continue;
        }
        const double n = std::stod(a[0]);
        const double ne = std::stod(a[1]);
        const std::string eps = twelve(ne / n);
        const std::string faist = twelve((std::sqrt(2.0) + 2.0) / std::sqrt(n));
        const bool ok = a[2] == "inf" && a[3] == eps && a[4] == faist && b[0] == a[0] && b[1] == a[1] && b[2] == "2" &&
                        b[3] == twelve(ne / n * 0.5) && b[4] == faist;
        mismatches += ok ? 0 : 1;
        if (a[0] == "100" && a[1] == "1") {
            eps_100 = std::stod(a[3]);
            faist_100 = std::stod(b[4]);
        }
        count++;
    }
    const bool pass = count == 60 && rows_two.size() == rows_inf.size() && mismatches == 0 &&
                      std::abs(eps_100 - 0.01) <= 1e-12 && std::abs(faist_100 - 0.3414) <= 5e-5;
    return {pass, std::to_string(count) + " rows, " + std::to_string(mismatches) +
                      " mismatches against N_e/n and (sqrt2+2)/sqrt n; (100,1,inf) eps=" + twelve(eps_100) +
                      ", (100,1,2) faist=" + twelve(faist_100)};
}

Outcome c11_health(const StatsLog &log, double total_seconds) {
    double worst_gap = 0.0;
    double worst_kkt = 0.0;
    std::size_t bad = 0;
    std::string first_bad;
    for (const auto &[where, s] : log.entries) {
        note_worst(s.gap, worst_gap);
        note_worst(s.kkt_residual, worst_kkt);
        if (!(s.gap <= 1e-8 && s.kkt_residual <= 1e-7)) {
            if (bad == 0) {
                first_bad = where;
            }
            bad++;
        }
    }
    const bool time_ok = total_seconds < 600.0;
    std::string detail = std::to_string(log.entries.size()) + " SDPs, max gap=" + sci(worst_gap) +
                         ", max kkt=" + sci(worst_kkt) + ", " + std::to_string(bad) + " outside tolerance" +
                         (bad ? " (first: " + first_bad + ")" : "") + (time_ok ? ", total<10min" : ", total>=10min");
    return {bad == 0 && !log.entries.empty() && time_ok, detail};
}

}  // namespace

Summary run_all(const Options &options, std::ostream &out) {
    Summary summary;
    StatsLog log;
    const auto suite_start = Clock::now();
    auto rng_for = [&](std::uint64_t k) { return Rng(options.seed * 1000003ULL + k); };
    auto record = [&](const std::string &id, const std::string &title, const std::function<Outcome()> &fn) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
            return;
        }
        Criterion c{id, title, false, "", 0.0};
        const auto start = Clock::now();
        try {
            Outcome o = fn();
            c.pass = o.pass;
            c.detail = o.detail;
        } catch (const std::exception &e) {
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        c.seconds = seconds_since(start);
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.title << ": " << c.detail;
        if (options.show_timings) {
            out << " [" << fmt("%.2f", c.seconds) << " s]";
        }
        out << '\n';
        out.flush();
        (c.pass ? summary.passed : summary.failed)++;
        summary.rows.push_back(std::move(c));
    };

    Rng rng4 = rng_for(4);
    Rng rng5 = rng_for(5);
    Rng rng6 = rng_for(6);
    Rng rng7 = rng_for(7);
    Rng rng9 = rng_for(9);
    record("C1", "headline epsilon_min for n=100, d_L=2, one erasure", c1_headline);
    record("C2", "SDP epsilon_min equals closed form", [&] { return c2_cross_check(log); });
    record("C3", "erasure recursion equals direct Choi state", c3_recursion);
    record("C4", "known-erasure decoder fidelity", [&] { return c4_decoder(rng4); });
    record("C5", "decomposition identity", [&] { return c5_decomposition(rng5, log); });
    record("C6", "Haar second moment", [&] { return c6_haar(rng6); });
    record("C7", "decoder oracle equals Phi(J)/d_L", [&] { return c7_oracle(rng7, log); });
    record("C8", "exact Eastin-Knill gap", c8_ek_gap);
    record("C9", "asymmetry dual routes", [&] { return c9_asymmetry(rng9, log); });
    record("C10", "minimal-error sweep", c10_sweep);
    record("C11", "solver health", [&] { return c11_health(log, seconds_since(suite_start)); });
    out << summary.passed << "/" << summary.rows.size() << " criteria passed\n";
    return summary;
}

}  // namespace covcert::acceptance

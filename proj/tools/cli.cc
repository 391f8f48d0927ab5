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


#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "acceptance.h"
#include "covcert/asymmetry.h"
#include "covcert/certifier.h"
#include "covcert/json_io.h"
#include "covcert/wstate.h"

namespace covcert::cli {

namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::size_t parse_count(const std::string &text, const char *what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        if (text.empty() || text[0] == '-') {
            throw std::invalid_argument(text);
        }
        v = std::stoull(text, &pos);
    } catch (const std::exception &) {
        throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
    if (pos != text.size()) {
        throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        parts.push_back(item);
    }
    if (!text.empty() && text.back() == sep) {
        parts.push_back("");
    }
    return parts;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Common {
    double gap_tol = 1e-8;
    std::size_t max_iter = 100;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format = "json";

    SdpOptions sdp() const {
        SdpOptions o;
        o.gap_tol = gap_tol;
        o.max_iter = max_iter;
        return o;
    }
};

void add_common(CLI::App *cmd, Common &c, const std::string &default_format) {
    c.format = default_format;
    cmd->add_option("--gap-tol", c.gap_tol, "Relative duality gap tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", c.max_iter, "Interior point iteration limit")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Seed for every sampled check");
    cmd->add_option("--out", c.out_path, "Write the result to this file instead of stdout");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const Common &c, const std::string &text, std::ostream &out) {
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + c.out_path);
    }
    f << text;
}

void require_json(const Common &c, const char *cmd) {
    if (c.format != "json") {
        throw UsageError(std::string(cmd) + " only writes json");
    }
}

struct CertifyArgs {
    Common common;
    std::string wstate;
    std::string encoder_path;
    std::string noise_path;
    std::string erase;
    std::optional<double> epsilon;
    std::size_t verify = 0;
};

std::vector<std::size_t> parse_erase(const std::string &text, std::size_t factors) {
    std::vector<std::size_t> erased;
    for (const auto &part : split(text, ',')) {
        const std::size_t i = parse_count(part, "erased index");
        if (i < 1 || i > factors) {
            throw UsageError("erased index " + part + " outside 1.." + std::to_string(factors));
        }
        erased.push_back(i - 1);
    }
    std::vector<std::size_t> sorted = erased;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw UsageError("erased indices must be distinct");
    }
    if (erased.empty() || erased.size() >= factors) {
        throw UsageError("--erase must list a non-empty proper subset of the factors");
    }
    return erased;
}

int cmd_certify(const CertifyArgs &a, std::ostream &out) {
    require_json(a.common, "certify");
    if (a.epsilon && !(*a.epsilon >= 0.0 && *a.epsilon <= 1.0)) {
        throw UsageError("--epsilon must lie in [0, 1]");
    }
    if (a.wstate.empty() == a.encoder_path.empty()) {
        throw UsageError("certify needs exactly one of --wstate or --encoder");
    }
    if (a.erase.empty() == a.noise_path.empty()) {
        throw UsageError("certify needs exactly one of --erase or --noise");
    }
    CertifyOptions opts;
    opts.minentropy.sdp = a.common.sdp();
    opts.verify_covariance = a.verify;
    opts.seed = a.common.seed;

    CertReport report;
    if (!a.wstate.empty()) {
        const WStateSpec spec = parse_wstate(a.wstate);
        const double amplitudes = std::pow(static_cast<double>(spec.d_L + 1), static_cast<double>(spec.n));
        const bool direct = amplitudes <= static_cast<double>(kDenseAmplitudeCap);
        if (!direct && !a.noise_path.empty()) {
            throw UsageError("--noise needs the dense encoder, which is limited to " +
                             std::to_string(kDenseAmplitudeCap) + " amplitudes");
        }
        if (direct) {
            QuantumChannel enc = encoder({spec.n, spec.d_L, 0});
            if (!a.erase.empty()) {
                std::vector<std::size_t> erased = parse_erase(a.erase, spec.n);
                report = certify_erasure_transversal(enc, erased, a.epsilon, opts);
            } else {
                report = certify(enc, channel_from_json(read_json_file(a.noise_path)), a.epsilon, opts);
            }
            report.path = "sdp";
        } else {
            if (a.verify > 0) {
                throw UsageError("--verify-covariance needs the dense encoder");
            }
            std::vector<std::size_t> erased = parse_erase(a.erase, spec.n);
            const WCodeParams p{spec.n, spec.d_L, erased.size()};
            report = make_report(analytic_phi(p), spec.d_L, a.epsilon);
            report.epsilon_min = analytic_epsilon_min(p);
            report.erased = erased;
            report.path = "analytic";
        }
    } else {
        QuantumChannel enc = channel_from_json(read_json_file(a.encoder_path));
        if (!a.erase.empty()) {
            std::vector<std::size_t> erased = parse_erase(a.erase, enc.out_shape().size());
            report = certify_erasure_transversal(enc, erased, a.epsilon, opts);
        } else {
            report = certify(enc, channel_from_json(read_json_file(a.noise_path)), a.epsilon, opts);
        }
    }
    emit(a.common, report_to_json(report).dump(2) + "\n", out);
    return report.verdict && *report.verdict == Verdict::kNotCorrectable ? kExitNegative : kExitOk;
}

struct SweepArgs {
    Common common;
    std::string n = "10:200:10";
    std::string ne = "1";
    std::string dl = "inf";
    std::size_t threads = 0;
};

int cmd_sweep(const SweepArgs &a, std::ostream &out) {
    const std::vector<std::size_t> ns = parse_index_list(a.n);
    const std::vector<std::size_t> nes = parse_index_list(a.ne);
    const std::optional<std::size_t> dl = parse_dl(a.dl);
    if (std::find(ns.begin(), ns.end(), std::size_t{0}) != ns.end()) {
        throw UsageError("--n values must be positive");
    }
    std::vector<SweepRow> rows = sweep_fig2(ns, nes, dl, a.threads);
    std::ostringstream text;
    if (a.common.format == "csv") {
        text << "n,N_e,d_L,epsilon_min,faist_bound\n";
        for (const auto &r : rows) {
            text << r.n << ',' << r.N_e << ',' << (r.d_L ? std::to_string(*r.d_L) : std::string("inf")) << ','
                 << format_number(r.epsilon_min) << ',' << format_number(r.faist_bound) << '\n';
        }
    } else {
        Json arr = Json::array();
        for (const auto &r : rows) {
            arr.push_back(Json{{"n", r.n},
                               {"N_e", r.N_e},
                               {"d_L", r.d_L ? Json(*r.d_L) : Json("inf")},
                               {"epsilon_min", number_json(r.epsilon_min)},
                               {"faist_bound", number_json(r.faist_bound)}});
        }
        text << arr.dump(2) << '\n';
    }
    emit(a.common, text.str(), out);
    return kExitOk;
}

struct HminArgs {
    Common common;
    std::string matrix_path;
    std::string dims;
};

int cmd_hmin(const HminArgs &a, std::ostream &out) {
    require_json(a.common, "hmin");
    Json j = read_json_file(a.matrix_path);
    ComplexMatrix sigma;
    std::vector<std::size_t> dims;
    if (j.is_object()) {
        if (!j.contains("matrix")) {
            throw FormatError("hmin input needs a \"matrix\" entry");
        }
        sigma = matrix_from_json(j.at("matrix"));
        if (j.contains("dims")) {
            dims = j.at("dims").get<std::vector<std::size_t>>();
        }
    } else {
        sigma = matrix_from_json(j);
    }
    if (!a.dims.empty()) {
        dims.clear();
        for (const auto &part : split(a.dims, ',')) {
            dims.push_back(parse_count(part, "dimension"));
        }
    }
    if (dims.size() != 2 || dims[0] == 0 || dims[1] == 0) {
        throw UsageError("hmin needs two dimensions dA,dB (--dims or \"dims\")");
    }
    if (!is_hermitian(sigma)) {
        throw FormatError("matrix is not Hermitian");
    }
    MinEntropyOptions opts;
    opts.sdp = a.common.sdp();
    MinEntropyResult r = hmin(sigma, dims[0], dims[1], opts);
    emit(a.common, hmin_to_json(r).dump(2) + "\n", out);
    return kExitOk;
}

struct AsymArgs {
    Common common;
    std::string query_path;
    std::optional<double> epsilon;
};

int cmd_asym(const AsymArgs &a, std::ostream &out) {
    require_json(a.common, "asym");
    ConversionQuery q = query_from_json(read_json_file(a.query_path));
    if (a.epsilon) {
        q.epsilon = *a.epsilon;
        q.validate();
    }
    ConversionVerdict v = multi_state_conversion(q, a.common.sdp());
    emit(a.common, verdict_to_json(v).dump(2) + "\n", out);
    return v.feasible ? kExitOk : kExitNegative;
}

struct SelftestArgs {
    Common common;
    bool timings = false;
    std::vector<std::string> only;
};

int cmd_selftest(const SelftestArgs &a, std::ostream &out) {
    acceptance::Options opts;
    opts.seed = a.common.seed;
    opts.show_timings = a.timings;
    opts.only = a.only;
    std::ostringstream text;
    const acceptance::Summary s = acceptance::run_all(opts, text);
    emit(a.common, text.str(), out);
    return s.failed == 0 ? kExitOk : kExitNegative;
}

}  // namespace

std::vector<std::size_t> parse_index_list(const std::string &text) {
    if (text.empty()) {
        throw UsageError("empty list");
    }
    std::vector<std::size_t> values;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts = split(text, ':');
        if (parts.size() < 2 || parts.size() > 3) {
            throw UsageError("range must be a:b or a:b:c, got '" + text + "'");
        }
        const std::size_t lo = parse_count(parts[0], "range start");
        const std::size_t hi = parse_count(parts[1], "range end");
        const std::size_t step = parts.size() == 3 ? parse_count(parts[2], "range step") : 1;
        if (step == 0 || hi < lo) {
            throw UsageError("invalid range '" + text + "'");
        }
        for (std::size_t v = lo; v <= hi; v += step) {
            values.push_back(v);
        }
        return values;
    }
    for (const auto &part : split(text, ',')) {
        values.push_back(parse_count(part, "list entry"));
    }
    return values;
}

WStateSpec parse_wstate(const std::string &text) {
    WStateSpec spec;
    bool have_n = false;
    bool have_dl = false;
    for (const auto &part : split(text, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--wstate entries must be key=value, got '" + part + "'");
        }
        const std::string key = part.substr(0, eq);
        const std::string value = part.substr(eq + 1);
        if (key == "n") {
            spec.n = parse_count(value, "n");
            have_n = true;
        } else if (key == "dl") {
            spec.d_L = parse_count(value, "dl");
            have_dl = true;
        } else {
            throw UsageError("unknown --wstate key '" + key + "'");
        }
    }
    if (!have_n || !have_dl) {
        throw UsageError("--wstate needs n=... and dl=...");
    }
    if (spec.n < 1 || spec.d_L < 2) {
        throw UsageError("--wstate needs n >= 1 and dl >= 2");
    }
    return spec;
}

std::optional<std::size_t> parse_dl(const std::string &text) {
    if (text == "inf") {
        return std::nullopt;
    }
    const std::size_t d = parse_count(text, "dl");
    if (d < 2) {
        throw UsageError("dl must be at least 2");
    }
    return d;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Covariant code certification and asymmetry tools", "covcert"};
    app.require_subcommand(1);

    CertifyArgs certify_args;
    CLI::App *certify_cmd = app.add_subcommand("certify", "Decide epsilon-correctability from the min-entropy");
    add_common(certify_cmd, certify_args.common, "json");
    certify_cmd->add_option("--wstate", certify_args.wstate, "W-state code, e.g. n=100,dl=2");
    certify_cmd->add_option("--encoder", certify_args.encoder_path, "Encoder channel JSON");
    certify_cmd->add_option("--noise", certify_args.noise_path, "Noise channel JSON");
    certify_cmd->add_option("--erase", certify_args.erase, "Erased factors, 1-based, comma separated");
    certify_cmd->add_option("--epsilon", certify_args.epsilon, "Target error");
    certify_cmd->add_option("--verify-covariance", certify_args.verify, "Sampled covariance check size");

    SweepArgs sweep_args;
    CLI::App *sweep_cmd = app.add_subcommand("sweep", "Minimal error of the W-state code over n and N_e (CSV)");
    add_common(sweep_cmd, sweep_args.common, "csv");
    sweep_cmd->add_option("--n", sweep_args.n, "Range a:b:c or list of n");
    sweep_cmd->add_option("--ne", sweep_args.ne, "List of erased counts");
    sweep_cmd->add_option("--dl", sweep_args.dl, "Logical dimension or inf");
    sweep_cmd->add_option("--threads", sweep_args.threads, "Worker threads (0 = hardware)");

    HminArgs hmin_args;
    CLI::App *hmin_cmd = app.add_subcommand("hmin", "Conditional min-entropy of a PSD matrix");
    add_common(hmin_cmd, hmin_args.common, "json");
    hmin_cmd->add_option("--matrix", hmin_args.matrix_path, "Matrix JSON")->required();
    hmin_cmd->add_option("--dims", hmin_args.dims, "dA,dB");

    AsymArgs asym_args;
    CLI::App *asym_cmd = app.add_subcommand("asym", "Multi-state conversion under a finite group");
    add_common(asym_cmd, asym_args.common, "json");
    asym_cmd->add_option("--query", asym_args.query_path, "Conversion query JSON")->required();
    asym_cmd->add_option("--epsilon", asym_args.epsilon, "Override the query's epsilon");

    SelftestArgs selftest_args;
    CLI::App *selftest_cmd = app.add_subcommand("selftest", "Run the acceptance suite");
    add_common(selftest_cmd, selftest_args.common, "csv");
    selftest_cmd->add_flag("--timings", selftest_args.timings, "Include wall times in the table");
    selftest_cmd->add_option("--only", selftest_args.only, "Run only these criteria (e.g. C3,C7)")->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitError;
    }

    try {
        if (certify_cmd->parsed()) {
            return cmd_certify(certify_args, out);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_args, out);
        }
        if (hmin_cmd->parsed()) {
            return cmd_hmin(hmin_args, out);
        }
        if (asym_cmd->parsed()) {
            return cmd_asym(asym_args, out);
        }
        if (selftest_cmd->parsed()) {
            return cmd_selftest(selftest_args, out);
        }
    } catch (const CovarianceError &e) {
        err << "covcert: covariance check failed: " << e.what() << '\n';
        return kExitError;
    } catch (const SolverError &e) {
        err << "covcert: solver failure: " << e.what() << '\n';
        return kExitError;
    } catch (const Json::exception &e) {
        err << "covcert: malformed JSON: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception &e) {
        err << "covcert: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace covcert::cli

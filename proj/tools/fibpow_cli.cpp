// fibpow: command-line driver for the verification pipeline.
// Data goes to stdout, progress to stderr. Exit codes: 0 success,
// 2 I/O error, 3 configuration error, 4 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "fibpow/bounds.hpp"
#include "fibpow/certs.hpp"
#include "fibpow/kraus.hpp"
#include "fibpow/powertest.hpp"
#include "fibpow/sieve.hpp"
#include "fibpow/threelog.hpp"

using namespace fibpow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 3;
constexpr int kExitVerify = 4;

long ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_scan(SeqKind kind, u64 min_n, u64 max_n, const std::string& out_path) {
    std::ofstream out;
    if (!out_path.empty()) {
        out.open(out_path, std::ios::app);
        if (!out) {
            std::cerr << "cannot open " << out_path << "\n";
            return kExitIo;
        }
    }
    auto t0 = std::chrono::steady_clock::now();
    ScanReport rep = scan_range(kind, min_n, max_n, [&](const PowerWitness& w) {
        if (out.is_open()) out << witness_record(w).dump() << "\n";
    });
    nlohmann::ordered_json summary;
    summary["kind"] = seq_kind_name(kind);
    summary["n_lo"] = rep.n_lo;
    summary["n_hi"] = rep.n_hi;
    summary["witnesses"] = rep.witness_count;
    summary["failures"] = rep.failures.size();
    summary["elapsed_ms"] = ms_since(t0);
    std::cout << summary.dump() << "\n";
    if (!rep.clean()) {
        for (const auto& f : rep.failures)
            std::cerr << "no witness for n=" << f.n << " p=" << f.p << "\n";
        return kExitVerify;
    }
    return kExitOk;
}

int cmd_kraus(SeqKind kind, u64 p_min, u64 p_max, u64 k_max, const std::string& out_path) {
    std::ofstream out;
    if (!out_path.empty()) {
        out.open(out_path, std::ios::app);
        if (!out) {
            std::cerr << "cannot open " << out_path << "\n";
            return kExitIo;
        }
    }
    KrausSearchOptions opts;
    opts.k_max = k_max;
    u64 failures = 0, count = 0;
    for (u64 p = p_min; p <= p_max; ++p) {
        if (!is_prime_u64(p)) continue;
        auto t0 = std::chrono::steady_clock::now();
        auto cert = kraus_search(kind, p, opts);
        if (!cert) {
            std::cerr << "kraus: no k <= " << k_max << " for p=" << p << "\n";
            ++failures;
            continue;
        }
        ++count;
        if (out.is_open()) out << kraus_record(*cert, ms_since(t0)).dump() << "\n";
        std::cerr << "p=" << p << " k=" << cert->k << " l=" << cert->l << "\n";
    }
    nlohmann::ordered_json summary;
    summary["kind"] = seq_kind_name(kind);
    summary["certificates"] = count;
    summary["failures"] = failures;
    std::cout << summary.dump() << "\n";
    return failures == 0 ? kExitOk : kExitVerify;
}

int cmd_sieve(SeqKind kind, u64 p, u64 q, const std::string& out_path,
              const std::string& checkpoint, bool resume, u64 l_cap) {
    ThetaBound tb = kind == SeqKind::Fibonacci ? theta_fib(p) : theta_lucas(p);
    std::cerr << "bound: log10(n_max) = " << tb.n_max.log10() << "\n";
    SieveOptions opts;
    opts.l_cap = l_cap;
    opts.checkpoint_path = checkpoint;
    opts.progress = [](const std::string& line) { std::cerr << line << "\n"; };
    auto t0 = std::chrono::steady_clock::now();
    SieveSession s;
    if (resume) {
        if (checkpoint.empty()) {
            std::cerr << "--resume needs --checkpoint\n";
            return kExitConfig;
        }
        s = resume_sieve(load_checkpoint(checkpoint), tb.n_max, opts);
    } else {
        s = run_sieve(kind, p, q, tb.n_max, opts);
    }
    nlohmann::ordered_json rec = sieve_record(s, ms_since(t0));
    std::cout << rec.dump() << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::app);
        if (!out) {
            std::cerr << "cannot open " << out_path << "\n";
            return kExitIo;
        }
        out << rec.dump() << "\n";
    }
    return s.contradiction ? kExitOk : kExitVerify;
}

int cmd_bounds(SeqKind kind, u64 p) {
    ThetaBound tb = kind == SeqKind::Fibonacci ? theta_fib(p) : theta_lucas(p);
    nlohmann::ordered_json j;
    j["p"] = p;
    j["kind"] = seq_kind_name(kind);
    j["log10_theta"] = tb.theta.log10();
    j["log10_n_max"] = tb.n_max.log10();
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_threelog_check(const std::string& params_path, const std::string& reading_name) {
    std::ifstream in(params_path);
    if (!in) {
        std::cerr << "cannot open " << params_path << "\n";
        return kExitIo;
    }
    nlohmann::json pj;
    in >> pj;
    ThreeLogParams p;
    auto get_z = [&](const char* k) { return mpz_class(pj.at(k).get<std::string>()); };
    p.K = get_z("K");
    p.L = get_z("L");
    p.R = get_z("R");
    p.R1 = get_z("R1");
    p.R2 = get_z("R2");
    p.S = get_z("S");
    p.S1 = get_z("S1");
    p.S2 = get_z("S2");
    p.T = get_z("T");
    p.T1 = get_z("T1");
    p.T2 = get_z("T2");
    p.b1 = get_z("b1");
    p.b2 = get_z("b2");
    p.b3 = get_z("b3");
    p.rho = Real(pj.at("rho").get<std::string>());
    p.D = Real(pj.at("D").get<std::string>());
    p.a1 = Real(pj.at("a1").get<std::string>());
    p.a2 = Real(pj.at("a2").get<std::string>());
    p.a3 = Real(pj.at("a3").get<std::string>());
    ConditionReading reading = ConditionReading::Conjunction;
    if (reading_name == "theorem") reading = ConditionReading::Theorem;
    else if (reading_name == "proposition") reading = ConditionReading::Proposition;
    else if (reading_name != "conjunction") {
        std::cerr << "unknown reading " << reading_name << "\n";
        return kExitConfig;
    }
    MauriceVerdict v = maurice_check(p, reading);
    nlohmann::ordered_json j;
    j["structure_ok"] = v.structure_ok;
    if (!v.structure_ok) j["structure_msg"] = v.structure_msg;
    j["o"] = v.cond_o;
    j["i"] = v.cond_i;
    j["ii"] = v.cond_ii;
    j["iii"] = v.cond_iii;
    j["iv"] = v.cond_iv;
    j["passes"] = v.passes();
    if (v.structure_ok) {
        j["lambda_prime_log_bound"] = v.lambda_prime_log_bound.to_double();
        j["r_window"] = v.windows.r_window;
        j["t_window"] = v.windows.t_window;
    }
    std::cout << j.dump() << "\n";
    return v.passes() ? kExitOk : kExitVerify;
}

int cmd_threelog_reduce() {
    ReductionResult r = fib_p_reduction();
    nlohmann::ordered_json j;
    j["first_bound"] = r.first_bound;
    nlohmann::ordered_json iters = nlohmann::ordered_json::array();
    for (const auto& it : r.iterations) {
        nlohmann::ordered_json ij;
        ij["p_in"] = it.p_in;
        ij["L"] = it.L;
        ij["rho"] = it.rho;
        ij["m"] = it.m;
        ij["S1"] = it.s1;
        ij["S2"] = it.s2;
        ij["maurice"] = it.maurice_passed;
        ij["p_main"] = it.p_main;
        ij["p_c1c2"] = it.p_c1c2;
        ij["p_c3"] = it.p_c3;
        ij["p_out"] = it.p_out;
        ij["r_window"] = it.r_window;
        ij["t_window"] = it.t_window;
        iters.push_back(ij);
    }
    j["iterations"] = iters;
    j["final_bound"] = r.final_bound;
    j["converged"] = r.converged;
    j["closes_contradiction"] = r.closes_contradiction;
    std::cout << j.dump(2) << "\n";
    return r.closes_contradiction ? kExitOk : kExitVerify;
}

int cmd_verify(const std::string& in_path) {
    VerifyOutcome out = verify_certificate_file(in_path);
    nlohmann::ordered_json j;
    j["records"] = out.records;
    j["failures"] = out.failures.size();
    std::cout << j.dump() << "\n";
    for (const auto& [line, why] : out.failures)
        std::cerr << "line " << line << ": " << why << "\n";
    return out.ok() ? kExitOk : kExitVerify;
}

int cmd_certify(const std::string& out_path) {
    // Desk-scale pipeline: scan a short range, Kraus certificates for
    // small p, the p = 7 sieve, and the bound comparison.
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
        std::cerr << "cannot open " << out_path << "\n";
        return kExitIo;
    }
    out.close();

    int rc = cmd_scan(SeqKind::Fibonacci, 13, 200, out_path);
    if (rc != kExitOk) return rc;
    rc = cmd_scan(SeqKind::Lucas, 4, 200, out_path);
    if (rc != kExitOk) return rc;
    for (u64 p : {7, 11, 13, 17, 19, 23}) {
        rc = cmd_kraus(SeqKind::Fibonacci, p, p, 1000, out_path);
        if (rc != kExitOk) return rc;
        rc = cmd_kraus(SeqKind::Lucas, p, p, 1000, out_path);
        if (rc != kExitOk) return rc;
    }
    rc = cmd_sieve(SeqKind::Fibonacci, 7, 5, out_path, "", false, 50000);
    if (rc != kExitOk) return rc;
    std::cerr << "verifying " << out_path << "\n";
    return cmd_verify(out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification pipeline for Fibonacci/Lucas perfect-power computations"};
    app.require_subcommand(1);

    std::string seq = "fib", out_path, in_path, checkpoint, params_path, reading = "conjunction";
    u64 min_n = 13, max_n = 2000, p = 7, q = 5, p_min = 7, p_max = 1009, k_max = 1000, l_cap = 50000;
    bool resume = false;

    auto* scan = app.add_subcommand("scan", "witness scan over an index range");
    scan->add_option("--seq", seq, "fib|lucas");
    scan->add_option("--min-n", min_n);
    scan->add_option("--max-n", max_n);
    scan->add_option("--out", out_path, "certificate file (JSON lines)");

    auto* kraus = app.add_subcommand("kraus", "Kraus certificates for a prime range");
    kraus->add_option("--seq", seq);
    kraus->add_option("--p-min", p_min);
    kraus->add_option("--p-max", p_max);
    kraus->add_option("--k-max", k_max);
    kraus->add_option("--out", out_path);

    auto* sieve = app.add_subcommand("sieve", "congruence sieve against the analytic bound");
    sieve->add_option("--seq", seq);
    sieve->add_option("--p", p);
    sieve->add_option("--q", q);
    sieve->add_option("--out", out_path);
    sieve->add_option("--checkpoint", checkpoint);
    sieve->add_flag("--resume", resume);
    sieve->add_option("--l-cap", l_cap);

    auto* bounds = app.add_subcommand("bounds", "print log10 Theta and log10 n_max");
    bounds->add_option("--seq", seq);
    bounds->add_option("--p", p);

    auto* threelog = app.add_subcommand("threelog", "three-log checker and reduction");
    auto* tl_check = threelog->add_subcommand("check", "evaluate a parameter block");
    tl_check->add_option("--params", params_path)->required();
    tl_check->add_option("--reading", reading, "theorem|proposition|conjunction");
    auto* tl_reduce = threelog->add_subcommand("reduce", "run the iterated exponent reduction");
    std::string tl_seq = "fib";
    tl_reduce->add_option("--seq", tl_seq);

    auto* verify = app.add_subcommand("verify", "re-check a certificate file");
    verify->add_option("--in", in_path)->required();

    auto* certify = app.add_subcommand("certify", "run the desk-scale pipeline end to end");
    certify->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (scan->parsed()) return cmd_scan(seq_kind_from_name(seq), min_n, max_n, out_path);
        if (kraus->parsed()) return cmd_kraus(seq_kind_from_name(seq), p_min, p_max, k_max, out_path);
        if (sieve->parsed()) return cmd_sieve(seq_kind_from_name(seq), p, q, out_path, checkpoint, resume, l_cap);
        if (bounds->parsed()) return cmd_bounds(seq_kind_from_name(seq), p);
        if (threelog->parsed()) {
            if (tl_check->parsed()) return cmd_threelog_check(params_path, reading);
            if (tl_reduce->parsed()) {
                if (tl_seq != "fib" && tl_seq != "fibonacci") {
                    std::cerr << "only the Fibonacci reduction is implemented\n";
                    return kExitConfig;
                }
                return cmd_threelog_reduce();
            }
            std::cerr << "threelog needs a subcommand (check|reduce)\n";
            return kExitConfig;
        }
        if (verify->parsed()) return cmd_verify(in_path);
        if (certify->parsed()) return cmd_certify(out_path);
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitConfig;
}

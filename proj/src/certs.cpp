#include "fibpow/certs.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "fibpow/bounds.hpp"

namespace fibpow {

std::string payload_hash(const ordered_json& payload) {
    std::string s = payload.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

ordered_json finalize(ordered_json payload, long elapsed_ms) {
    payload["hash"] = payload_hash(payload);
    if (elapsed_ms >= 0) payload["elapsed_ms"] = elapsed_ms;
    return payload;
}

} // namespace

ordered_json witness_record(const PowerWitness& w, long elapsed_ms) {
    ordered_json j;
    j["stage"] = "scan";
    j["kind"] = seq_kind_name(w.kind);
    j["n"] = w.n;
    j["p"] = w.p;
    j["l"] = w.l;
    j["k"] = w.k;
    return finalize(std::move(j), elapsed_ms);
}

ordered_json kraus_record(const KrausCertificate& c, long elapsed_ms) {
    ordered_json j;
    j["stage"] = "kraus";
    j["kind"] = seq_kind_name(c.kind);
    j["p"] = c.p;
    j["k"] = c.k;
    j["l"] = c.l;
    j["sqrt5"] = c.sqrt5;
    j["a_l_E"] = c.a_l_e;
    j["zeta_count"] = c.zeta_count;
    j["delta_zero"] = c.delta_zero_flagged;
    j["checks"] = {{"a", c.checks.a_l_prime_pm1_mod5}, {"b", c.checks.b_omega_order}, {"c", c.checks.c_traces}};
    if (!c.note.empty()) j["note"] = c.note;
    return finalize(std::move(j), elapsed_ms);
}

ordered_json sieve_record(const SieveSession& s, long elapsed_ms) {
    ordered_json j;
    j["stage"] = "sieve";
    j["kind"] = seq_kind_name(s.kind);
    j["p"] = s.p;
    j["q"] = s.q;
    ordered_json pairs = ordered_json::array();
    for (const auto& pr : s.pairs) pairs.push_back({pr.l, pr.q});
    j["pairs"] = pairs;
    j["modulus_hex"] = s.n_s.modulus.get_str(16);
    ordered_json res = ordered_json::array();
    for (const auto& r : s.n_s.residues) res.push_back(r.get_str(16));
    j["residues_hex"] = res;
    j["lower_bound_hex"] = s.lower_bound.get_str(16);
    j["n_max_log10"] = s.n_max_log10;
    j["contradiction"] = s.contradiction;
    return finalize(std::move(j), elapsed_ms);
}

namespace {

std::string check_hash(const ordered_json& rec) {
    ordered_json payload;
    for (auto it = rec.begin(); it != rec.end(); ++it) {
        if (it.key() == "hash" || it.key() == "elapsed_ms") continue;
        payload[it.key()] = it.value();
    }
    if (!rec.contains("hash")) return "record has no hash";
    if (payload_hash(payload) != rec.at("hash").get<std::string>()) return "payload hash mismatch";
    return "";
}

std::string verify_scan(const ordered_json& rec) {
    PowerWitness w;
    w.kind = seq_kind_from_name(rec.at("kind").get<std::string>());
    w.n = rec.at("n").get<u64>();
    w.p = rec.at("p").get<u64>();
    w.l = rec.at("l").get<u64>();
    w.k = rec.at("k").get<u64>();
    if (!verify_witness(w)) return "witness re-check failed";
    return "";
}

std::string verify_kraus(const ordered_json& rec) {
    KrausCertificate c;
    c.kind = seq_kind_from_name(rec.at("kind").get<std::string>());
    c.p = rec.at("p").get<u64>();
    c.k = rec.at("k").get<u64>();
    c.l = rec.at("l").get<u64>();
    c.sqrt5 = rec.at("sqrt5").get<u64>();
    c.a_l_e = rec.at("a_l_E").get<i64>();
    c.zeta_count = rec.at("zeta_count").get<u64>();
    c.checks.a_l_prime_pm1_mod5 = rec.at("checks").at("a").get<bool>();
    c.checks.b_omega_order = rec.at("checks").at("b").get<bool>();
    c.checks.c_traces = rec.at("checks").at("c").get<bool>();
    std::string why;
    if (!verify_kraus_certificate(c, &why)) return "kraus re-check failed: " + why;
    return "";
}

// Sieve re-check: structural conditions only (no re-search): pair
// validity, K(S) = lcm of the K(l), residue membership of the
// four-element law, and the bound comparison.
std::string verify_sieve(const ordered_json& rec) {
    SeqKind kind = seq_kind_from_name(rec.at("kind").get<std::string>());
    u64 q = rec.at("q").get<u64>();
    mpz_class modulus(rec.at("modulus_hex").get<std::string>(), 16);
    mpz_class lower(rec.at("lower_bound_hex").get<std::string>(), 16);

    mpz_class lcm_all = 1;
    for (const auto& pr : rec.at("pairs")) {
        u64 l = pr[0].get<u64>();
        u64 ql = pr[1].get<u64>();
        if (ql != q) return "pair q mismatch";
        try {
            SievePair check(l, ql);
            (void)check;
        } catch (const std::domain_error& e) {
            return std::string("bad pair: ") + e.what();
        }
        u64 kl = kind == SeqKind::Fibonacci ? std::lcm(l - 1, u64(6)) : l - 1;
        mpz_class klz(static_cast<unsigned long>(kl));
        mpz_class t;
        mpz_lcm(t.get_mpz_t(), lcm_all.get_mpz_t(), klz.get_mpz_t());
        lcm_all = t;
    }
    if (lcm_all != modulus) return "modulus is not lcm of the K(l)";

    std::vector<mpz_class> residues;
    for (const auto& r : rec.at("residues_hex")) residues.emplace_back(r.get<std::string>(), 16);
    if (residues.empty() || residues.front() != 1) return "1 missing from N(S)";
    for (const auto& r : residues) {
        if (r < 0 || r >= modulus) return "residue out of range";
    }
    if (mpz_divisible_ui_p(modulus.get_mpz_t(), 4)) {
        mpz_class half = modulus / 2;
        std::vector<mpz_class> law = {mpz_class(1), mpz_class(half - 1), mpz_class(half + 1), mpz_class(modulus - 1)};
        for (const mpz_class& v : law) {
            if (!std::binary_search(residues.begin(), residues.end(), v))
                return "four-element law violated";
        }
    }
    bool found = false;
    for (const auto& r : residues) {
        if (r == lower) found = true;
    }
    if (!found || lower <= 1) return "lower bound not an element > 1 of N(S)";
    if (rec.at("contradiction").get<bool>()) {
        double lg = rec.at("n_max_log10").get<double>();
        LogMagnitude a = LogMagnitude::from_value(Real(lower));
        LogMagnitude nm(Real(lg) * log(Real(10.0)), 1e-9);
        if (!a.definitely_greater(nm)) return "claimed contradiction but a <= n_max";
    }
    return "";
}

} // namespace

std::string verify_record(const ordered_json& rec) {
    std::string h = check_hash(rec);
    if (!h.empty()) return h;
    std::string stage = rec.at("stage").get<std::string>();
    if (stage == "scan") return verify_scan(rec);
    if (stage == "kraus") return verify_kraus(rec);
    if (stage == "sieve") return verify_sieve(rec);
    return "unknown stage: " + stage;
}

VerifyOutcome verify_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("verify: cannot open " + path);
    VerifyOutcome out;
    std::string line;
    size_t idx = 0;
    while (std::getline(in, line)) {
        ++idx;
        if (line.empty()) continue;
        ++out.records;
        try {
            ordered_json rec = ordered_json::parse(line);
            std::string err = verify_record(rec);
            if (!err.empty()) out.failures.emplace_back(idx, err);
        } catch (const std::exception& e) {
            out.failures.emplace_back(idx, std::string("parse/check error: ") + e.what());
        }
    }
    return out;
}

void append_records(const std::string& path, const std::vector<ordered_json>& recs) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("certs: cannot open " + path);
    for (const auto& r : recs) out << r.dump() << "\n";
}

} // namespace fibpow

#include "fibpow/sieve.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace fibpow {

bool ResidueClassSet::contains(const mpz_class& r) const {
    mpz_class v;
    mpz_fdiv_r(v.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    return std::binary_search(residues.begin(), residues.end(), v);
}

void ResidueClassSet::normalize() {
    for (auto& r : residues) {
        mpz_class v;
        mpz_fdiv_r(v.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
        r = v;
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
}

ResidueClassSet intersect(const ResidueClassSet& a, const ResidueClassSet& b) {
    mpz_class g, l;
    mpz_gcd(g.get_mpz_t(), a.modulus.get_mpz_t(), b.modulus.get_mpz_t());
    l = a.modulus / g * b.modulus;

    // Lift whichever side produces fewer candidates.
    const ResidueClassSet* lift = &a;
    const ResidueClassSet* filt = &b;
    mpz_class lifts_a = l / a.modulus * static_cast<unsigned long>(a.residues.size());
    mpz_class lifts_b = l / b.modulus * static_cast<unsigned long>(b.residues.size());
    if (lifts_b < lifts_a) std::swap(lift, filt);

    mpz_class steps = l / lift->modulus;
    if (!steps.fits_ulong_p())
        throw std::runtime_error("intersect: lift factor too large");
    unsigned long k = steps.get_ui();

    ResidueClassSet out;
    out.modulus = l;
    for (const mpz_class& r : lift->residues) {
        mpz_class x = r;
        for (unsigned long i = 0; i < k; ++i, x += lift->modulus) {
            if (filt->contains(x)) out.residues.push_back(x);
        }
    }
    std::sort(out.residues.begin(), out.residues.end());
    return out;
}

SievePair::SievePair(u64 l_, u64 q_) : l(l_), q(q_) {
    if (!is_prime_u64(l) || l == 2 || l == 5) throw std::domain_error("sieve pair: bad l");
    u64 r5 = l % 5;
    if (r5 != 1 && r5 != 4) throw std::domain_error("sieve pair: l must be +-1 (mod 5)");
    for (u64 f : prime_factors(l - 1)) {
        if (f >= 25000) throw std::domain_error("sieve pair: prime factor of l-1 exceeds 25000");
    }
    if (q < 5 || !is_prime_u64(q)) throw std::domain_error("sieve pair: q must be a prime >= 5");
}

namespace {

// Shared machinery for the two kinds. The Frey coefficient c(n) and the
// singularity test differ; trace lookups are memoized per coefficient.
class TraceMemo {
public:
    TraceMemo(u64 l) : l_(l), table_(l), memo_(l, kUnset) {
        chi_minus1_ = table_.chi(l - 1);
    }

    i64 trace_fib(u64 h) {
        h %= l_;
        if (memo_[h] != kUnset) return memo_[h];
        CurveModL c{l_, 0, h, 0, l_ - 1, 0};
        i64 a = trace_of_frobenius(c, table_).a_l;
        memo_[h] = a;
        u64 neg = (l_ - h) % l_;
        if (memo_[neg] == kUnset) memo_[neg] = chi_minus1_ * a;
        return a;
    }

    i64 trace_lucas(u64 f) {
        f %= l_;
        if (memo_[f] != kUnset) return memo_[f];
        CurveModL c{l_, 0, submod(0, mulmod(5, f, l_), l_), 0, 5 % l_, 0};
        i64 a = trace_of_frobenius(c, table_).a_l;
        memo_[f] = a;
        u64 neg = (l_ - f) % l_;
        if (memo_[neg] == kUnset) memo_[neg] = chi_minus1_ * a;
        return a;
    }

    const QuadTable& table() const { return table_; }

private:
    static constexpr i64 kUnset = INT64_MIN;
    u64 l_;
    QuadTable table_;
    std::vector<i64> memo_;
    int chi_minus1_;
};

} // namespace

ResidueClassSet n_set_fib(u64 l, u64 q) {
    SievePair check(l, q);
    u64 K = std::lcm(l - 1, u64(6));
    i64 a_e = trace_of_frobenius(CurveCatalog::builtin().by_label("20A2").reduce(l)).a_l;
    bool singular_kept = has_prime_factor_above(static_cast<u64>(static_cast<i64>(l) + 1 - a_e), q)
                      || has_prime_factor_above(static_cast<u64>(static_cast<i64>(l) + 1 + a_e), q);
    TraceMemo memo(l);

    ResidueClassSet out;
    out.modulus = K;
    u64 f0 = 0 % l, f1 = 1 % l;
    for (u64 n = 0; n < K; ++n) {
        if (std::gcd(n, K) == 1) {
            u64 Ln = submod(addmod(f1, f1, l), f0, l);
            u64 r6 = n % 6;
            u64 h = (r6 == 1) ? Ln : submod(0, Ln, l); // units mod K are +-1 mod 6
            bool keep;
            if (addmod(mulmod(h, h, l), 4, l) == 0) {
                keep = singular_kept;
            } else {
                i64 d = memo.trace_fib(h) - a_e;
                keep = (d == 0) || has_prime_factor_above(static_cast<u64>(std::llabs(d)), q);
            }
            if (keep) out.residues.push_back(mpz_class(static_cast<unsigned long>(n)));
        }
        u64 f2 = addmod(f0, f1, l);
        f0 = f1;
        f1 = f2;
    }
    return out;
}

ResidueClassSet n_set_lucas(u64 l, u64 q) {
    SievePair check(l, q);
    u64 K = l - 1;
    i64 a_e = trace_of_frobenius(CurveCatalog::builtin().by_label("200B1").reduce(l)).a_l;
    bool singular_kept = has_prime_factor_above(static_cast<u64>(static_cast<i64>(l) + 1 - a_e), q)
                      || has_prime_factor_above(static_cast<u64>(static_cast<i64>(l) + 1 + a_e), q);
    TraceMemo memo(l);

    ResidueClassSet out;
    out.modulus = K;
    u64 f0 = 0 % l, f1 = 1 % l;
    for (u64 n = 0; n < K; ++n) {
        if (std::gcd(n, K) == 1) {
            bool keep;
            if (submod(mulmod(5, mulmod(f0, f0, l), l), 4, l) == 0) {
                keep = singular_kept;
            } else {
                i64 d = memo.trace_lucas(f0) - a_e;
                keep = (d == 0) || has_prime_factor_above(static_cast<u64>(std::llabs(d)), q);
            }
            if (keep) out.residues.push_back(mpz_class(static_cast<unsigned long>(n)));
        }
        u64 f2 = addmod(f0, f1, l);
        f0 = f1;
        f1 = f2;
    }
    return out;
}

ResidueClassSet n_set(SeqKind kind, u64 l, u64 q) {
    return kind == SeqKind::Fibonacci ? n_set_fib(l, q) : n_set_lucas(l, q);
}

namespace {

struct PrimePower {
    u64 p;
    unsigned e;
};

// Factorization of the stage modulus M; base primes as in the published
// run, then one new prime per stage.
std::vector<PrimePower> base_modulus_factors() {
    return {{2, 5}, {3, 3}, {5, 2}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {19, 1}};
}

mpz_class modulus_value(const std::vector<PrimePower>& fs) {
    mpz_class m = 1;
    for (const auto& f : fs) {
        for (unsigned i = 0; i < f.e; ++i) m *= static_cast<unsigned long>(f.p);
    }
    return m;
}

// Divisors d of M with d < cap, by DFS over the factorization.
void divisors_below(const std::vector<PrimePower>& fs, size_t idx, u64 cur, u64 cap, std::vector<u64>& out) {
    if (idx == fs.size()) {
        out.push_back(cur);
        return;
    }
    u64 v = cur;
    for (unsigned e = 0; e <= fs[idx].e; ++e) {
        divisors_below(fs, idx + 1, v, cap, out);
        if (v > cap / fs[idx].p) break;
        v *= fs[idx].p;
    }
}

std::vector<u64> candidate_ls(const std::vector<PrimePower>& fs, u64 cap) {
    std::vector<u64> divs;
    divisors_below(fs, 0, 1, cap, divs);
    std::vector<u64> ls;
    for (u64 d : divs) {
        u64 l = d + 1;
        if (l > cap || l == 2 || l == 5) continue;
        u64 r5 = l % 5;
        if (r5 != 1 && r5 != 4) continue;
        if (!is_prime_u64(l)) continue;
        ls.push_back(l);
    }
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    return ls;
}

void emit(const SieveOptions& opts, const std::string& line) {
    if (opts.progress) opts.progress(line);
}

mpz_class second_element(const ResidueClassSet& s) {
    for (const mpz_class& r : s.residues) {
        if (r > 1) return r;
    }
    return 0;
}

double log10_mpz(const mpz_class& v) {
    if (v <= 0) return 0.0;
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return (std::log(d) + exp2 * std::log(2.0)) / std::log(10.0);
}

bool bound_exceeded(const mpz_class& a, const LogMagnitude& n_max) {
    if (a <= 1) return false;
    LogMagnitude la = LogMagnitude::from_value(Real(a));
    return la.definitely_greater(n_max);
}

} // namespace

SieveSession run_sieve(SeqKind kind, u64 p, u64 q, const LogMagnitude& n_max,
                       const SieveOptions& opts) {
    if (q >= p) throw std::domain_error("run_sieve: needs q < p");
    SieveSession s;
    s.kind = kind;
    s.p = p;
    s.q = q;
    s.n_s.modulus = 1;
    s.n_s.residues = {mpz_class(0)};
    s.n_max_log10 = (n_max.ln() / log(Real(10.0))).to_double();
    return resume_sieve(std::move(s), n_max, opts);
}

SieveSession resume_sieve(SieveSession s, const LogMagnitude& n_max, const SieveOptions& opts) {
    std::vector<PrimePower> factors = base_modulus_factors();
    // Reapply stage extensions recorded in the history.
    u64 next_prime = 23;
    for (size_t i = 0; i < s.stage_history.size(); ++i) {
        factors.push_back({next_prime, 1});
        u64 np = next_prime + 2;
        while (!is_prime_u64(np)) np += 2;
        next_prime = np;
    }

    std::vector<u64> used;
    for (const auto& pr : s.pairs) used.push_back(pr.l);
    std::sort(used.begin(), used.end());

    for (unsigned stage = 0; stage < opts.max_stage_primes; ++stage) {
        mpz_class M = modulus_value(factors);
        s.target_modulus = M;
        std::vector<u64> ls = candidate_ls(factors, opts.l_cap);

        bool done = false;
        for (u64 l : ls) {
            if (std::binary_search(used.begin(), used.end(), l)) continue;
            ResidueClassSet nl = n_set(s.kind, l, s.q);
            s.n_s = intersect(s.n_s, nl);
            s.pairs.emplace_back(l, s.q);
            used.insert(std::lower_bound(used.begin(), used.end(), l), l);
            mpz_class a = second_element(s.n_s);
            s.lower_bound = a;
            char buf[128];
            std::snprintf(buf, sizeof(buf), "l=%llu |N|=%zu log10(a)=%.3f",
                          static_cast<unsigned long long>(l), s.n_s.residues.size(), log10_mpz(a));
            emit(opts, buf);
            if (!opts.checkpoint_path.empty()) save_checkpoint(s, opts.checkpoint_path);
            if (s.n_s.residues.size() == 4 && s.n_s.modulus == M) {
                done = true;
                break;
            }
        }

        SieveStageRecord rec;
        rec.modulus = M;
        rec.n_set = s.n_s.residues;
        rec.lower_bound = s.lower_bound;
        rec.pairs_used = s.pairs.size();
        s.stage_history.push_back(rec);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "stage done: M has %zu prime factors, |N|=%zu, log10(a)=%.3f%s",
                      factors.size(), s.n_s.residues.size(), log10_mpz(s.lower_bound),
                      done ? "" : " (stabilized without reaching 4)");
        emit(opts, buf);

        if (bound_exceeded(s.lower_bound, n_max)) {
            s.contradiction = true;
            if (!opts.checkpoint_path.empty()) save_checkpoint(s, opts.checkpoint_path);
            return s;
        }

        factors.push_back({next_prime, 1});
        u64 np = next_prime + 2;
        while (!is_prime_u64(np)) np += 2;
        next_prime = np;
    }
    return s; // exhausted; caller inspects contradiction flag
}

namespace {

std::string to_hex(const mpz_class& v) { return v.get_str(16); }
mpz_class from_hex(const std::string& s) { return mpz_class(s, 16); }

} // namespace

void save_checkpoint(const SieveSession& s, const std::string& path) {
    nlohmann::ordered_json j;
    j["kind"] = seq_kind_name(s.kind);
    j["p"] = s.p;
    j["q"] = s.q;
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& pr : s.pairs) pairs.push_back({pr.l, pr.q});
    j["pairs"] = pairs;
    j["modulus_hex"] = to_hex(s.n_s.modulus);
    nlohmann::ordered_json res = nlohmann::ordered_json::array();
    for (const auto& r : s.n_s.residues) res.push_back(to_hex(r));
    j["residues_hex"] = res;
    j["lower_bound_hex"] = to_hex(s.lower_bound);
    j["stages"] = s.stage_history.size();
    j["contradiction"] = s.contradiction;

    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("checkpoint: cannot write " + tmp);
        out << j.dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("checkpoint: rename failed for " + path);
}

SieveSession load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    nlohmann::json j;
    in >> j;
    SieveSession s;
    s.kind = seq_kind_from_name(j.at("kind").get<std::string>());
    s.p = j.at("p").get<u64>();
    s.q = j.at("q").get<u64>();
    for (const auto& pr : j.at("pairs")) s.pairs.emplace_back(pr[0].get<u64>(), pr[1].get<u64>());
    s.n_s.modulus = from_hex(j.at("modulus_hex").get<std::string>());
    for (const auto& r : j.at("residues_hex")) s.n_s.residues.push_back(from_hex(r.get<std::string>()));
    s.lower_bound = from_hex(j.at("lower_bound_hex").get<std::string>());
    s.stage_history.resize(j.at("stages").get<size_t>());
    s.contradiction = j.at("contradiction").get<bool>();
    return s;
}

} // namespace fibpow

#include "fibpow/powertest.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace fibpow {

namespace {

// log(omega)/log(2) to 30 significant digits, rounded up.
double cap_constant() {
    static const double c = [] {
        mpfr_t w, num, den;
        mpfr_init2(w, 160);
        mpfr_init2(num, 160);
        mpfr_init2(den, 160);
        mpfr_sqrt_ui(w, 5, MPFR_RNDU);
        mpfr_add_ui(w, w, 1, MPFR_RNDU);
        mpfr_div_ui(w, w, 2, MPFR_RNDU);
        mpfr_log(num, w, MPFR_RNDU);
        mpfr_const_log2(den, MPFR_RNDD);
        mpfr_div(num, num, den, MPFR_RNDU);
        double r = mpfr_get_d(num, MPFR_RNDU);
        mpfr_clears(w, num, den, nullptr);
        return r;
    }();
    return c;
}

u64 value_mod(SeqKind kind, u64 n, u64 l) {
    FibLucasPair fl = fib_lucas_mod(n, l);
    return kind == SeqKind::Fibonacci ? fl.f : fl.g;
}

// Independent powering path for witness re-checks: left-to-right binary
// exponentiation (powmod in modmath is right-to-left).
u64 powmod_msb(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    if (exp == 0) return 1 % m;
    int top = 63;
    while (!((exp >> top) & 1)) --top;
    u64 r = base % m;
    for (int i = top - 1; i >= 0; --i) {
        r = mulmod(r, r, m);
        if ((exp >> i) & 1) r = mulmod(r, base % m, m);
    }
    return r;
}

} // namespace

u64 exponent_cap(u64 n) {
    return static_cast<u64>(static_cast<double>(n) * cap_constant()) + 1;
}

std::optional<PowerWitness> find_witness(SeqKind kind, u64 n, u64 p, u64 l_budget) {
    if (!is_prime_u64(p)) throw std::domain_error("find_witness: p must be prime");
    u64 tried = 0;
    // l = 1 (mod p) and l odd: l = 2jp + 1 for odd p, every odd prime for p = 2.
    u64 step = (p == 2) ? 2 : 2 * p;
    for (u64 l = 1 + step; tried < l_budget; l += step) {
        u64 r5 = l % 5;
        if (r5 != 1 && r5 != 4) continue;
        if (!is_prime_u64(l)) continue;
        ++tried;
        u64 v = value_mod(kind, n, l);
        if (v == 0) continue;
        u64 k = (l - 1) / p;
        if (powmod(v, k, l) != 1) {
            return PowerWitness{kind, n, p, l, k};
        }
    }
    return std::nullopt;
}

bool verify_witness(const PowerWitness& w) {
    if (!is_prime_u64(w.l) || !is_prime_u64(w.p)) return false;
    if ((w.l - 1) % w.p != 0 || w.k != (w.l - 1) / w.p) return false;
    u64 r5 = w.l % 5;
    if (r5 != 1 && r5 != 4) return false;
    u64 v = value_mod(w.kind, w.n, w.l);
    if (v == 0) return false;
    return powmod_msb(v, w.k, w.l) != 1;
}

ScanReport scan_range(SeqKind kind, u64 n_lo, u64 n_hi,
                      const std::function<void(const PowerWitness&)>& witness_sink,
                      u64 l_budget) {
    u64 floor_n = kind == SeqKind::Fibonacci ? 13 : 4;
    if (n_lo < floor_n) throw std::domain_error("scan_range: n_lo below the scan floor");
    ScanReport rep;
    rep.kind = kind;
    rep.n_lo = n_lo;
    rep.n_hi = n_hi;
    std::vector<u64> primes = primes_up_to(exponent_cap(n_hi));
    for (u64 n = n_lo; n <= n_hi; ++n) {
        u64 cap = exponent_cap(n);
        for (u64 p : primes) {
            if (p > cap) break;
            std::optional<PowerWitness> w = find_witness(kind, n, p, l_budget);
            if (w) {
                ++rep.witness_count;
                if (witness_sink) witness_sink(*w);
            } else {
                rep.failures.push_back(ScanFailure{n, p});
            }
        }
    }
    return rep;
}

} // namespace fibpow

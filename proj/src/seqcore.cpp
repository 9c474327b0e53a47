#include "fibpow/seqcore.hpp"

#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fibpow {

const char* seq_kind_name(SeqKind k) {
    return k == SeqKind::Fibonacci ? "fibonacci" : "lucas";
}

SeqKind seq_kind_from_name(const std::string& s) {
    if (s == "fib" || s == "fibonacci") return SeqKind::Fibonacci;
    if (s == "lucas" || s == "luc") return SeqKind::Lucas;
    throw std::invalid_argument("unknown sequence kind: " + s);
}

void check_seq_modulus(u64 l) {
    if (l == 5) throw std::domain_error("l = 5 is excluded");
    if (!is_prime_u64(l)) throw std::domain_error("l must be prime");
}

namespace {

// Fast doubling on bits of n, most significant first:
//   F(2k)   = F(k) * (2 L(k) ... )      via F(2k) = F(k)(2F(k+1)-F(k))
//   F(2k+1) = F(k+1)^2 + F(k)^2
// We track (F(k), F(k+1)) and derive L at the end: L(n) = 2F(n+1)-F(n).
struct FPair {
    u64 fk, fk1;
};

FPair fib_doubling(const mpz_class& n, u64 l) {
    FPair st{0 % l, 1 % l};
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (n == 0) return st;
    for (size_t i = bits; i-- > 0;) {
        // (F(k), F(k+1)) -> (F(2k), F(2k+1))
        u64 a = st.fk, b = st.fk1;
        u64 two_b = addmod(b, b, l);
        u64 c = mulmod(a, submod(two_b, a, l), l);        // F(2k)
        u64 d = addmod(mulmod(a, a, l), mulmod(b, b, l), l); // F(2k+1)
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            st.fk = d;
            st.fk1 = addmod(c, d, l);
        } else {
            st.fk = c;
            st.fk1 = d;
        }
    }
    return st;
}

} // namespace

FibLucasPair fib_lucas_mod(const mpz_class& n, u64 l) {
    check_seq_modulus(l);
    if (n < 0) throw std::domain_error("n must be nonnegative");
    FPair st = fib_doubling(n, l);
    u64 f = st.fk;
    u64 g = submod(addmod(st.fk1, st.fk1, l), f, l); // L(n) = 2F(n+1) - F(n)
    return FibLucasPair{f, g, n, l};
}

FibLucasPair fib_lucas_mod(u64 n, u64 l) {
    return fib_lucas_mod(mpz_class(static_cast<unsigned long>(n)), l);
}

u64 period_m(u64 l) {
    check_seq_modulus(l);
    u64 r = l % 5;
    if (r == 1 || r == 4) return l - 1;
    return 2 * (l + 1);
}

PeriodInfo period_info(u64 l) {
    PeriodInfo info{};
    info.l = l;
    info.m_of_l = period_m(l);
    u64 r = l % 5;
    info.k_defined = (r == 1 || r == 4);
    info.k_of_l = info.k_defined ? std::lcm(l - 1, u64(6)) : 0;
    return info;
}

u64 sqrt5_mod(u64 l) {
    check_seq_modulus(l);
    u64 r = l % 5;
    if (r != 1 && r != 4) throw std::domain_error("5 is a non-residue: l = +-2 (mod 5)");
    return sqrtmod(5 % l, l);
}

u64 h_n_mod(const mpz_class& n, u64 l) {
    check_seq_modulus(l);
    unsigned long r6 = mpz_fdiv_ui(n.get_mpz_t(), 6);
    if (r6 != 1 && r6 != 5) throw std::domain_error("H_n requires n = +-1 (mod 6)");
    FibLucasPair fl = fib_lucas_mod(n, l);
    return r6 == 1 ? fl.g : submod(0, fl.g, l);
}

u64 h_n_mod(u64 n, u64 l) {
    return h_n_mod(mpz_class(static_cast<unsigned long>(n)), l);
}

std::pair<unsigned, unsigned> mod4_table(const mpz_class& n) {
    static constexpr std::array<std::pair<unsigned, unsigned>, 6> table = {{
        {2u, 0u}, // n = 0 (mod 6)
        {1u, 1u}, // n = 1
        {3u, 1u}, // n = 2
        {0u, 2u}, // n = 3
        {3u, 3u}, // n = 4
        {3u, 1u}, // n = 5
    }};
    unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 6);
    return table[r];
}

mpz_class fib_exact(unsigned long n) {
    mpz_class r;
    mpz_fib_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class lucas_exact(unsigned long n) {
    mpz_class r;
    mpz_lucnum_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class h_exact(unsigned long n) {
    unsigned long r6 = n % 6;
    if (r6 != 1 && r6 != 5) throw std::domain_error("H_n requires n = +-1 (mod 6)");
    mpz_class L = lucas_exact(n);
    return r6 == 1 ? L : mpz_class(-L);
}

u64 omega_mod(u64 l) {
    u64 s = sqrt5_mod(l);
    return mulmod(addmod(1, s, l), invmod(2, l), l);
}

} // namespace fibpow

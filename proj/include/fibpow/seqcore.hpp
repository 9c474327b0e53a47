#ifndef FIBPOW_SEQCORE_HPP
#define FIBPOW_SEQCORE_HPP

// Fibonacci/Lucas arithmetic modulo word-sized primes, the periods M(l)
// and K(l), and the signed quantities H_n / G_n attached to the Frey
// curves. Indices are arbitrary precision (mpz) since the sieve feeds
// residues of astronomically large n.

#include <gmpxx.h>

#include <cstdint>
#include <utility>

#include "fibpow/modmath.hpp"

namespace fibpow {

enum class SeqKind { Fibonacci, Lucas };

const char* seq_kind_name(SeqKind k);
SeqKind seq_kind_from_name(const std::string& s);

struct FibLucasPair {
    u64 f; // F_n mod l
    u64 g; // L_n mod l
    mpz_class n;
    u64 l;
};

struct PeriodInfo {
    u64 l;
    u64 m_of_l;           // M(l)
    u64 k_of_l;           // K(l) = lcm(l-1, 6); 0 when l = +-2 (mod 5)
    bool k_defined;       // true iff l = +-1 (mod 5)
};

// Rejects l = 5 and composite l; l = 2 is permitted.
void check_seq_modulus(u64 l);

// (F_n mod l, L_n mod l) by fast doubling, O(log n) multiplications.
FibLucasPair fib_lucas_mod(const mpz_class& n, u64 l);
FibLucasPair fib_lucas_mod(u64 n, u64 l);

// M(l): l-1 if l = +-1 (mod 5), 2(l+1) if l = +-2 (mod 5).
u64 period_m(u64 l);

PeriodInfo period_info(u64 l);

// Smaller square root of 5 mod l; requires l = +-1 (mod 5).
u64 sqrt5_mod(u64 l);

// H_n mod l: L_n if n = 1 (mod 6), -L_n if n = 5 (mod 6).
// Domain error for other residues of n mod 6.
u64 h_n_mod(const mpz_class& n, u64 l);
u64 h_n_mod(u64 n, u64 l);

// (L_n mod 4, F_n mod 4); depends only on n mod 6.
std::pair<unsigned, unsigned> mod4_table(const mpz_class& n);

// Exact values by the recurrence; n must be small enough to be sane
// (used by oracles, certificates and the H_n = 1 (mod 4) checks).
mpz_class fib_exact(unsigned long n);
mpz_class lucas_exact(unsigned long n);
mpz_class h_exact(unsigned long n); // n = +-1 (mod 6)

// omega = (1 + sqrt5)/2 as an element of F_l (l = +-1 mod 5).
u64 omega_mod(u64 l);

} // namespace fibpow

#endif

#ifndef FIBPOW_MODMATH_HPP
#define FIBPOW_MODMATH_HPP

// Word-sized modular arithmetic used by the hot loops. Everything here
// assumes moduli below 2^62 so __int128 products never overflow.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fibpow {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128)a * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : a + m - b;
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b);
u64 invmod(u64 a, u64 m); // throws std::domain_error if gcd(a,m) != 1

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 n);

// Jacobi symbol (a|n) for odd n > 0.
int jacobi(i64 a, u64 n);

// Legendre symbol (a|p) for odd prime p, via Euler's criterion.
int legendre(u64 a, u64 p);

// Square root mod an odd prime (Tonelli-Shanks). Returns the smaller of
// the two roots. Throws std::domain_error if a is a non-residue.
u64 sqrtmod(u64 a, u64 p);

// Smallest primitive root mod an odd prime p. Needs the distinct prime
// factors of p-1, which we obtain by trial division (fine for the sizes
// used here).
u64 primitive_root(u64 p);

std::vector<u64> prime_factors(u64 n); // distinct primes, trial division

// Does n have a prime factor > q? By convention 0 does (it is divisible
// by every prime); 1 does not.
bool has_prime_factor_above(u64 n, u64 q);

// Primes in [2, limit] by sieve of Eratosthenes.
std::vector<u64> primes_up_to(u64 limit);

// Quadratic-character lookup table mod an odd prime l.
// chi(0) = 0, chi(square) = 1, chi(non-square) = -1.
class QuadTable {
public:
    explicit QuadTable(u64 l);
    int chi(u64 v) const {
        v %= l_;
        if (v == 0) return 0;
        return table_[v] ? 1 : -1;
    }
    u64 modulus() const { return l_; }

private:
    u64 l_;
    std::vector<bool> table_;
};

} // namespace fibpow

#endif

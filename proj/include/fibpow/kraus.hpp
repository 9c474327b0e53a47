#ifndef FIBPOW_KRAUS_HPP
#define FIBPOW_KRAUS_HPP

// The Kraus-style criterion certifying n = +-1 (mod p): for a prime p,
// search k with l = 2kp + 1 prime such that (a) l = +-1 (mod 5),
// (b) omega^{2k} != 1 (mod l), (c) the trace congruence fails for every
// zeta in A(p,k). Also the level-200 newform elimination of the Lucas
// argument.

#include <optional>
#include <string>
#include <vector>

#include "fibpow/curves.hpp"
#include "fibpow/seqcore.hpp"
#include "fibpow/sieve.hpp"

namespace fibpow {

struct ZetaSet {
    u64 p = 0;
    u64 k = 0;
    u64 l = 0; // 2kp + 1
    std::vector<u64> zetas; // the set A(p,k)
    std::vector<u64> deltas; // delta_zeta with delta^2 = 5 zeta - 4 (or (zeta+4)/5)
    bool has_zero_legendre = false; // some zeta with 5 zeta - 4 = 0 (delta = 0)
};

// A(p,k) for the Fibonacci criterion: nontrivial 2p-th powers zeta with
// legendre(5 zeta - 4) in {0, +1}. Throws if l = 2kp+1 is composite or
// l != +-1 (mod 5).
ZetaSet zeta_set(u64 p, u64 k);

// Lucas variant: the admissible values of y^{2p} give F_n^2 = (zeta+4)/5,
// so the filter is legendre((zeta+4)/5) in {0, +1}.
ZetaSet zeta_set_lucas(u64 p, u64 k);

struct KrausChecks {
    bool a_l_prime_pm1_mod5 = false;
    bool b_omega_order = false;
    bool c_traces = false;
    bool all() const { return a_l_prime_pm1_mod5 && b_omega_order && c_traces; }
};

struct KrausCertificate {
    SeqKind kind = SeqKind::Fibonacci;
    u64 p = 0;
    u64 k = 0;
    u64 l = 0;
    u64 sqrt5 = 0;     // the chosen (smaller) square root of 5 mod l
    i64 a_l_e = 0;     // trace of the fixed curve (20A2 / 200B1) at l
    u64 zeta_count = 0;
    bool delta_zero_flagged = false; // some zeta had 5zeta-4 = 0 (cf. notes)
    KrausChecks checks;
    std::string note; // provenance notes (Lucas delta reconstruction)
};

struct KrausSearchOptions {
    u64 k_max = 1000;
    bool use_larger_sqrt5 = false; // test hook: branch invariance of (b)/(c)
};

std::optional<KrausCertificate> kraus_search(SeqKind kind, u64 p, const KrausSearchOptions& opts = {});

// Re-derives every condition of a certificate from (kind, p, k) alone.
// Returns true iff the re-derived record agrees bit-for-bit.
bool verify_kraus_certificate(const KrausCertificate& cert, std::string* why = nullptr);

// Evaluate conditions (a)-(c) for one (p, k) without searching.
KrausChecks kraus_conditions(SeqKind kind, u64 p, u64 k, const KrausSearchOptions& opts = {});

// ---- Newform elimination (Lucas, level 200) ----

struct EliminationLocal {
    u64 l = 0;
    ResidueClassSet t_l;  // T_l(E^i) in Z/M(l)
    mpz_class g_l;        // lcm of nonzero trace differences
    mpz_class h_l;        // g_l, extended by l+1 +- a_l at l = +-1 (mod 5)
    bool h_smooth = false; // no prime factor > 5
};

struct EliminationReport {
    std::string label; // target curve, e.g. "200D1"
    std::vector<u64> s_primes;
    std::vector<EliminationLocal> locals;
    ResidueClassSet intersected; // cap of T_l's and T0 = {1,5} mod 6
    bool success = false;
};

// Attempts to rule out rho_p(E_n) ~ rho_p(E^i) for the labelled curve
// using the prime set S. Success means every h_l is 5-smooth and the
// intersection of the T_l with T0 = {1bar, 5bar} in Z/6 is empty.
EliminationReport eliminate_newforms(const std::string& label, const std::vector<u64>& s_primes);

} // namespace fibpow

#endif

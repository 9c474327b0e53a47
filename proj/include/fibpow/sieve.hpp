#ifndef FIBPOW_SIEVE_HPP
#define FIBPOW_SIEVE_HPP

// The congruence sieve: per-prime residue sets N(l,q) on Z/K(l), exact
// CRT intersections across a growing set S of pairs (l,q), and the
// session driver that grows a smooth modulus M stage by stage until the
// least admissible residue a > 1 exceeds the analytic bound for n.

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fibpow/bounds.hpp"
#include "fibpow/curves.hpp"
#include "fibpow/seqcore.hpp"

namespace fibpow {

// A finite set of residues modulo an exact integer M, strictly sorted.
struct ResidueClassSet {
    mpz_class modulus;
    std::vector<mpz_class> residues; // sorted, all in [0, M)

    bool contains(const mpz_class& r) const;
    void normalize(); // reduce, sort, dedupe
};

// CRT "intersection": all classes mod lcm(Ma, Mb) reducing into both.
ResidueClassSet intersect(const ResidueClassSet& a, const ResidueClassSet& b);

// A sieve pair (l, q). Condition (10.2): l = +-1 (mod 5) prime and every
// prime factor of l-1 below 25000; q >= 5 prime.
struct SievePair {
    u64 l;
    u64 q;
    SievePair(u64 l_, u64 q_);
};

// N(l,q) for the Fibonacci Frey curve, a subset of (Z/K(l))^*:
// keep n iff [E_n nonsingular and a_l(E_n) - a_l(E) has a prime factor
// > q (0 counts)] or [E_n singular and one of l+1 +- a_l(E) has a prime
// factor > q].
ResidueClassSet n_set_fib(u64 l, u64 q);

// Lucas variant on Z/(l-1) with E = 200B1 and the 5F_n^2 - 4 condition.
ResidueClassSet n_set_lucas(u64 l, u64 q);

ResidueClassSet n_set(SeqKind kind, u64 l, u64 q);

struct SieveStageRecord {
    mpz_class modulus;          // M at the end of the stage
    std::vector<mpz_class> n_set; // N(S) residues at stage end
    mpz_class lower_bound;      // least element > 1
    std::size_t pairs_used;
};

struct SieveSession {
    SeqKind kind = SeqKind::Fibonacci;
    u64 p = 0;
    u64 q = 0;
    std::vector<SievePair> pairs;
    mpz_class target_modulus;   // M of the current stage
    ResidueClassSet n_s;        // N(S)
    mpz_class lower_bound;      // the element a
    std::vector<SieveStageRecord> stage_history;
    bool contradiction = false; // a > n_max reached
    double n_max_log10 = 0.0;

    mpz_class k_s() const { return n_s.modulus; }
};

struct SieveOptions {
    u64 l_cap = 50000;          // largest auxiliary prime l to consider
    unsigned max_stage_primes = 64; // safety stop on number of M-extensions
    std::string checkpoint_path;    // empty = no checkpointing
    std::function<void(const std::string&)> progress; // one line per event
};

// Runs the staged sieve for exponent p with sieving prime q (q < p),
// against the bound n < exp(n_max_ln). The stage schedule follows the
// published computation: M starts at 2^5 3^3 5^2 7 ... 19 and gains the
// next prime each time N(S) stabilizes at four elements mod M.
SieveSession run_sieve(SeqKind kind, u64 p, u64 q, const LogMagnitude& n_max,
                       const SieveOptions& opts = {});

// Checkpoint serialization (JSON, hex-encoded big integers).
void save_checkpoint(const SieveSession& s, const std::string& path);
SieveSession load_checkpoint(const std::string& path);

// Resume a checkpointed session until contradiction or exhaustion.
SieveSession resume_sieve(SieveSession session, const LogMagnitude& n_max,
                          const SieveOptions& opts = {});

} // namespace fibpow

#endif

#ifndef FIBPOW_POWERTEST_HPP
#define FIBPOW_POWERTEST_HPP

// Small-index scan: certify that F_n (or L_n) is not a perfect p-th
// power by exhibiting a witness prime l with l = 1 (mod p),
// l = +-1 (mod 5), F_n != 0 and F_n^{(l-1)/p} != 1 (mod l).

#include <functional>
#include <optional>
#include <vector>

#include "fibpow/seqcore.hpp"

namespace fibpow {

struct PowerWitness {
    SeqKind kind;
    u64 n;
    u64 p;
    u64 l;
    u64 k; // (l - 1) / p
};

struct ScanFailure {
    u64 n;
    u64 p;
};

struct ScanReport {
    SeqKind kind;
    u64 n_lo = 0, n_hi = 0;
    u64 witness_count = 0;
    std::vector<ScanFailure> failures;
    bool clean() const { return failures.empty(); }
};

// The exponent cap p <= n log(omega)/log(2), with the constant rounded
// up at the 30th significant digit so the scan never undershoots.
u64 exponent_cap(u64 n);

// Search for a witness among the first l_budget admissible candidates.
std::optional<PowerWitness> find_witness(SeqKind kind, u64 n, u64 p, u64 l_budget = 200);

// Recheck a stored witness via an independent modular-exponentiation
// path (left-to-right vs builtin right-to-left powering).
bool verify_witness(const PowerWitness& w);

// Scan every n in [n_lo, n_hi] and every prime p <= exponent_cap(n).
// witness_sink, when set, receives each witness as it is found.
ScanReport scan_range(SeqKind kind, u64 n_lo, u64 n_hi,
                      const std::function<void(const PowerWitness&)>& witness_sink = nullptr,
                      u64 l_budget = 200);

} // namespace fibpow

#endif

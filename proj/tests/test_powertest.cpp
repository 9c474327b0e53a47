#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibpow/powertest.hpp"

using namespace fibpow;

namespace {

// Exact perfect-power oracle: is v a p-th power?
bool is_pth_power(const mpz_class& v, unsigned long p) {
    if (v < 0) return false;
    mpz_class root;
    return mpz_root(root.get_mpz_t(), v.get_mpz_t(), p) != 0;
}

} // namespace

TEST_CASE("witness exists for F_13 = 233 (not a square)") {
    CHECK_FALSE(is_pth_power(fib_exact(13), 2));
    auto w = find_witness(SeqKind::Fibonacci, 13, 2);
    REQUIRE(w.has_value());
    CHECK(verify_witness(*w));
}

TEST_CASE("no false witness for F_12 = 144 = 12^2") {
    CHECK(is_pth_power(fib_exact(12), 2));
    CHECK_FALSE(find_witness(SeqKind::Fibonacci, 12, 2).has_value());
}

TEST_CASE("no false witness for F_6 = 8 = 2^3") {
    CHECK(is_pth_power(fib_exact(6), 3));
    CHECK_FALSE(find_witness(SeqKind::Fibonacci, 6, 3).has_value());
}

TEST_CASE("witness exists for L_4 = 7 (not a square)") {
    CHECK_FALSE(is_pth_power(lucas_exact(4), 2));
    auto w = find_witness(SeqKind::Lucas, 4, 2);
    REQUIRE(w.has_value());
    CHECK(verify_witness(*w));
}

TEST_CASE("soundness: every emitted witness for n <= 60 marks a true non-power") {
    for (u64 n = 13; n <= 60; ++n) {
        u64 cap = exponent_cap(n);
        for (u64 p = 2; p <= cap; ++p) {
            if (!is_prime_u64(p)) continue;
            auto w = find_witness(SeqKind::Fibonacci, n, p);
            if (w) {
                CHECK_FALSE(is_pth_power(fib_exact(static_cast<unsigned long>(n)), p));
                CHECK(verify_witness(*w));
                CHECK(w->l % w->p == 1);
                u64 r5 = w->l % 5;
                CHECK((r5 == 1 || r5 == 4));
            }
        }
    }
}

TEST_CASE("exponent cap never under-scans") {
    // F_n < 2^p impossible when p > n log(omega)/log 2; the cap must sit
    // at or above the last prime with 2^p <= F_n.
    for (u64 n : {13ull, 50ull, 100ull, 500ull}) {
        mpz_class f = fib_exact(static_cast<unsigned long>(n));
        size_t bits = mpz_sizeinbase(f.get_mpz_t(), 2);
        CHECK(exponent_cap(n) + 1 >= bits); // 2^p <= F_n needs p <= bits-ish
    }
}

TEST_CASE("witness validity re-check catches tampering") {
    auto w = find_witness(SeqKind::Fibonacci, 13, 2);
    REQUIRE(w.has_value());
    PowerWitness bad = *w;
    bad.n = 12; // F_12 is a square; the stored l cannot witness it
    CHECK_FALSE(verify_witness(bad));
}

TEST_CASE("short scans are clean") {
    ScanReport f = scan_range(SeqKind::Fibonacci, 13, 120);
    CHECK(f.clean());
    CHECK(f.witness_count > 0);
    ScanReport l = scan_range(SeqKind::Lucas, 4, 120);
    CHECK(l.clean());
}

TEST_CASE("scan floor is enforced") {
    CHECK_THROWS_AS(scan_range(SeqKind::Fibonacci, 12, 20), std::domain_error);
    CHECK_THROWS_AS(scan_range(SeqKind::Lucas, 3, 20), std::domain_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibpow/seqcore.hpp"

using namespace fibpow;

namespace {

// Naive linear recurrence oracle.
std::pair<u64, u64> fib_lucas_naive(u64 n, u64 l) {
    u64 f0 = 0 % l, f1 = 1 % l, g0 = 2 % l, g1 = 1 % l;
    if (n == 0) return {f0, g0};
    for (u64 i = 1; i < n; ++i) {
        u64 f2 = addmod(f0, f1, l);
        f0 = f1;
        f1 = f2;
        u64 g2 = addmod(g0, g1, l);
        g0 = g1;
        g1 = g2;
    }
    return {f1, g1};
}

} // namespace

TEST_CASE("fib_lucas_mod matches stated examples") {
    FibLucasPair a = fib_lucas_mod(u64(12), 1009);
    CHECK(a.f == 144);
    CHECK(a.g == 322);
    FibLucasPair b = fib_lucas_mod(u64(0), 7);
    CHECK(b.f == 0);
    CHECK(b.g == 2);
    FibLucasPair c = fib_lucas_mod(u64(3), 11);
    CHECK(c.f == 2);
    CHECK(c.g == 4);
}

TEST_CASE("fib_lucas_mod rejects l = 5 and composites, allows l = 2") {
    CHECK_THROWS_AS(fib_lucas_mod(u64(10), 5), std::domain_error);
    CHECK_THROWS_AS(fib_lucas_mod(u64(10), 9), std::domain_error);
    CHECK(fib_lucas_mod(u64(6), 2).f == 0);
}

TEST_CASE("fast doubling agrees with the naive recurrence") {
    for (u64 l : {2ull, 3ull, 7ull, 11ull, 101ull, 997ull}) {
        for (u64 n = 0; n <= 500; ++n) {
            auto [f, g] = fib_lucas_naive(n, l);
            FibLucasPair p = fib_lucas_mod(n, l);
            CHECK(p.f == f);
            CHECK(p.g == g);
        }
    }
    // spot checks at larger n
    for (u64 l : {3ull, 11ull, 1009ull}) {
        for (u64 n : {1000ull, 5000ull, 10000ull}) {
            auto [f, g] = fib_lucas_naive(n, l);
            FibLucasPair p = fib_lucas_mod(n, l);
            CHECK(p.f == f);
            CHECK(p.g == g);
        }
    }
}

TEST_CASE("multi-thousand-digit indices are accepted") {
    mpz_class n = 1;
    n <<= 4000; // 2^4000
    u64 l = 1009;
    FibLucasPair p = fib_lucas_mod(n, l);
    // Reduce the index mod M(l) and compare.
    u64 m = period_m(l);
    mpz_class nr = n % m;
    FibLucasPair q = fib_lucas_mod(nr.get_ui(), l);
    CHECK(p.f == q.f);
    CHECK(p.g == q.g);
}

TEST_CASE("identity L_n^2 - 5 F_n^2 = 4(-1)^n") {
    // exactly, n <= 300
    for (unsigned long n = 0; n <= 300; ++n) {
        mpz_class F = fib_exact(n), L = lucas_exact(n);
        mpz_class lhs = L * L - 5 * F * F;
        CHECK(lhs == ((n % 2 == 0) ? 4 : -4));
    }
    // and modulo every tested l
    for (u64 l : {3ull, 7ull, 11ull, 13ull, 97ull}) {
        for (u64 n = 0; n <= 300; ++n) {
            FibLucasPair p = fib_lucas_mod(n, l);
            u64 lhs = submod(mulmod(p.g, p.g, l), mulmod(5, mulmod(p.f, p.f, l), l), l);
            u64 rhs = (n % 2 == 0) ? 4 % l : submod(0, 4, l);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("period_m formula and periodicity") {
    CHECK(period_m(11) == 10);
    CHECK(period_m(3) == 8);
    CHECK(period_m(7) == 16);
    CHECK_THROWS_AS(period_m(5), std::domain_error);
    CHECK_THROWS_AS(period_m(15), std::domain_error);

    // F_{n+16} = F_n mod 7 for n <= 48
    for (u64 n = 0; n <= 48; ++n) {
        CHECK(fib_lucas_mod(n + 16, 7).f == fib_lucas_mod(n, 7).f);
    }

    // every prime l <= 200 (l != 5), all 0 <= n < 2 M(l)
    for (u64 l = 2; l <= 200; ++l) {
        if (!is_prime_u64(l) || l == 5) continue;
        u64 m = period_m(l);
        u64 f0 = 0 % l, f1 = 1 % l;
        std::vector<u64> fs(2 * m + m + 1), gs(fs.size());
        for (size_t i = 0; i < fs.size(); ++i) {
            fs[i] = f0;
            gs[i] = submod(addmod(f1, f1, l), f0, l);
            u64 f2 = addmod(f0, f1, l);
            f0 = f1;
            f1 = f2;
        }
        for (u64 n = 0; n < 2 * m; ++n) {
            CHECK(fs[n + m] == fs[n]);
            CHECK(gs[n + m] == gs[n]);
        }
    }
}

TEST_CASE("sqrt5_mod returns the smaller root") {
    CHECK(sqrt5_mod(11) == 4);
    CHECK(sqrt5_mod(19) == 9);
    CHECK(sqrt5_mod(31) == 6);
    CHECK_THROWS_AS(sqrt5_mod(7), std::domain_error);
    for (u64 l : {11ull, 19ull, 29ull, 31ull, 41ull, 1009ull}) {
        u64 s = sqrt5_mod(l);
        CHECK(mulmod(s, s, l) == 5 % l);
        CHECK(s <= l / 2);
    }
}

TEST_CASE("h_n_mod examples and domain") {
    CHECK(h_n_mod(u64(1), 7) == 1);
    CHECK(h_n_mod(u64(5), 13) == 2);  // -L_5 = -11
    CHECK(h_n_mod(u64(7), 11) == 7);  // L_7 = 29
    for (u64 bad : {0ull, 2ull, 3ull, 4ull, 6ull, 9ull}) {
        CHECK_THROWS_AS(h_n_mod(bad, 7), std::domain_error);
    }
}

TEST_CASE("exact H_n = 1 (mod 4) for n = +-1 (mod 6), n <= 1000") {
    for (unsigned long n = 1; n <= 1000; ++n) {
        if (n % 6 != 1 && n % 6 != 5) continue;
        mpz_class h = h_exact(n);
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), h.get_mpz_t(), 4);
        CHECK(r == 1);
        // 5 y^{2p} - 4 = H_n^2 shape: H_n^2 + 4 = 5 F_n^2 * ... check the
        // auxiliary identity H_n^2 + 4 = 5 F_n^2 directly from the L/F identity.
        mpz_class F = fib_exact(n);
        CHECK(h * h + 4 == 5 * F * F);
    }
}

TEST_CASE("mod4_table matches direct computation up to 600") {
    CHECK(mod4_table(mpz_class(0)) == std::make_pair(2u, 0u));
    CHECK(mod4_table(mpz_class(4)) == std::make_pair(3u, 3u));
    CHECK(mod4_table(mpz_class(600)) == std::make_pair(2u, 0u));
    for (unsigned long n = 0; n <= 600; ++n) {
        auto [l4, f4] = mod4_table(mpz_class(static_cast<long>(n)));
        mpz_class F = fib_exact(n), L = lucas_exact(n);
        CHECK(mpz_fdiv_ui(L.get_mpz_t(), 4) == l4);
        CHECK(mpz_fdiv_ui(F.get_mpz_t(), 4) == f4);
    }
}

TEST_CASE("omega_mod is a root of x^2 - x - 1") {
    for (u64 l : {11ull, 19ull, 29ull, 31ull, 1009ull}) {
        u64 w = omega_mod(l);
        CHECK(submod(mulmod(w, w, l), addmod(w, 1, l), l) == 0);
    }
}

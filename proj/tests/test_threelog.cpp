#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fibpow/threelog.hpp"

using namespace fibpow;

TEST_CASE("theta_lower: example (3,6) = 8 exactly") {
    CHECK(theta_lower(3, 6) == doctest::Approx(8.0));
    CHECK(theta_exact_greedy(3, 6) == 8);
}

TEST_CASE("theta_lower rejects I below threshold") {
    CHECK_THROWS_AS(theta_lower(3, 5), std::domain_error);
    CHECK_THROWS_AS(theta_lower(2, 10), std::domain_error);
}

TEST_CASE("theta_lower <= exact greedy for all 3 <= K0 <= 8, I <= 120") {
    for (long k0 = 3; k0 <= 8; ++k0) {
        for (long i = k0 * (k0 + 1) / 2; i <= 120; ++i) {
            double lower = theta_lower(k0, i);
            long exact = theta_exact_greedy(k0, i);
            INFO("K0=", k0, " I=", i);
            CHECK(lower <= static_cast<double>(exact) + 1e-9);
        }
    }
}

TEST_CASE("factorial_bound <= exact normalized log-factorial product, 2 <= K <= 300") {
    for (long k = 2; k <= 300; ++k) {
        // exact: (4/(K(K-1))) * log prod_{j=1}^{K-1} j!
        mpz_class prod = 1;
        mpz_class fact = 1;
        for (long j = 1; j <= k - 1; ++j) {
            fact *= j;
            prod *= fact;
        }
        Real exact = Real(4.0) * log(Real(prod)) / (Real(static_cast<long>(k)) * Real(static_cast<long>(k - 1)));
        Real bound = factorial_bound(Real(static_cast<long>(k)));
        INFO("K=", k);
        CHECK(bound.to_double() <= exact.to_double() + 1e-25);
    }
    // K = 2: left side is exactly 0
    CHECK(factorial_bound(Real(2L)).to_double() <= 0.0);
}

TEST_CASE("G_R bounds |sum l_n r_n - M| for random admissible assignments") {
    std::mt19937_64 rng(20240519);
    for (int trial = 0; trial < 200; ++trial) {
        long K = 2 + static_cast<long>(rng() % 3);   // 2..4
        long L = 2 + static_cast<long>(rng() % 3);
        long N = K * K * L;
        long R = 2 + static_cast<long>(rng() % 6);
        long S = 2 + static_cast<long>(rng() % 6);
        long T = 2 + static_cast<long>(rng() % 6);
        if (static_cast<long>(R) * S * T < N) continue;
        // each value r < R used at most S*T times
        std::vector<long> quota(R, S * T);
        std::vector<long> r(N);
        bool ok = true;
        for (long n = 0; n < N && ok; ++n) {
            for (int attempt = 0;; ++attempt) {
                long v = static_cast<long>(rng() % R);
                if (quota[v] > 0) {
                    quota[v]--;
                    r[n] = v;
                    break;
                }
                if (attempt > 200) { // fall back to first available
                    long w = 0;
                    while (w < R && quota[w] == 0) ++w;
                    if (w == R) { ok = false; break; }
                    quota[w]--;
                    r[n] = w;
                    break;
                }
            }
        }
        if (!ok) continue;
        double sum = 0, rsum = 0;
        for (long n = 1; n <= N; ++n) {
            long ell = (n - 1) / (K * K);
            sum += static_cast<double>(ell) * r[n - 1];
            rsum += r[n - 1];
        }
        double M = (L - 1) / 2.0 * rsum;
        double gr = g_r_bound(K, L, R, S, T);
        INFO("K=", K, " L=", L, " R=", R, " S=", S, " T=", T);
        CHECK(std::fabs(sum - M) <= gr + 1e-9);
    }
}

namespace {

ThreeLogParams golden_params(double p_in = 2.4e13, double log_y = 1e20) {
    Real rho(10.0); // contour value reproducing the printed run (see notes)
    Real ln_sqrt5 = log(Real(5.0)) / Real(2.0);
    Real ln_omega = log((Real(1.0) + sqrt(Real(5.0))) / Real(2.0));
    Real a1 = (rho + Real(3.0)) * ln_sqrt5;
    Real a3 = (rho + Real(1.0)) * ln_omega;
    Real a2 = (rho + Real(2.0 * p_in)) * ln_omega + Real(4.0) * Real(log_y);
    ThreeLogParams p = param_recipe(260, Real(26.12446), rho, a1, a2, a3);
    mpz_class pz(static_cast<unsigned long>(p_in));
    p.b1 = pz;
    p.b2 = pz;
    p.b3 = 1;
    return p;
}

} // namespace

TEST_CASE("recipe reproduces the published S1 = 63054 and S2 = 290211 exactly") {
    ThreeLogParams p = golden_params();
    CHECK(p.S1 == 63054);
    CHECK(p.S2 == 290211);
}

TEST_CASE("maurice_check passes on the published parameters (proposition reading)") {
    ThreeLogParams p = golden_params();
    MauriceVerdict v = maurice_check(p, ConditionReading::Proposition);
    CHECK(v.structure_ok);
    CHECK(v.cond_o);
    CHECK(v.cond_i);
    CHECK(v.cond_ii);
    CHECK(v.cond_iii);
    CHECK(v.cond_iv);
    CHECK(v.passes());
    // degenerate windows as published
    CHECK(v.windows.r_window == 179);
    CHECK(v.windows.t_window == 354);
}

TEST_CASE("theorem-reading (iii) is the typo: it fails where the proposition reading passes") {
    ThreeLogParams p = golden_params();
    MauriceVerdict theorem = maurice_check(p, ConditionReading::Theorem);
    CHECK_FALSE(theorem.cond_iii); // (R1+1)(S1+1)(T1+1) << 12(K-1)^2(L-1)
    MauriceVerdict prop = maurice_check(p, ConditionReading::Proposition);
    CHECK(prop.cond_iii);
}

TEST_CASE("maurice (o) is monotone in rho at fixed a_i") {
    ThreeLogParams p = golden_params();
    REQUIRE(maurice_check(p, ConditionReading::Proposition).cond_o);
    // larger rho, same a_i: (o)'s left side grows, right side fixed
    ThreeLogParams q = p;
    q.rho = Real(14.0);
    MauriceVerdict v = maurice_check(q, ConditionReading::Proposition);
    CHECK(v.cond_o);
}

TEST_CASE("recipe floor monotonicity: increasing m never decreases K") {
    Real rho(10.0);
    Real ln_sqrt5 = log(Real(5.0)) / Real(2.0);
    Real ln_omega = log((Real(1.0) + sqrt(Real(5.0))) / Real(2.0));
    Real a1 = (rho + Real(3.0)) * ln_sqrt5;
    Real a3 = (rho + Real(1.0)) * ln_omega;
    Real a2 = Real(4e20);
    mpz_class prev = 0;
    for (double m = 11.0; m < 49.0; m += 1.7) {
        ThreeLogParams p = param_recipe(260, Real(m), rho, a1, a2, a3);
        CHECK(p.K >= prev);
        prev = p.K;
    }
}

TEST_CASE("recipe output always satisfies (i)-(iv), proposition reading") {
    Real ln_sqrt5 = log(Real(5.0)) / Real(2.0);
    Real ln_omega = log((Real(1.0) + sqrt(Real(5.0))) / Real(2.0));
    for (double rho_d : {6.0, 10.0, 15.0}) {
        for (double m : {12.0, 26.12446, 40.0}) {
            for (long L : {120L, 260L, 400L}) {
                Real rho(rho_d);
                Real a1 = (rho + Real(3.0)) * ln_sqrt5;
                Real a3 = (rho + Real(1.0)) * ln_omega;
                Real a2 = (rho + Real(4.8e13)) * ln_omega + Real(4e20);
                ThreeLogParams p = param_recipe(L, Real(m), rho, a1, a2, a3);
                p.b1 = p.b2 = mpz_class("24000000000000");
                p.b3 = 1;
                MauriceVerdict v = maurice_check(p, ConditionReading::Proposition);
                INFO("rho=", rho_d, " m=", m, " L=", L);
                CHECK(v.structure_ok);
                CHECK(v.cond_i);
                CHECK(v.cond_ii);
                CHECK(v.cond_iii);
                CHECK(v.cond_iv);
            }
        }
    }
}

TEST_CASE("param_recipe range validation") {
    Real a(10.0), b(4e20), c(5.0);
    CHECK_THROWS_AS(param_recipe(99, Real(20.0), Real(10.0), a, b, c), std::domain_error);
    CHECK_THROWS_AS(param_recipe(260, Real(9.0), Real(10.0), a, b, c), std::domain_error);
    CHECK_THROWS_AS(param_recipe(260, Real(51.0), Real(10.0), a, b, c), std::domain_error);
    CHECK_THROWS_AS(param_recipe(260, Real(20.0), Real(2.0), a, b, c), std::domain_error);
    CHECK_THROWS_AS(param_recipe(260, Real(20.0), Real(10.0), c, b, a), std::domain_error); // a3 > a1
}

TEST_CASE("two-log chain constants: log A2 = 328.93896...") {
    Real ln_sqrt5 = log(Real(5.0)) / Real(2.0);
    Real h_omega = log((Real(1.0) + sqrt(Real(5.0))) / Real(2.0)) / Real(2.0);
    double log_a2 = 354.0 * ln_sqrt5.to_double() + 179.0 * h_omega.to_double() + 1.0;
    CHECK(log_a2 == doctest::Approx(328.93896).epsilon(1e-7));
    // b' < p/657
    double d = 2.0;
    double p = 2.4e13;
    double bprime = p / (d * log_a2) + p / (d * 1.001e20);
    CHECK(bprime < p / 657.0);
}

TEST_CASE("two_log_lower matches an independent evaluation") {
    TwoLogInput in;
    in.D = Real(2.0);
    in.log_a1 = Real(1.001e20);
    in.log_a2 = Real(328.93896884);
    in.b1 = Real(1.0e7);
    in.b2 = Real(1.0e7);
    double bprime = 1.0e7 / (2.0 * 328.93896884) + 1.0e7 / (2.0 * 1.001e20);
    double t = std::max({std::log(bprime) + 0.19, 9.0, 1.0});
    double want = -25.55 * 16.0 * t * t * 1.001e20 * 328.93896884;
    CHECK(two_log_lower(in).to_double() == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("reduction chain: golden first pass and contradiction") {
    ReductionResult r = fib_p_reduction();
    // unconditional first bound: the published 2.4e13 within a factor of 3
    CHECK(r.first_bound > 2.4e13 / 3.0);
    CHECK(r.first_bound < 2.4e13 * 3.0);
    REQUIRE(!r.iterations.empty());
    const ReductionIteration& first = r.iterations.front();
    CHECK(first.maurice_passed);
    CHECK(first.s1 == 63054.0);
    CHECK(first.s2 == 290211.0);
    CHECK(first.r_window == 179);
    CHECK(first.t_window == 354);
    // main-case bound: published 451e6, tolerance 2 percent
    CHECK(std::fabs(first.p_main - 451e6) / 451e6 < 0.02);
    // C1/C2 cap below 1e8 as published (max{S1,S2} < 1e8)
    CHECK(first.p_c1c2 < 1e8);
    // iterated reduction settles below 2e8 (published: 183e6)
    CHECK(r.converged);
    CHECK(r.final_bound < 2e8);
    CHECK(r.closes_contradiction);
}

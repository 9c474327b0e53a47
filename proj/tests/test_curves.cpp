#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fibpow/curves.hpp"
#include "fibpow/seqcore.hpp"

using namespace fibpow;

TEST_CASE("trace examples against the brute-force oracle") {
    // l = 3, Y^2 = X^3 + X^2 - X -> a_3 = -2 (6 points)
    CurveModL c1{3, 0, 1, 0, 2, 0};
    TraceResult t1 = trace_of_frobenius(c1);
    CHECK(t1.a_l == -2);
    CHECK(t1.point_count == 6);
    TraceResult e1 = trace_by_enumeration(c1);
    CHECK(e1.a_l == t1.a_l);

    // l = 3, Y^2 = X^3 - X -> a_3 = 0
    CurveModL c2{3, 0, 0, 0, 2, 0};
    CHECK(trace_of_frobenius(c2).a_l == 0);

    // l = 7, Y^2 = X^3 + X^2 - 3X - 2 cross-checked by enumeration
    CurveModL c3 = CurveCatalog::builtin().by_label("200B1").reduce(7);
    CHECK(trace_of_frobenius(c3).a_l == trace_by_enumeration(c3).a_l);
}

TEST_CASE("trace equals enumeration for all catalog curves, l <= 200") {
    const auto& cat = CurveCatalog::builtin();
    for (const auto& cc : cat.curves()) {
        mpz_class disc = cc.discriminant();
        for (u64 l = 3; l <= 200; l += 2) {
            if (!is_prime_u64(l)) continue;
            if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(l))) continue;
            CurveModL c = cc.reduce(l);
            CHECK(trace_of_frobenius(c).a_l == trace_by_enumeration(c).a_l);
        }
    }
}

TEST_CASE("Hasse bound for all catalog curves, primes l <= 2000") {
    const auto& cat = CurveCatalog::builtin();
    for (const auto& cc : cat.curves()) {
        mpz_class disc = cc.discriminant();
        for (u64 l = 3; l <= 2000; l += 2) {
            if (!is_prime_u64(l)) continue;
            if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(l))) continue;
            i64 a = trace_of_frobenius(cc.reduce(l)).a_l;
            CHECK(static_cast<double>(a) * a <= 4.0 * static_cast<double>(l));
        }
    }
}

TEST_CASE("quadratic twist by -1: same a_l at l = 1 (mod 4), negated at l = 3 (mod 4)") {
    const CatalogCurve& b = CurveCatalog::builtin().by_label("200B1");
    for (u64 l = 3; l <= 400; l += 2) {
        if (!is_prime_u64(l) || l == 5) continue;
        CurveModL c = b.reduce(l);
        CurveModL tw = twist_by_minus_one(c);
        i64 a = trace_of_frobenius(c).a_l;
        i64 at = trace_of_frobenius(tw).a_l;
        if (l % 4 == 1)
            CHECK(at == a);
        else
            CHECK(at == -a);
    }
}

TEST_CASE("trace is an isogeny-class invariant: 20A1 vs 20A2 up to 500") {
    const auto& cat = CurveCatalog::builtin();
    const CatalogCurve& a1 = cat.by_label("20A1");
    const CatalogCurve& a2 = cat.by_label("20A2");
    CHECK(j_invariant(a1) != j_invariant(a2)); // not isomorphic
    for (u64 l = 3; l <= 500; l += 2) {
        if (!is_prime_u64(l) || l == 2 || l == 5) continue;
        CHECK(trace_of_frobenius(a1.reduce(l)).a_l == trace_of_frobenius(a2.reduce(l)).a_l);
    }
}

TEST_CASE("j-invariants") {
    const auto& cat = CurveCatalog::builtin();
    CHECK(j_invariant(cat.by_label("100A1")) == mpq_class(16384, 5));
    CHECK(j_invariant(cat.by_label("200C1")) == mpq_class(55296, 5));
    CatalogCurve cn; // Y^2 = X^3 - X
    cn.a4 = -1;
    CHECK(j_invariant(cn) == 1728);
    CatalogCurve sing; // Y^2 = X^3
    CHECK_THROWS_AS(j_invariant(sing), std::domain_error);
}

TEST_CASE("catalog conductors are as labelled") {
    const auto& cat = CurveCatalog::builtin();
    CHECK(conductor(cat.by_label("20A1")) == 20);
    CHECK(conductor(cat.by_label("20A2")) == 20);
    CHECK(conductor(cat.by_label("100A1")) == 100);
    for (const char* lbl : {"200A1", "200B1", "200C1", "200D1", "200E1"}) {
        CHECK(conductor(cat.by_label(lbl)) == 200);
    }
}

TEST_CASE("the five conductor-200 classes are pairwise non-isogenous") {
    const auto& cat = CurveCatalog::builtin();
    const char* labels[] = {"200A1", "200B1", "200C1", "200D1", "200E1"};
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            bool differ = false;
            for (u64 l = 3; l <= 100 && !differ; l += 2) {
                if (!is_prime_u64(l) || l == 5) continue;
                differ = trace_of_frobenius(cat.by_label(labels[i]).reduce(l)).a_l
                      != trace_of_frobenius(cat.by_label(labels[j]).reduce(l)).a_l;
            }
            CHECK(differ);
        }
    }
}

TEST_CASE("frey_fib constructor") {
    // n = 1, any l: H_1 = 1 gives exactly 20A2
    for (u64 l : {7ull, 11ull, 101ull}) {
        FreyReduction r = frey_fib(h_n_mod(u64(1), l), l);
        CHECK(!r.multiplicative);
        CurveModL e = CurveCatalog::builtin().by_label("20A2").reduce(l);
        CHECK(r.curve.a2 == e.a2);
        CHECK(r.curve.a4 == e.a4);
    }
    // n = 7, l = 11: Y^2 = X^3 + 7X^2 - X
    FreyReduction r7 = frey_fib(h_n_mod(u64(7), 11), 11);
    CHECK(r7.curve.a2 == 7);
    CHECK(r7.curve.a4 == 10);
    // n = 5, l = 13: H_5 = -11 = 2
    FreyReduction r5 = frey_fib(h_n_mod(u64(5), 13), 13);
    CHECK(r5.curve.a2 == 2);
}

TEST_CASE("frey_lucas constructor") {
    // n = 1, l = 7: Y^2 = X^3 - 5X^2 + 5X
    FreyReduction r1 = frey_lucas(fib_lucas_mod(u64(1), 7).f, 7);
    CHECK(r1.curve.a2 == (7 - 5));
    CHECK(r1.curve.a4 == 5);
    // n = 5, l = 11: F_5 = 5: Y^2 = X^3 + 8X^2 + 5X mod 11
    FreyReduction r5 = frey_lucas(fib_lucas_mod(u64(5), 11).f, 11);
    CHECK(r5.curve.a2 == 8);
    CHECK(r5.curve.a4 == 5);
    // n = 7, l = 13: F_7 = 13 = 0: Y^2 = X^3 + 5X
    FreyReduction r7 = frey_lucas(fib_lucas_mod(u64(7), 13).f, 13);
    CHECK(r7.curve.a2 == 0);
    CHECK(r7.curve.a4 == 5);
}

TEST_CASE("frey singular reductions are tagged, not thrown") {
    // Fibonacci: singular iff H^2 + 4 = 0 mod l; at l = 13, H = 3: 9+4 = 13.
    FreyReduction r = frey_fib(3, 13);
    CHECK(r.multiplicative);
    CHECK(r.curve.singular());
    // Lucas: singular iff 5F^2 - 4 = 0 mod l; at l = 11, F = 5: 125-4 = 121.
    FreyReduction rl = frey_lucas(5, 11);
    CHECK(rl.multiplicative);
}

TEST_CASE("Euler and Jacobi character paths agree") {
    for (u64 l : {101ull, 1009ull}) {
        QuadTable t(l);
        for (u64 v = 0; v < l; ++v) {
            int via_table = t.chi(v);
            int via_euler = v % l == 0 ? 0 : legendre(v, l);
            int via_jacobi = jacobi(static_cast<i64>(v), l);
            CHECK(via_table == via_euler);
            CHECK(via_table == via_jacobi);
        }
    }
}

TEST_CASE("catalog file round-trips against the builtin") {
    CurveCatalog fromfile = CurveCatalog::load(std::string(FIBPOW_SOURCE_DIR) + "/data/curves.json");
    const auto& builtin = CurveCatalog::builtin();
    REQUIRE(fromfile.curves().size() == builtin.curves().size());
    for (size_t i = 0; i < builtin.curves().size(); ++i) {
        const auto& a = fromfile.curves()[i];
        const auto& b = builtin.curves()[i];
        CHECK(a.label == b.label);
        CHECK(a.a1 == b.a1);
        CHECK(a.a2 == b.a2);
        CHECK(a.a3 == b.a3);
        CHECK(a.a4 == b.a4);
        CHECK(a.a6 == b.a6);
    }
}

TEST_CASE("singular curve mod l is rejected by trace") {
    CurveModL c{5, 0, 0, 0, 0, 0}; // Y^2 = X^3
    CHECK(c.singular());
    CHECK_THROWS_AS(trace_of_frobenius(c), std::domain_error);
}

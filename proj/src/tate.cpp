// Conductor exponents via Tate's algorithm. Only the exponent is needed,
// so Kodaira types are folded into Ogg's formula f = v(delta) + 1 - m.
// For p >= 5 the tame shortcut applies (f <= 2, minimality test on
// c4/delta); the full step machinery runs for p = 2, 3.

#include "fibpow/curves.hpp"

#include <stdexcept>

namespace fibpow {

namespace {

constexpr long kInfValuation = 1000000000L;

long vp(const mpz_class& x, const mpz_class& p) {
    if (x == 0) return kInfValuation;
    long v = 0;
    mpz_class t = x;
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        t /= p;
        ++v;
    }
    return v;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

struct Model {
    mpz_class a1, a2, a3, a4, a6;

    mpz_class b2() const { return a1 * a1 + 4 * a2; }
    mpz_class b4() const { return 2 * a4 + a1 * a3; }
    mpz_class b6() const { return a3 * a3 + 4 * a6; }
    mpz_class b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    mpz_class c4() const { return b2() * b2() - 24 * b4(); }
    mpz_class c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    mpz_class disc() const {
        return -b2() * b2() * b8() - 8 * b4() * b4() * b4() - 27 * b6() * b6() + 9 * b2() * b4() * b6();
    }

    // (x, y) -> (x + r, y + s x + t)
    void translate(const mpz_class& r, const mpz_class& s, const mpz_class& t) {
        mpz_class na1 = a1 + 2 * s;
        mpz_class na2 = a2 - s * a1 + 3 * r - s * s;
        mpz_class na3 = a3 + r * a1 + 2 * t;
        mpz_class na4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        mpz_class na6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        a1 = na1;
        a2 = na2;
        a3 = na3;
        a4 = na4;
        a6 = na6;
    }

    void rescale(const mpz_class& p) {
        mpz_class p2 = p * p;
        a1 /= p;
        a2 /= p2;
        a3 /= p2 * p;
        a4 /= p2 * p2;
        a6 /= p2 * p2 * p2;
    }
};

mpz_class invmod_z(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("invmod_z: not invertible");
    return r;
}

// Multiplicity structure of the monic cubic T^3 + c2 T^2 + c1 T + c0 over F_p.
// Returns 0 if squarefree (over the algebraic closure), 2 with the (rational)
// double root, 3 with the triple root.
struct CubicRoots {
    int multiplicity; // 0 squarefree, 2 double, 3 triple
    mpz_class root;   // the repeated root when multiplicity > 0
};

CubicRoots cubic_structure(const mpz_class& c2, const mpz_class& c1, const mpz_class& c0, const mpz_class& p) {
    // disc of T^3 + aT^2 + bT + c: 18abc - 4a^3 c + a^2 b^2 - 4 b^3 - 27 c^2
    mpz_class d = 18 * c2 * c1 * c0 - 4 * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 - 4 * c1 * c1 * c1 - 27 * c0 * c0;
    if (mod(d, p) != 0) return {0, 0};
    // A repeated root of a cubic over F_p is rational: find it.
    for (mpz_class t = 0; t < p; ++t) {
        mpz_class val = mod(((t + c2) * t + c1) * t + c0, p);
        if (val != 0) continue;
        mpz_class deriv = mod(3 * t * t + 2 * c2 * t + c1, p);
        if (deriv != 0) continue;
        // triple iff cubic == (T - t)^3 mod p
        bool triple = (mod(c2 + 3 * t, p) == 0) && (mod(c1 - 3 * t * t, p) == 0) && (mod(c0 + t * t * t, p) == 0);
        return {triple ? 3 : 2, t};
    }
    throw std::logic_error("cubic_structure: repeated root not found");
}

// Double root of Y^2 + cY - d over F_p, assuming disc = c^2 + 4d = 0 mod p.
mpz_class quad_double_root_y(const mpz_class& c, const mpz_class& d, const mpz_class& p) {
    if (p == 2) return mod(d, p); // c even; root is sqrt(d) = d mod 2
    return mod(-c * invmod_z(2, p), p);
}

// Double root of aX^2 + cX + d over F_p (a nonzero mod p), disc = 0 mod p.
mpz_class quad_double_root_x(const mpz_class& a, const mpz_class& c, const mpz_class& d, const mpz_class& p) {
    if (p == 2) return mod(d * a, p); // c even; root is sqrt(d/a)
    return mod(-c * invmod_z(2 * a, p), p);
}

int tate_23(Model e, const mpz_class& p) {
    for (;;) {
        mpz_class delta = e.disc();
        if (delta == 0) throw std::domain_error("tate: singular curve over Q");
        long k = vp(delta, p);
        if (k == 0) return 0;
        if (vp(e.c4(), p) == 0) return 1; // type I_k

        // Additive: move the singular point to the origin.
        mpz_class r, t;
        if (p == 2) {
            r = mod(e.a4, p);
            t = mod(r * (1 + e.a2 + e.a4) + e.a6, p);
        } else { // p == 3
            r = mod(-e.b6(), p);
            t = mod(e.a1 * r + e.a3, p);
        }
        e.translate(r, 0, t);

        if (vp(e.a6, p) < 2) return static_cast<int>(k); // II
        if (vp(e.b8(), p) < 3) return static_cast<int>(k) - 1; // III
        if (vp(e.b6(), p) < 3) return static_cast<int>(k) - 2; // IV

        // Normalize: p | a1, a2; p^2 | a3, a4; p^3 | a6.
        mpz_class s, t2;
        if (p == 2) {
            s = mod(e.a2, p);
            mpz_class a6q = e.a6 / 4;
            t2 = 2 * mod(a6q, p);
        } else {
            s = mod(e.a1, p); // = -a1 * inv2 mod 3
            t2 = mod(-e.a3 * invmod_z(2, p * p), p * p);
        }
        e.translate(0, s, t2);
        if (vp(e.a1, p) < 1 || vp(e.a2, p) < 1 || vp(e.a3, p) < 2 || vp(e.a4, p) < 2 || vp(e.a6, p) < 3)
            throw std::logic_error("tate: step-6 normalization failed");

        mpz_class p2 = p * p, p3 = p * p * p;
        CubicRoots cs = cubic_structure(mod(e.a2 / p, p), mod(e.a4 / p2, p), mod(e.a6 / p3, p), p);
        if (cs.multiplicity == 0) return static_cast<int>(k) - 4; // I0*

        if (cs.multiplicity == 2) {
            // Type I_m*: walk the chain of quadratics.
            e.translate(p * cs.root, 0, 0);
            long m = 1;
            long q = 2;
            mpz_class pq = p * p;
            for (;;) {
                // Y^2 + a3/p^q Y - a6/p^2q
                mpz_class c = mod(e.a3 / pq, p);
                mpz_class d = mod(e.a6 / (pq * pq), p);
                if (mod(c * c + 4 * d, p) != 0) return static_cast<int>(k) - 4 - static_cast<int>(m);
                e.translate(0, 0, pq * quad_double_root_y(c, d, p));
                ++m;
                // a2/p X^2 + a4/p^{q+1} X + a6/p^{2q+1}
                mpz_class a21 = mod(e.a2 / p, p);
                mpz_class c2 = mod(e.a4 / (pq * p), p);
                mpz_class d2 = mod(e.a6 / (pq * pq * p), p);
                if (mod(c2 * c2 - 4 * a21 * d2, p) != 0) return static_cast<int>(k) - 4 - static_cast<int>(m);
                e.translate(pq * quad_double_root_x(a21, c2, d2, p), 0, 0);
                ++m;
                ++q;
                pq *= p;
            }
        }

        // Triple root.
        e.translate(p * cs.root, 0, 0);
        {
            mpz_class c = mod(e.a3 / p2, p);
            mpz_class d = mod(e.a6 / (p2 * p2), p);
            if (mod(c * c + 4 * d, p) != 0) return static_cast<int>(k) - 6; // IV*
            e.translate(0, 0, p2 * quad_double_root_y(c, d, p));
        }
        if (vp(e.a4, p) < 4) return static_cast<int>(k) - 7; // III*
        if (vp(e.a6, p) < 6) return static_cast<int>(k) - 8; // II*

        e.rescale(p); // not minimal at p; restart
    }
}

int tate_big(Model e, const mpz_class& p) {
    mpz_class delta = e.disc();
    if (delta == 0) throw std::domain_error("tate: singular curve over Q");
    long kd = vp(delta, p);
    long kc = vp(e.c4(), p);
    while (kc >= 4 && kd >= 12) {
        kc -= 4;
        kd -= 12;
    }
    if (kd == 0) return 0;
    if (kc == 0) return 1;
    return 2;
}

} // namespace

int conductor_exponent(const CatalogCurve& c, const mpz_class& p) {
    Model e{c.a1, c.a2, c.a3, c.a4, c.a6};
    if (p == 2 || p == 3) return tate_23(e, p);
    return tate_big(e, p);
}

mpz_class conductor(const CatalogCurve& c) {
    mpz_class d = abs(c.discriminant());
    if (d == 0) throw std::domain_error("conductor: singular curve");
    mpz_class n = 1;
    mpz_class p = 2;
    while (d > 1) {
        if (p * p > d) p = d; // remaining cofactor is prime
        if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
            while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) d /= p;
            int f = conductor_exponent(c, p);
            mpz_class pf;
            mpz_pow_ui(pf.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(f));
            n *= pf;
        }
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    return n;
}

} // namespace fibpow

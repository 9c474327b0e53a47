#ifndef FIBPOW_CURVES_HPP
#define FIBPOW_CURVES_HPP

// Elliptic curves over prime fields: trace of Frobenius by character
// sums, the fixed catalog of integral models (20A, 100A1, 200A1..200E1),
// the Frey-curve constructors, and exact j-invariants.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibpow/modmath.hpp"

namespace fibpow {

// General Weierstrass model with coefficients reduced mod an odd prime l.
struct CurveModL {
    u64 l = 0;
    u64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    u64 discriminant() const; // mod l
    bool singular() const { return discriminant() == 0; }
};

struct TraceResult {
    i64 a_l = 0;
    u64 point_count = 0; // #E(F_l), point at infinity included
};

// Exact trace by summing the quadratic character of the completed-square
// cubic over F_l. Throws std::domain_error on a singular curve.
// A prebuilt QuadTable for l may be supplied to amortize setup across
// many traces at the same l; without one, Euler/Jacobi is used per point
// for large l and a local table for small l.
TraceResult trace_of_frobenius(const CurveModL& c);
TraceResult trace_of_frobenius(const CurveModL& c, const QuadTable& table);

// Naive two-loop point enumeration; test oracle.
TraceResult trace_by_enumeration(const CurveModL& c);

// Quadratic twist by -1 (x,y) -> (-x, iy): flips the signs of a2 and a6
// for models with a1 = a3 = 0.
CurveModL twist_by_minus_one(const CurveModL& c);

// Integral model from the curve catalog.
struct CatalogCurve {
    std::string label;
    long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    std::string provenance;

    mpz_class discriminant() const;
    mpz_class c4() const;
    mpz_class c6() const;
    CurveModL reduce(u64 l) const;
};

// Exact j-invariant of a nonsingular integral model.
mpq_class j_invariant(const CatalogCurve& c);

class CurveCatalog {
public:
    // Loads the JSON array {label, a1..a6, provenance} and validates each
    // entry: nonsingular and Hasse-satisfying at 20 primes of good
    // reduction.
    static CurveCatalog load(const std::string& path);
    // The catalog compiled into the library (same data as data/curves.json).
    static const CurveCatalog& builtin();

    const CatalogCurve& by_label(const std::string& label) const;
    const std::vector<CatalogCurve>& curves() const { return curves_; }

private:
    std::vector<CatalogCurve> curves_;
    void validate() const;
};

// Frey-curve reduction: multiplicative marks the singular case
// (H_n^2 + 4 = 0 mod l, resp. 5 F_n^2 - 4 = 0 mod l), which callers
// handle through the case-(ii) congruences.
struct FreyReduction {
    bool multiplicative = false;
    CurveModL curve;
};

// Fibonacci Frey curve Y^2 = X^3 + H X^2 - X over F_l, H = H_n mod l.
FreyReduction frey_fib(u64 h_mod_l, u64 l);

// Lucas Frey curve Y^2 = X^3 - 5 F X^2 + 5 X over F_l, F = F_n mod l.
FreyReduction frey_lucas(u64 f_mod_l, u64 l);

// Conductor exponent f_p of an integral model at a prime p (Tate's
// algorithm). Used by the catalog generator and its tests.
int conductor_exponent(const CatalogCurve& c, const mpz_class& p);
mpz_class conductor(const CatalogCurve& c);

} // namespace fibpow

#endif

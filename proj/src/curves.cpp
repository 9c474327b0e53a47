#include "fibpow/curves.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace fibpow {

namespace {

struct BQuantities {
    u64 b2, b4, b6, b8;
};

BQuantities b_quantities(const CurveModL& c) {
    u64 l = c.l;
    u64 b2 = addmod(mulmod(c.a1, c.a1, l), mulmod(4, c.a2, l), l);
    u64 b4 = addmod(mulmod(2, c.a4, l), mulmod(c.a1, c.a3, l), l);
    u64 b6 = addmod(mulmod(c.a3, c.a3, l), mulmod(4, c.a6, l), l);
    u64 b8 = addmod(mulmod(mulmod(c.a1, c.a1, l), c.a6, l), mulmod(mulmod(4, c.a2, l), c.a6, l), l);
    b8 = submod(b8, mulmod(mulmod(c.a1, c.a3, l), c.a4, l), l);
    b8 = addmod(b8, mulmod(c.a2, mulmod(c.a3, c.a3, l), l), l);
    b8 = submod(b8, mulmod(c.a4, c.a4, l), l);
    return {b2, b4, b6, b8};
}

} // namespace

u64 CurveModL::discriminant() const {
    auto [b2, b4, b6, b8] = b_quantities(*this);
    u64 d = submod(0, mulmod(mulmod(b2, b2, l), b8, l), l);
    d = submod(d, mulmod(8, mulmod(b4, mulmod(b4, b4, l), l), l), l);
    d = submod(d, mulmod(27, mulmod(b6, b6, l), l), l);
    d = addmod(d, mulmod(9, mulmod(b2, mulmod(b4, b6, l), l), l), l);
    return d;
}

namespace {

// After completing the square, #E(F_l) = l + 1 + sum_x chi(g(x)) with
// g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6, so a_l = -sum_x chi(g(x)).
template <typename Chi>
TraceResult trace_impl(const CurveModL& c, Chi&& chi) {
    if (c.l < 3) throw std::domain_error("trace: l must be an odd prime >= 3");
    if (c.singular()) throw std::domain_error("trace: singular curve");
    auto [b2, b4, b6, b8] = b_quantities(c);
    (void)b8;
    u64 l = c.l;
    u64 tb4 = addmod(b4, b4, l);
    i64 sum = 0;
    for (u64 x = 0; x < l; ++x) {
        // g = ((4x + b2) x + 2 b4) x + b6
        u64 g = addmod(mulmod(4, x, l), b2, l);
        g = addmod(mulmod(g, x, l), tb4, l);
        g = addmod(mulmod(g, x, l), b6, l);
        sum += chi(g);
    }
    TraceResult r;
    r.a_l = -sum;
    r.point_count = static_cast<u64>(static_cast<i64>(l) + 1 - r.a_l);
    double hasse = 2.0 * std::sqrt(static_cast<double>(l));
    if (std::llabs(r.a_l) > static_cast<i64>(hasse) + 1)
        throw std::logic_error("trace: Hasse bound violated (internal error)");
    return r;
}

constexpr u64 kTraceTableCutoff = 1 << 24;

} // namespace

TraceResult trace_of_frobenius(const CurveModL& c) {
    if (c.l < 3) throw std::domain_error("trace: l must be an odd prime >= 3");
    if (c.l <= kTraceTableCutoff) {
        QuadTable t(c.l);
        return trace_impl(c, [&](u64 v) { return t.chi(v); });
    }
    return trace_impl(c, [&](u64 v) { return jacobi(static_cast<i64>(v), c.l); });
}

TraceResult trace_of_frobenius(const CurveModL& c, const QuadTable& table) {
    if (table.modulus() != c.l) throw std::invalid_argument("trace: table modulus mismatch");
    return trace_impl(c, [&](u64 v) { return table.chi(v); });
}

TraceResult trace_by_enumeration(const CurveModL& c) {
    if (c.singular()) throw std::domain_error("trace: singular curve");
    u64 l = c.l;
    u64 count = 1; // infinity
    for (u64 x = 0; x < l; ++x) {
        u64 rhs = addmod(mulmod(addmod(mulmod(addmod(x, c.a2, l), x, l), c.a4, l), x, l), c.a6, l);
        for (u64 y = 0; y < l; ++y) {
            u64 lhs = addmod(mulmod(y, y, l), addmod(mulmod(mulmod(c.a1, x, l), y, l), mulmod(c.a3, y, l), l), l);
            if (lhs == rhs) ++count;
        }
    }
    TraceResult r;
    r.point_count = count;
    r.a_l = static_cast<i64>(l) + 1 - static_cast<i64>(count);
    return r;
}

CurveModL twist_by_minus_one(const CurveModL& c) {
    if (c.a1 != 0 || c.a3 != 0)
        throw std::invalid_argument("twist_by_minus_one: requires a1 = a3 = 0");
    CurveModL t = c;
    t.a2 = submod(0, c.a2, c.l);
    t.a6 = submod(0, c.a6, c.l);
    return t;
}

mpz_class CatalogCurve::discriminant() const {
    mpz_class A1(a1), A2(a2), A3(a3), A4(a4), A6(a6);
    mpz_class b2 = A1 * A1 + 4 * A2;
    mpz_class b4 = 2 * A4 + A1 * A3;
    mpz_class b6 = A3 * A3 + 4 * A6;
    mpz_class b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

mpz_class CatalogCurve::c4() const {
    mpz_class A1(a1), A2(a2), A3(a3), A4(a4);
    mpz_class b2 = A1 * A1 + 4 * A2;
    mpz_class b4 = 2 * A4 + A1 * A3;
    return b2 * b2 - 24 * b4;
}

mpz_class CatalogCurve::c6() const {
    mpz_class A1(a1), A2(a2), A3(a3), A4(a4), A6(a6);
    mpz_class b2 = A1 * A1 + 4 * A2;
    mpz_class b4 = 2 * A4 + A1 * A3;
    mpz_class b6 = A3 * A3 + 4 * A6;
    return -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
}

CurveModL CatalogCurve::reduce(u64 l) const {
    auto red = [&](long v) -> u64 {
        long m = v % static_cast<long>(l);
        if (m < 0) m += static_cast<long>(l);
        return static_cast<u64>(m);
    };
    return CurveModL{l, red(a1), red(a2), red(a3), red(a4), red(a6)};
}

mpq_class j_invariant(const CatalogCurve& c) {
    mpz_class d = c.discriminant();
    if (d == 0) throw std::domain_error("j_invariant: singular model");
    mpz_class c4 = c.c4();
    mpq_class j(c4 * c4 * c4, d);
    j.canonicalize();
    return j;
}

namespace {

void validate_curve(const CatalogCurve& c) {
    if (c.discriminant() == 0)
        throw std::runtime_error("catalog: singular model " + c.label);
    // Hasse bound at 20 odd primes of good reduction.
    mpz_class disc = c.discriminant();
    int checked = 0;
    for (u64 l = 3; checked < 20; l += 2) {
        if (!is_prime_u64(l)) continue;
        if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(l))) continue;
        TraceResult t = trace_of_frobenius(c.reduce(l));
        double bound = 2.0 * std::sqrt(static_cast<double>(l));
        if (static_cast<double>(std::llabs(t.a_l)) > bound)
            throw std::runtime_error("catalog: Hasse violation for " + c.label);
        ++checked;
    }
}

CatalogCurve curve_from_json(const nlohmann::json& j) {
    CatalogCurve c;
    c.label = j.at("label").get<std::string>();
    c.a1 = j.at("a1").get<long>();
    c.a2 = j.at("a2").get<long>();
    c.a3 = j.at("a3").get<long>();
    c.a4 = j.at("a4").get<long>();
    c.a6 = j.at("a6").get<long>();
    c.provenance = j.value("provenance", "");
    return c;
}

} // namespace

void CurveCatalog::validate() const {
    for (const auto& c : curves_) validate_curve(c);
}

CurveCatalog CurveCatalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("catalog: cannot open " + path);
    nlohmann::json j;
    in >> j;
    CurveCatalog cat;
    for (const auto& e : j) cat.curves_.push_back(curve_from_json(e));
    cat.validate();
    return cat;
}

const CatalogCurve& CurveCatalog::by_label(const std::string& label) const {
    for (const auto& c : curves_) {
        if (c.label == label) return c;
    }
    throw std::out_of_range("catalog: no curve labelled " + label);
}

extern const char* kBuiltinCatalogJson;

const CurveCatalog& CurveCatalog::builtin() {
    static CurveCatalog cat = [] {
        nlohmann::json j = nlohmann::json::parse(kBuiltinCatalogJson);
        CurveCatalog c;
        for (const auto& e : j) c.curves_.push_back(curve_from_json(e));
        c.validate();
        return c;
    }();
    return cat;
}

FreyReduction frey_fib(u64 h_mod_l, u64 l) {
    if (l == 2 || l == 5) throw std::domain_error("frey_fib: l must avoid 2 and 5");
    FreyReduction r;
    u64 h = h_mod_l % l;
    r.curve = CurveModL{l, 0, h, 0, l - 1, 0};
    r.multiplicative = addmod(mulmod(h, h, l), 4, l) == 0;
    return r;
}

FreyReduction frey_lucas(u64 f_mod_l, u64 l) {
    if (l == 2 || l == 5) throw std::domain_error("frey_lucas: l must avoid 2 and 5");
    FreyReduction r;
    u64 f = f_mod_l % l;
    r.curve = CurveModL{l, 0, submod(0, mulmod(5, f, l), l), 0, 5 % l, 0};
    r.multiplicative = submod(mulmod(5, mulmod(f, f, l), l), 4, l) == 0;
    return r;
}

} // namespace fibpow

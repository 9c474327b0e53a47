#include "fibpow/kraus.hpp"

#include <sstream>
#include <stdexcept>

namespace fibpow {

namespace {

void check_l_condition_a(u64 p, u64 k, u64* l_out) {
    if (p < 7 || !is_prime_u64(p)) throw std::domain_error("kraus: p must be a prime >= 7");
    if (k == 0) throw std::domain_error("kraus: k must be positive");
    u64 l = 2 * k * p + 1;
    if (!is_prime_u64(l)) throw std::domain_error("kraus: l = 2kp+1 is composite");
    u64 r5 = l % 5;
    if (r5 != 1 && r5 != 4) throw std::domain_error("kraus: l != +-1 (mod 5)");
    *l_out = l;
}

// Enumerate the subgroup of 2p-th powers {g^{2pj}} of F_l*, minus 1,
// then filter by the Legendre condition on fn(zeta).
template <typename Fn>
ZetaSet zeta_set_impl(u64 p, u64 k, const QuadTable& table, Fn&& admissible_square) {
    u64 l;
    check_l_condition_a(p, k, &l);
    ZetaSet zs;
    zs.p = p;
    zs.k = k;
    zs.l = l;
    u64 g = primitive_root(l);
    u64 h = powmod(g, 2 * p, l);
    u64 zeta = 1;
    for (u64 j = 1; j < k; ++j) {
        zeta = mulmod(zeta, h, l);
        if (zeta == 1) break; // subgroup exhausted early (cannot happen: order is k)
        u64 w = admissible_square(zeta);
        int chi = table.chi(w);
        if (chi == -1) continue;
        if (chi == 0) zs.has_zero_legendre = true;
        zs.zetas.push_back(zeta);
        zs.deltas.push_back(w == 0 ? 0 : sqrtmod(w, l));
    }
    return zs;
}

} // namespace

ZetaSet zeta_set(u64 p, u64 k) {
    u64 l;
    check_l_condition_a(p, k, &l);
    QuadTable table(l);
    return zeta_set_impl(p, k, table, [&](u64 zeta) { return submod(mulmod(5, zeta, l), 4, l); });
}

ZetaSet zeta_set_lucas(u64 p, u64 k) {
    u64 l;
    check_l_condition_a(p, k, &l);
    QuadTable table(l);
    u64 inv5 = invmod(5, l);
    return zeta_set_impl(p, k, table, [&](u64 zeta) { return mulmod(addmod(zeta, 4, l), inv5, l); });
}

KrausChecks kraus_conditions(SeqKind kind, u64 p, u64 k, const KrausSearchOptions& opts) {
    KrausChecks checks;
    u64 l;
    try {
        check_l_condition_a(p, k, &l);
    } catch (const std::domain_error&) {
        return checks;
    }
    checks.a_l_prime_pm1_mod5 = true;

    u64 s = sqrt5_mod(l);
    if (opts.use_larger_sqrt5) s = l - s;
    u64 omega = mulmod(addmod(1, s, l), invmod(2, l), l);
    checks.b_omega_order = powmod(omega, 2 * k, l) != 1;
    if (!checks.b_omega_order) return checks;

    QuadTable table(l);
    ZetaSet zs = kind == SeqKind::Fibonacci ? zeta_set(p, k) : zeta_set_lucas(p, k);
    const CatalogCurve& fixed = CurveCatalog::builtin().by_label(kind == SeqKind::Fibonacci ? "20A2" : "200B1");
    i64 a_e = trace_of_frobenius(fixed.reduce(l), table).a_l;
    u64 ae2_mod_p = static_cast<u64>(mulmod(static_cast<u64>((a_e % (i64)p + (i64)p)), static_cast<u64>((a_e % (i64)p + (i64)p)), p));

    checks.c_traces = true;
    for (u64 delta : zs.deltas) {
        CurveModL curve = kind == SeqKind::Fibonacci
            ? CurveModL{l, 0, delta, 0, l - 1, 0}
            : CurveModL{l, 0, submod(0, mulmod(5, delta, l), l), 0, 5 % l, 0};
        if (curve.singular())
            throw std::logic_error("kraus: E^zeta singular (zeta = 0 cannot be in A(p,k))");
        i64 a_z = trace_of_frobenius(curve, table).a_l;
        u64 az2_mod_p = static_cast<u64>(mulmod(static_cast<u64>((a_z % (i64)p + (i64)p)), static_cast<u64>((a_z % (i64)p + (i64)p)), p));
        if (az2_mod_p == ae2_mod_p) {
            checks.c_traces = false;
            break;
        }
    }
    return checks;
}

std::optional<KrausCertificate> kraus_search(SeqKind kind, u64 p, const KrausSearchOptions& opts) {
    for (u64 k = 1; k <= opts.k_max; ++k) {
        u64 l = 2 * k * p + 1;
        if (!is_prime_u64(l)) continue;
        u64 r5 = l % 5;
        if (r5 != 1 && r5 != 4) continue;
        KrausChecks checks = kraus_conditions(kind, p, k, opts);
        if (!checks.all()) continue;

        KrausCertificate cert;
        cert.kind = kind;
        cert.p = p;
        cert.k = k;
        cert.l = l;
        cert.sqrt5 = sqrt5_mod(l);
        ZetaSet zs = kind == SeqKind::Fibonacci ? zeta_set(p, k) : zeta_set_lucas(p, k);
        cert.zeta_count = zs.zetas.size();
        cert.delta_zero_flagged = zs.has_zero_legendre;
        const CatalogCurve& fixed = CurveCatalog::builtin().by_label(kind == SeqKind::Fibonacci ? "20A2" : "200B1");
        cert.a_l_e = trace_of_frobenius(fixed.reduce(l)).a_l;
        cert.checks = checks;
        if (kind == SeqKind::Lucas)
            cert.note = "lucas delta reconstructed from y^2p = 5F^2-4: delta^2 = (zeta+4)/5";
        return cert;
    }
    return std::nullopt;
}

bool verify_kraus_certificate(const KrausCertificate& cert, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    u64 l;
    try {
        check_l_condition_a(cert.p, cert.k, &l);
    } catch (const std::domain_error& e) {
        return fail(e.what());
    }
    if (l != cert.l) return fail("stored l does not match 2kp+1");
    if (sqrt5_mod(l) != cert.sqrt5) return fail("stored sqrt5 is not the canonical root");
    KrausChecks rechecked = kraus_conditions(cert.kind, cert.p, cert.k);
    if (rechecked.a_l_prime_pm1_mod5 != cert.checks.a_l_prime_pm1_mod5 ||
        rechecked.b_omega_order != cert.checks.b_omega_order ||
        rechecked.c_traces != cert.checks.c_traces)
        return fail("re-derived condition outcomes disagree");
    if (!rechecked.all()) return fail("certificate conditions do not all hold");
    const CatalogCurve& fixed = CurveCatalog::builtin().by_label(cert.kind == SeqKind::Fibonacci ? "20A2" : "200B1");
    if (trace_of_frobenius(fixed.reduce(l)).a_l != cert.a_l_e) return fail("stored a_l(E) mismatch");
    ZetaSet zs = cert.kind == SeqKind::Fibonacci ? zeta_set(cert.p, cert.k) : zeta_set_lucas(cert.p, cert.k);
    if (zs.zetas.size() != cert.zeta_count) return fail("stored zeta count mismatch");
    return true;
}

EliminationReport eliminate_newforms(const std::string& label, const std::vector<u64>& s_primes) {
    const CatalogCurve& target = CurveCatalog::builtin().by_label(label);
    EliminationReport rep;
    rep.label = label;
    rep.s_primes = s_primes;

    ResidueClassSet acc;
    acc.modulus = 6;
    acc.residues = {mpz_class(1), mpz_class(5)}; // T0

    bool all_smooth = true;
    for (u64 l : s_primes) {
        if (l == 2 || l == 5 || !is_prime_u64(l)) throw std::domain_error("eliminate: S must avoid 2 and 5");
        EliminationLocal loc;
        loc.l = l;
        u64 M = period_m(l);
        i64 a_i = trace_of_frobenius(target.reduce(l)).a_l;

        loc.t_l.modulus = M;
        mpz_class g = 1;
        u64 f0 = 0 % l, f1 = 1 % l;
        QuadTable table(l);
        for (u64 m = 0; m < M; ++m) {
            FreyReduction fr = frey_lucas(f0, l);
            if (!fr.multiplicative) {
                i64 d = trace_of_frobenius(fr.curve, table).a_l - a_i;
                if (d == 0) {
                    loc.t_l.residues.push_back(mpz_class(static_cast<unsigned long>(m)));
                } else {
                    mpz_class ad(static_cast<long>(std::llabs(d)));
                    mpz_class lg;
                    mpz_lcm(lg.get_mpz_t(), g.get_mpz_t(), ad.get_mpz_t());
                    g = lg;
                }
            }
            u64 f2 = addmod(f0, f1, l);
            f0 = f1;
            f1 = f2;
        }
        loc.g_l = g;
        u64 r5 = l % 5;
        if (r5 == 1 || r5 == 4) {
            mpz_class m1(static_cast<long>(static_cast<i64>(l) + 1 - a_i));
            mpz_class m2(static_cast<long>(static_cast<i64>(l) + 1 + a_i));
            mpz_class h;
            mpz_lcm(h.get_mpz_t(), g.get_mpz_t(), m1.get_mpz_t());
            mpz_lcm(h.get_mpz_t(), h.get_mpz_t(), m2.get_mpz_t());
            loc.h_l = h;
        } else {
            loc.h_l = g;
        }
        // 5-smooth test on |h_l|
        mpz_class h = abs(loc.h_l);
        for (unsigned long f : {2ul, 3ul, 5ul}) {
            while (h > 1 && mpz_divisible_ui_p(h.get_mpz_t(), f)) h /= f;
        }
        loc.h_smooth = (h == 1);
        all_smooth = all_smooth && loc.h_smooth;

        acc = intersect(acc, loc.t_l);
        rep.locals.push_back(std::move(loc));
    }
    rep.intersected = acc;
    rep.success = all_smooth && acc.residues.empty();
    return rep;
}

} // namespace fibpow

#include "fibpow/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace fibpow {

void check_field_shape(const FieldShape& s) {
    if (s.d != s.r1 + 2 * s.r2) throw std::domain_error("field shape: d != r1 + 2 r2");
    if (s.d < 2) throw std::domain_error("field shape: degree must be >= 2");
    if (s.r1 > 0 && s.w != 2) throw std::domain_error("field shape: w must be 2 when r1 > 0");
}

LogMagnitude landau_c(const FieldShape& shape, mpfr_prec_t prec) {
    check_field_shape(shape);
    Real ln_a = Real(-(long)shape.r2, prec) * log(Real(2.0, prec))
              - Real((long)shape.d, prec) / Real(2.0, prec) * log(Real::pi(prec))
              + shape.disc_bound.ln() / Real(2.0, prec);
    Real ln_pre = Real(-(long)shape.r1, prec) * log(Real(2.0, prec)) + log(Real((long)shape.w, prec));

    bool have = false;
    Real best(prec);
    for (int t = 0; t <= 999; ++t) {
        Real s = Real(2.0, prec) - Real((long)t, prec) / Real(1000.0, prec);
        Real ln_f = ln_pre + s * ln_a;
        if (shape.r1 > 0) ln_f += Real((long)shape.r1, prec) * lgamma_real(s / Real(2.0, prec));
        if (shape.r2 > 0) ln_f += Real((long)shape.r2, prec) * lgamma_real(s);
        ln_f += Real((long)(shape.d + 1), prec) * log(s);
        if (t > 0) // s = 2 contributes (s-1)^(1-d) = 1
            ln_f += Real(1L - (long)shape.d, prec) * log(s - Real(1.0, prec));
        if (!have || ln_f < best) {
            best = ln_f;
            have = true;
        }
    }
    // ~1000 grid evaluations, each a handful of correctly rounded ops.
    double err = ldexp(std::max(1.0, std::fabs(best.to_double())), 8 - static_cast<int>(prec))
               + shape.disc_bound.err() / 2.0;
    return LogMagnitude(best, err);
}

namespace {

LogMagnitude assemble_n_max(unsigned long p, const Real& ln_theta, double err, mpfr_prec_t prec) {
    // n_max = 2.5 p Theta ln Theta
    Real ln_n = log(Real(2.5, prec)) + log(Real((long)p, prec)) + ln_theta + log(ln_theta);
    return LogMagnitude(ln_n, err * 1.01 + 1e-40);
}

} // namespace

ThetaBound theta_fib(unsigned long p, mpfr_prec_t prec) {
    if (p < 7 || !is_prime_u64(p)) throw std::domain_error("theta_fib: p must be a prime >= 7");
    // |D_K| <= 10^{p-1} p^p, K totally real of degree p
    FieldShape shape;
    shape.d = static_cast<unsigned>(p);
    shape.r1 = static_cast<unsigned>(p);
    shape.r2 = 0;
    shape.w = 2;
    Real ln_disc = Real((long)(p - 1), prec) * log(Real(10.0, prec)) + Real((long)p, prec) * log(Real((long)p, prec));
    shape.disc_bound = LogMagnitude::from_ln(ln_disc);
    LogMagnitude ck = landau_c(shape, prec);

    Real lp = log(Real((long)p, prec));
    Real lp1 = log(Real((long)(p - 1), prec));
    Real ln_theta = log(Real(3.9, prec))
                  + Real((long)(p + 3), prec) * log(Real(30.0, prec))
                  + Real(13.0, prec) / Real(2.0, prec) * lp
                  + Real((long)(p + 1), prec) * lp1
                  + Real(2.0, prec) * lgamma_real(Real((long)p, prec)) // ((p-1)!)^2
                  + log(Real((long)(3 * p + 2), prec))
                  + log(Real(1.0, prec) + lp + lp1)
                  + ck.ln();
    double err = ck.err() + ldexp(std::max(1.0, std::fabs(ln_theta.to_double())), 8 - static_cast<int>(prec));
    ThetaBound tb;
    tb.theta = LogMagnitude(ln_theta, err);
    tb.n_max = assemble_n_max(p, ln_theta, err, prec);
    return tb;
}

ThetaBound theta_lucas(unsigned long p, mpfr_prec_t prec) {
    if (p < 7 || !is_prime_u64(p)) throw std::domain_error("theta_lucas: p must be a prime >= 7");
    // |D_K| <= 5^p p^{2p}, d = 2p, r1 = 2, r2 = p-1
    FieldShape shape;
    shape.d = static_cast<unsigned>(2 * p);
    shape.r1 = 2;
    shape.r2 = static_cast<unsigned>(p - 1);
    shape.w = 2;
    Real ln_disc = Real((long)p, prec) * log(Real(5.0, prec)) + Real((long)(2 * p), prec) * log(Real((long)p, prec));
    shape.disc_bound = LogMagnitude::from_ln(ln_disc);
    LogMagnitude ck = landau_c(shape, prec);

    Real lp = log(Real((long)p, prec));
    Real lp1 = log(Real((long)(p - 1), prec));
    Real ln_theta = log(Real(67.0, prec))
                  + Real((long)(p + 5), prec) * log(Real(30.0, prec))
                  + Real((long)(p + 2), prec) * lp1
                  + Real(3.0, prec) * lp
                  + Real(5.5, prec) * log(Real((long)(p + 2), prec))
                  + Real(2.0, prec) * lgamma_real(Real((long)(p + 1), prec)) // (p!)^2
                  + log(Real(1.0, prec) + log(Real(2.0, prec)) + lp + lp1)
                  + ck.ln();
    double err = ck.err() + ldexp(std::max(1.0, std::fabs(ln_theta.to_double())), 8 - static_cast<int>(prec));
    ThetaBound tb;
    tb.theta = LogMagnitude(ln_theta, err);
    tb.n_max = assemble_n_max(p, ln_theta, err, prec);
    return tb;
}

Real matveev_lower(const Real& D, bool real_case, const std::vector<Real>& A, const Real& B) {
    size_t n = A.size();
    if (n == 0) throw std::domain_error("matveev_lower: need at least one height");
    mpfr_prec_t prec = D.prec();
    Real prod(1.0, prec);
    for (const Real& a : A) {
        if (a < Real(0.16, prec)) throw std::domain_error("matveev_lower: A_j below the 0.16 floor");
        prod *= a;
    }
    Real one(1.0, prec);
    Real nn(static_cast<long>(n), prec);
    Real value(prec);
    if (real_case) {
        value = Real(-1.4, prec) * pow(Real(30.0, prec), nn + Real(3.0, prec)) * pow(nn, Real(4.5, prec))
              * D * D * (one + log(D)) * (one + log(B)) * prod;
    } else {
        value = Real(-3.0, prec) * pow(Real(30.0, prec), nn + Real(4.0, prec)) * pow(nn + one, Real(5.5, prec))
              * D * D * (one + log(D)) * (one + log(nn * B)) * prod;
    }
    return value;
}

double matveev_first_bound_fib(double log_y) {
    // Lambda = p log(omega^k / y) - q log omega - log sqrt5, written with
    // B = p. Heights: A(omega) = log omega, A(omega^k/y) = 2 log y
    // (h(omega^k/y) <= log y + o(1)), A(sqrt5) = 2 h(sqrt5) = log 5.
    // Solve 2 p log y = 1 - matveev for the fixed point in p.
    Real D(2.0);
    Real ln_omega = log((Real(1.0) + sqrt(Real(5.0))) / Real(2.0));
    Real A1 = ln_omega;
    Real A2 = Real(2.0) * Real(log_y);
    Real A3 = log(Real(5.0));
    double p = 1e16;
    for (int i = 0; i < 60; ++i) {
        Real lower = matveev_lower(D, true, {A1, A2, A3}, Real(p));
        double next = (1.0 - lower.to_double()) / (2.0 * log_y);
        if (std::fabs(next - p) <= 1e-9 * p) {
            p = next;
            break;
        }
        p = next;
    }
    return p;
}

} // namespace fibpow

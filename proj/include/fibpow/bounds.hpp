#ifndef FIBPOW_BOUNDS_HPP
#define FIBPOW_BOUNDS_HPP

// Log-space evaluation of the analytic upper bounds: Landau's regulator
// bound C_K(L), the Theta(p) expressions with n < 2.5 p Theta log Theta,
// and Matveev's lower bound for linear forms in logarithms. Quantities
// like Theta(733) ~ 10^8700 only ever exist as their natural logarithm.

#include <cmath>
#include <vector>

#include "fibpow/real.hpp"
#include "fibpow/seqcore.hpp"

namespace fibpow {

// A positive quantity stored as its natural log, with an explicit bound
// on the absolute error of ln_value. Comparisons demand a margin of 10x
// the accumulated error and throw PrecisionError otherwise.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class LogMagnitude {
public:
    LogMagnitude() = default;
    LogMagnitude(Real ln, double err_abs) : ln_(std::move(ln)), err_(err_abs) {}
    static LogMagnitude from_ln(Real ln) {
        double e = ldexp(std::max(1.0, std::fabs(ln.to_double())), 4 - static_cast<int>(ln.prec()));
        return LogMagnitude(std::move(ln), e);
    }
    static LogMagnitude from_value(const Real& v) { return from_ln(log(v)); }

    const Real& ln() const { return ln_; }
    double err() const { return err_; }
    double ln_d() const { return ln_.to_double(); }
    double log10() const { return (ln_ / log(Real(10.0))).to_double(); }

    LogMagnitude operator*(const LogMagnitude& o) const { return {ln_ + o.ln_, err_ + o.err_}; }
    LogMagnitude operator/(const LogMagnitude& o) const { return {ln_ - o.ln_, err_ + o.err_}; }
    LogMagnitude pow_ui(unsigned long k) const { return {ln_ * Real(static_cast<long>(k)), err_ * static_cast<double>(k)}; }

    // value(this) > value(o), demanding a 10x error margin
    bool definitely_greater(const LogMagnitude& o) const {
        Real diff = ln_ - o.ln_;
        double margin = 10.0 * (err_ + o.err_);
        if (abs(diff).to_double() <= margin)
            throw PrecisionError("LogMagnitude compare without margin; raise precision");
        return diff.sign() > 0;
    }

private:
    Real ln_;
    double err_ = 0.0;
};

// Number-field shape for Lemma-style regulator bounds.
struct FieldShape {
    unsigned d = 0;  // degree, = r1 + 2 r2
    unsigned r1 = 0; // real embeddings
    unsigned r2 = 0; // complex pairs
    unsigned w = 2;  // roots of unity
    LogMagnitude disc_bound; // L with |D_K| <= L
};

void check_field_shape(const FieldShape& s);

// Landau: R_K < C_K(L) = min over s = 2 - t/1000 of
//   2^{-r1} w a^s Gamma(s/2)^{r1} Gamma(s)^{r2} s^{d+1} (s-1)^{1-d},
// a = 2^{-r2} pi^{-d/2} sqrt(L). Log-space; returns ln C_K(L).
LogMagnitude landau_c(const FieldShape& shape, mpfr_prec_t prec = Real::kDefaultPrec);

struct ThetaBound {
    LogMagnitude theta;
    LogMagnitude n_max; // n < 2.5 p Theta ln Theta
};

// Fibonacci: Theta = 3.9 * 30^{p+3} p^{13/2} (p-1)^{p+1} ((p-1)!)^2
//            (3p+2) (1 + ln(p(p-1))) C_K(10^{p-1} p^p),
// field totally real of degree p.
ThetaBound theta_fib(unsigned long p, mpfr_prec_t prec = Real::kDefaultPrec);

// Lucas: Theta = 67 * 30^{p+5} (p-1)^{p+2} p^3 (p+2)^{5.5} (p!)^2
//        (1 + ln(2p(p-1))) C_K(5^p p^{2p}), d = 2p, r1 = 2, r2 = p-1.
ThetaBound theta_lucas(unsigned long p, mpfr_prec_t prec = Real::kDefaultPrec);

// Matveev's bound: returns the lower bound for ln|Lambda| (a negative Real).
// complex case: -3 * 30^{n+4} (n+1)^{5.5} D^2 (1+ln D)(1+ln nB) prod A_j
// real case:    -1.4 * 30^{n+3} n^{4.5}  D^2 (1+ln D)(1+ln B)  prod A_j
Real matveev_lower(const Real& D, bool real_case, const std::vector<Real>& A, const Real& B);

// First unconditional exponent bound for the Fibonacci three-log form
// (real case, n = 3, D = 2, A = {log omega, 2 log y, log 5}, B = p):
// solves 2 p log y < 1 - matveev_lower(...) for the fixed point in p.
double matveev_first_bound_fib(double log_y = 1e20);

} // namespace fibpow

#endif

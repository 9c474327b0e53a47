#ifndef FIBPOW_REAL_HPP
#define FIBPOW_REAL_HPP

// Thin RAII wrapper over mpfr_t. Default 256-bit working precision,
// overridable per value. Rounding is to nearest throughout; the
// LogMagnitude layer on top tracks accumulated error explicitly.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

namespace fibpow {

class Real {
public:
    static constexpr mpfr_prec_t kDefaultPrec = 256;

    Real() { mpfr_init2(x_, kDefaultPrec); mpfr_set_ui(x_, 0, MPFR_RNDN); }
    Real(double v, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(x_, prec); mpfr_set_d(x_, v, MPFR_RNDN); }
    Real(long v, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }
    Real(unsigned long v, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(x_, prec); mpfr_set_ui(x_, v, MPFR_RNDN); }
    Real(const mpz_class& v, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(x_, prec); mpfr_set_z(x_, v.get_mpz_t(), MPFR_RNDN); }
    Real(const std::string& s, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(x_, prec); mpfr_set_str(x_, s.c_str(), 10, MPFR_RNDN); }

    static Real zero(mpfr_prec_t prec) {
        Real r;
        mpfr_set_prec(r.x_, prec);
        mpfr_set_ui(r.x_, 0, MPFR_RNDN);
        return r;
    }

    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_swap(x_, o.x_); }
    Real& operator=(Real o) { mpfr_swap(x_, o.x_); return *this; }
    ~Real() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    std::string str(int digits = 30) const;
    mpz_class floor_to_mpz() const {
        mpz_class r;
        mpfr_get_z(r.get_mpz_t(), x_, MPFR_RNDD);
        return r;
    }

    int sign() const { return mpfr_sgn(x_); }

    friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }
    Real operator-() const {
        Real r = zero(prec());
        mpfr_neg(r.x_, x_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& b) { mpfr_add(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& b) { mpfr_div(x_, x_, b.x_, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) == 0; }

    static Real pi(mpfr_prec_t prec = kDefaultPrec) {
        Real r = zero(prec);
        mpfr_const_pi(r.x_, MPFR_RNDN);
        return r;
    }

private:
    using BinFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Real binop(const Real& a, const Real& b, BinFn fn) {
        Real r = zero(std::max(mpfr_get_prec(a.x_), mpfr_get_prec(b.x_)));
        fn(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    mpfr_t x_;
};

inline Real log(const Real& a) { Real r = Real::zero(a.prec()); mpfr_log(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real exp(const Real& a) { Real r = Real::zero(a.prec()); mpfr_exp(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real sqrt(const Real& a) { Real r = Real::zero(a.prec()); mpfr_sqrt(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real abs(const Real& a) { Real r = Real::zero(a.prec()); mpfr_abs(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real floor(const Real& a) { Real r = Real::zero(a.prec()); mpfr_floor(r.get(), a.get()); return r; }
inline Real pow(const Real& a, const Real& b) { Real r = Real::zero(std::max(a.prec(), b.prec())); mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
inline Real lgamma_real(const Real& a) {
    Real r = Real::zero(a.prec());
    int sign = 0;
    mpfr_lgamma(r.get(), &sign, a.get(), MPFR_RNDN);
    return r;
}

} // namespace fibpow

#endif

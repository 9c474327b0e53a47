#include "fibpow/threelog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fibpow/bounds.hpp"

namespace fibpow {

double theta_lower(long k0, long i_count) {
    if (k0 < 3) throw std::domain_error("theta_lower: K0 must be >= 3");
    if (i_count < k0 * (k0 + 1) / 2) throw std::domain_error("theta_lower: I below K0(K0+1)/2");
    double K = static_cast<double>(k0);
    double I = static_cast<double>(i_count);
    return (I * I / (2.0 * (K + 1.0)))
         * (1.0 + (K - 1.0) * (K + 1.0) / I - K * (K + 2.0) * (K + 1.0) * (K + 1.0) / (12.0 * I * I));
}

long theta_exact_greedy(long k0, long i_count) {
    long total = 0;
    long taken = 0;
    for (long n = 0; taken < i_count; ++n) {
        long width = std::min(n, k0) + 1; // points (k, m), m <= k0, k+m = n
        long use = std::min(width, i_count - taken);
        total += n * use;
        taken += use;
    }
    return total;
}

Real factorial_bound(const Real& k) {
    mpfr_prec_t prec = k.prec();
    Real one(1.0, prec), two(2.0, prec), three(3.0, prec);
    Real pi = Real::pi(prec);
    Real log_k = log(k);
    Real term1 = two * log_k - three;
    Real term2 = two * log(two * pi * k / exp(three / two)) / (k - one);
    Real term3 = (two + Real(6.0, prec) / (pi * pi) + log_k) / (three * k * (k - one));
    return term1 + term2 - term3;
}

double g_r_bound(long k, long l, long r, long s, long t) {
    double N = static_cast<double>(k) * k * l;
    double g = 0.25 - N / (12.0 * static_cast<double>(r) * s * t);
    return N * l * r / 2.0 * g;
}

namespace {

Real mpz_to_real(const mpz_class& z, mpfr_prec_t prec = Real::kDefaultPrec) {
    return Real(z, prec);
}

bool ge3(const mpz_class& v) { return v >= 3; }

} // namespace

MauriceVerdict maurice_check(const ThreeLogParams& p, ConditionReading reading) {
    MauriceVerdict v;
    mpfr_prec_t prec = p.rho.prec();

    // Structural invariants.
    std::string msg;
    auto need = [&](bool ok, const char* what) {
        if (!ok && msg.empty()) msg = what;
        return ok;
    };
    bool ok = true;
    ok &= need(ge3(p.K) && ge3(p.L) && ge3(p.R) && ge3(p.R1) && ge3(p.R2) && ge3(p.S) && ge3(p.S1)
                   && ge3(p.S2) && ge3(p.T) && ge3(p.T1) && ge3(p.T2),
               "all of K,L,R*,S*,T* must be >= 3");
    ok &= need(p.K >= 2 * p.L, "K >= 2L required");
    ok &= need(p.L >= 5, "L >= 5 required");
    ok &= need(p.R > p.R1 + p.R2, "R > R1 + R2 required");
    ok &= need(p.S > p.S1 + p.S2, "S > S1 + S2 required");
    ok &= need(p.T > p.T1 + p.T2, "T > T1 + T2 required");
    ok &= need(p.T1 >= p.R1, "T1 >= R1 required");
    ok &= need(p.rho > Real(1.0, prec), "rho > 1 required");
    ok &= need(!(p.a1 < p.a3), "a1 >= a3 required");
    ok &= need(p.b1 > 0 && p.b2 > 0 && p.b3 > 0, "b_i must be positive");
    mpz_class rst = p.R * p.S * p.T;
    mpz_class n = p.n_value();
    ok &= need(rst >= n, "RST >= N required");
    v.structure_ok = ok;
    v.structure_msg = msg;
    if (!ok) return v;

    Real one(1.0, prec), two(2.0, prec), four(4.0, prec);
    Real K = mpz_to_real(p.K, prec), L = mpz_to_real(p.L, prec);
    Real R = mpz_to_real(p.R, prec), S = mpz_to_real(p.S, prec), T = mpz_to_real(p.T, prec);
    Real N = mpz_to_real(n, prec);
    Real g = one / four - N / (Real(12.0, prec) * mpz_to_real(rst, prec));

    // log b <= log(b2 eta0) + log(b2 zeta0) - factorial piece, with
    // b2 eta0 = ((R-1) b2 + (S-1) b1)/2 and b2 zeta0 = ((T-1) b2 + (S-1) b3)/2.
    Real b1 = mpz_to_real(p.b1, prec), b2 = mpz_to_real(p.b2, prec), b3 = mpz_to_real(p.b3, prec);
    Real eta0b2 = ((R - one) * b2 + (S - one) * b1) / two;
    Real zeta0b2 = ((T - one) * b2 + (S - one) * b3) / two;
    v.log_b = log(eta0b2) + log(zeta0b2) - factorial_bound(K);

    Real lhs = (K * L / two + L / four - one - two * K / (Real(3.0, prec) * L)) * log(p.rho);
    Real rhs = (p.D + one) * log(N)
             + g * L * (p.a1 * R + p.a2 * S + p.a3 * T)
             + p.D * (K - one) * v.log_b
             - two * log(exp(one) / two);
    v.cond_o = lhs >= rhs;

    mpz_class r1p = p.R1 + 1, s1p = p.S1 + 1, t1p = p.T1 + 1;
    mpz_class r2p = p.R2 + 1, s2p = p.S2 + 1, t2p = p.T2 + 1;
    v.cond_i = 4 * r1p * s1p >= t1p;
    v.cond_ii = 4 * r1p * t1p >= s1p;
    mpz_class rhs_iii = 12 * (p.K - 1) * (p.K - 1) * (p.L - 1);
    mpz_class lhs_iv = r1p * s1p * t1p;
    mpz_class rhs_iv = 8 * (2 * p.K + p.L - 2) * (2 * p.K + p.L - 2);
    bool iii_theorem = lhs_iv >= rhs_iii;
    bool iii_prop = r2p * s2p * t2p >= rhs_iii;
    bool iv_theorem = 4 * lhs_iv >= rhs_iv;
    bool iv_prop = lhs_iv >= rhs_iv;
    switch (reading) {
        case ConditionReading::Theorem:
            v.cond_iii = iii_theorem;
            v.cond_iv = iv_theorem;
            break;
        case ConditionReading::Proposition:
            v.cond_iii = iii_prop;
            v.cond_iv = iv_prop;
            break;
        case ConditionReading::Conjunction:
            v.cond_iii = iii_theorem && iii_prop;
            v.cond_iv = iv_theorem && iv_prop;
            break;
    }

    v.lambda_prime_log_bound = -(K * L * log(p.rho));

    // Degenerate-case windows.
    double r1d = mpz_to_real(r1p, prec).to_double();
    double s1d = mpz_to_real(s1p, prec).to_double();
    double t1d = mpz_to_real(t1p, prec).to_double();
    v.windows.r_exact = std::min(r1d, std::sqrt(r1d * s1d / t1d));
    v.windows.s_exact = std::min(s1d, std::sqrt(r1d * s1d / t1d));
    v.windows.t_exact = std::min(t1d, std::sqrt(s1d * t1d / r1d));
    v.windows.t2_exact = std::min(t1d, std::sqrt(r1d * t1d / s1d));
    double a1d = p.a1.to_double(), a3d = p.a3.to_double();
    v.windows.r_window = static_cast<long>(std::floor(1.0 + 1.0001 * std::sqrt(s1d * a3d / a1d)));
    v.windows.t_window = static_cast<long>(std::floor(1.0 + 1.0001 * std::sqrt(s1d * a1d / a3d)));
    return v;
}

ThreeLogParams param_recipe(long L, const Real& m, const Real& rho,
                            const Real& a1, const Real& a2, const Real& a3) {
    if (L < 100) throw std::domain_error("param_recipe: L must be >= 100");
    mpfr_prec_t prec = m.prec();
    Real md = m;
    if (!(md > Real(10.0, prec)) || !(md < Real(50.0, prec)))
        throw std::domain_error("param_recipe: m must lie in (10, 50)");
    if (!(rho > exp(Real(1.0, prec)))) throw std::domain_error("param_recipe: rho must exceed e");
    if (a3 > a1) throw std::domain_error("param_recipe: needs a3 <= a1");

    Real Lr(static_cast<long>(L), prec);
    Real c1 = pow(Real(32.001, prec) * m * m, Real(1.0, prec) / Real(3.0, prec));
    Real c2 = pow(Real(12.0, prec) * m * m, Real(1.0, prec) / Real(3.0, prec));
    Real L23 = pow(Lr, Real(2.0, prec) / Real(3.0, prec));

    ThreeLogParams p;
    p.rho = rho;
    p.D = Real(2.0, prec);
    p.a1 = a1;
    p.a2 = a2;
    p.a3 = a3;
    p.L = L;
    p.K = (m * Lr * a1 * a2 * a3).floor_to_mpz();
    p.R1 = (c1 * L23 * a2 * a3).floor_to_mpz();
    p.S1 = (c1 * L23 * a1 * a3).floor_to_mpz();
    p.T1 = (c1 * L23 * a1 * a2).floor_to_mpz();
    p.R2 = (c2 * Lr * a2 * a3).floor_to_mpz();
    p.S2 = (c2 * Lr * a1 * a3).floor_to_mpz();
    p.T2 = (c2 * Lr * a1 * a2).floor_to_mpz();
    p.R = p.R1 + p.R2 + 1;
    p.S = p.S1 + p.S2 + 1;
    p.T = p.T1 + p.T2 + 1;
    p.b1 = 1;
    p.b2 = 1;
    p.b3 = 1;
    return p;
}

Real two_log_lower(const TwoLogInput& in) {
    mpfr_prec_t prec = in.D.prec();
    Real one(1.0, prec);
    if (in.log_a1 < one / in.D || in.log_a2 < one / in.D)
        throw std::domain_error("two_log_lower: log A_i below 1/D");
    Real bprime = in.b1 / (in.D * in.log_a2) + in.b2 / (in.D * in.log_a1);
    Real t = log(bprime) + Real(0.19, prec);
    Real floor18 = Real(18.0, prec) / in.D;
    if (t < floor18) t = floor18;
    if (t < one) t = one;
    return -(Real(25.55, prec) * in.D * in.D * in.D * in.D * t * t * in.log_a1 * in.log_a2);
}

namespace {

struct HeightConstants {
    Real ln_omega;  // log((1+sqrt5)/2)
    Real ln_sqrt5;  // log(sqrt 5) = h(sqrt5)
    Real h_omega;   // h(omega) = log(omega)/2
    HeightConstants()
        : ln_omega(log((Real(1.0) + sqrt(Real(5.0))) / Real(2.0))),
          ln_sqrt5(log(Real(5.0)) / Real(2.0)),
          h_omega(ln_omega / Real(2.0)) {}
};

const HeightConstants& heights() {
    static HeightConstants h;
    return h;
}

// Solve 2 p log_y = 1 - two_log_lower(p) downward from p_start.
double solve_c3_bound(double log_a2_two, double p_start, double log_y) {
    const auto& h = heights();
    (void)h;
    double p = p_start;
    for (int i = 0; i < 200; ++i) {
        TwoLogInput in;
        in.D = Real(2.0);
        in.log_a2 = Real(log_a2_two);
        in.log_a1 = Real(1.001 * log_y); // log A1 = 1.001 h(omega^k / y), h ~ log y
        in.b1 = Real(p);
        in.b2 = Real(p); // |b'| <= p; enters through the negligible 1/log A1 term
        double lower = two_log_lower(in).to_double();
        double next = (1.0 - lower) / (2.0 * log_y);
        if (std::fabs(next - p) <= 1e-9 * std::max(p, 1.0)) return next;
        p = next;
    }
    return p;
}

} // namespace

ReductionIteration reduction_step(long L, const Real& rho, const Real& m,
                                  double p_in, const ReductionOptions& opts) {
    const auto& hc = heights();
    mpfr_prec_t prec = Real::kDefaultPrec;
    Real rho_r = rho;
    Real a1 = (rho_r + Real(3.0, prec)) * hc.ln_sqrt5;
    Real a3 = (rho_r + Real(1.0, prec)) * hc.ln_omega;
    Real a2 = (rho_r + Real(2.0 * p_in, prec)) * hc.ln_omega + Real(4.0, prec) * Real(opts.log_y, prec);

    ReductionIteration it;
    it.p_in = p_in;
    it.L = L;
    it.rho = rho.to_double();
    it.m = m.to_double();

    ThreeLogParams params = param_recipe(L, m, rho_r, a1, a2, a3);
    mpz_class pz(std::to_string(static_cast<unsigned long long>(std::ceil(p_in))));
    params.b1 = pz; // q < p, worst-cased at p
    params.b2 = pz;
    params.b3 = 1;

    MauriceVerdict verdict = maurice_check(params, ConditionReading::Proposition);
    it.maurice_passed = verdict.passes();
    it.s1 = mpz_get_d(params.S1.get_mpz_t());
    it.s2 = mpz_get_d(params.S2.get_mpz_t());
    it.r_window = verdict.windows.r_window;
    it.t_window = verdict.windows.t_window;
    if (!it.maurice_passed) return it;

    // Main case: log|Lambda| > -KL log rho - log(L max(R,S,T)/2) vs
    // log|Lambda| < -2 p log y + 1.
    Real kl = mpz_to_real(params.K * params.L, prec);
    Real max_rst = mpz_to_real(std::max({params.R, params.S, params.T}), prec);
    Real main_num = kl * log(rho_r) + log(Real(static_cast<long>(L), prec) * max_rst / Real(2.0, prec)) + Real(1.0, prec);
    it.p_main = (main_num / (Real(2.0, prec) * Real(opts.log_y, prec))).to_double();

    it.p_c1c2 = std::max(it.s1, it.s2);

    // C3 case: two logarithms with the reported windows.
    double log_a2_two = it.t_window * hc.ln_sqrt5.to_double() + it.r_window * hc.h_omega.to_double() + 1.0;
    it.log_a2_two = log_a2_two;
    it.p_c3 = solve_c3_bound(log_a2_two, p_in, opts.log_y);

    it.p_out = std::max({it.p_main, it.p_c1c2, it.p_c3});
    return it;
}

namespace {

// Minimal m in (10, 50) with a passing check, by bisection on the
// (empirically monotone) feasibility, then verified.
double minimal_feasible_m(long L, const Real& rho, double p_in, const ReductionOptions& opts) {
    auto feasible = [&](double m) {
        if (m <= 10.0001 || m >= 49.9999) return false;
        try {
            return reduction_step(L, rho, Real(m), p_in, opts).maurice_passed;
        } catch (const std::domain_error&) {
            return false;
        }
    };
    double hi = 49.9;
    if (!feasible(hi)) return -1.0;
    double lo = 10.001;
    if (feasible(lo)) return lo;
    for (int i = 0; i < 40; ++i) {
        double mid = 0.5 * (lo + hi);
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    return feasible(hi) ? hi : -1.0;
}

} // namespace

ReductionResult fib_p_reduction(const ReductionOptions& opts) {
    ReductionResult res;
    res.first_bound = matveev_first_bound_fib(opts.log_y);

    GoldenParams golden;
    double p_bound = res.first_bound;

    // Pass 1: the published parameter triple.
    ReductionIteration first = reduction_step(golden.L, Real(golden.contour_rho()), Real(golden.m), p_bound, opts);
    res.iterations.push_back(first);
    if (!first.maurice_passed) {
        res.final_bound = p_bound;
        return res;
    }
    p_bound = first.p_out;

    for (int iter = 1; iter < opts.max_iterations; ++iter) {
        ReductionIteration best;
        bool have = false;
        if (opts.optimize_after_first) {
            for (long L : {120L, 160L, 200L, 240L, 260L, 300L, 340L, 400L, 460L, 520L}) {
                for (double rho : {4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 12.0, 14.0, 17.0, 20.0}) {
                    double m = minimal_feasible_m(L, Real(rho), p_bound, opts);
                    if (m < 0) continue;
                    ReductionIteration cand = reduction_step(L, Real(rho), Real(m), p_bound, opts);
                    if (!cand.maurice_passed) continue;
                    if (!have || cand.p_out < best.p_out) {
                        best = cand;
                        have = true;
                    }
                }
            }
        } else {
            double m = minimal_feasible_m(golden.L, Real(golden.contour_rho()), p_bound, opts);
            if (m > 0) {
                best = reduction_step(golden.L, Real(golden.contour_rho()), Real(m), p_bound, opts);
                have = best.maurice_passed;
            }
        }
        if (!have) break;
        res.iterations.push_back(best);
        double prev = p_bound;
        p_bound = best.p_out;
        if (std::fabs(prev - p_bound) < 0.01 * prev) {
            res.converged = true;
            break;
        }
    }
    res.final_bound = p_bound;
    res.closes_contradiction = res.final_bound < opts.known_lower;
    return res;
}

} // namespace fibpow

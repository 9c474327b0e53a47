#ifndef FIBPOW_THREELOG_HPP
#define FIBPOW_THREELOG_HPP

// Linear forms in three logarithms: the combinatorial helper bounds,
// the main condition checker with its degenerate-case windows, the
// parameter recipe, the two-log fallback, and the iterated exponent
// reduction for the Fibonacci equation.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "fibpow/real.hpp"

namespace fibpow {

// Lower bound for the combinatorial quantity Theta(K0, I): the minimal
// total |k|+|m| over I pairwise-distinct lattice points with m <= K0.
// Requires K0 >= 3, L-free, I >= K0(K0+1)/2.
double theta_lower(long k0, long i_count);

// Exact Theta(K0, I) by the greedy diagonal filling; test oracle.
long theta_exact_greedy(long k0, long i_count);

// The factorial bound: a lower bound for log prod_{k<K} k! scaled by
// 4/(K(K-1)). Valid for K >= 2.
Real factorial_bound(const Real& k);

// G_R = (N L R / 2) (1/4 - N/(12 R S T)), the coefficient-sum bound.
double g_r_bound(long k, long l, long r, long s, long t);

struct ThreeLogParams {
    mpz_class K, L, R, R1, R2, S, S1, S2, T, T1, T2;
    Real rho;          // contour parameter, > 1
    Real D;            // degree ratio
    Real a1, a2, a3;   // height bounds, a1 >= a3
    mpz_class b1, b2, b3; // coefficient bounds (b1, b3 may be worst-cased)

    mpz_class n_value() const { return K * K * L; }
};

// Which printed reading of conditions (iii)/(iv) to enforce. The main
// theorem prints (iii) on (R1,S1,T1); the zero-lemma proposition prints
// (iii) on (R2,S2,T2) and (iv) without the extra factor 4. The recipe
// constants match the proposition's reading.
enum class ConditionReading { Theorem, Proposition, Conjunction };

struct DegenerateWindows {
    // Integer windows for the C3 relation, reported in the slack form
    // floor(1 + 1.0001 sqrt((S1+1) a_other / a_self)).
    long r_window = 0;  // |r'|
    long t_window = 0;  // |t'|, |t2|
    // Exact min-form bounds from the zero lemma.
    double r_exact = 0, s_exact = 0, t_exact = 0, t2_exact = 0;
};

struct MauriceVerdict {
    bool structure_ok = false;
    std::string structure_msg;
    bool cond_o = false;
    bool cond_i = false, cond_ii = false, cond_iii = false, cond_iv = false;
    Real lambda_prime_log_bound; // -K L log rho
    Real log_b;                  // the upper bound used for log b
    DegenerateWindows windows;
    bool passes() const { return structure_ok && cond_o && cond_i && cond_ii && cond_iii && cond_iv; }
};

MauriceVerdict maurice_check(const ThreeLogParams& params,
                             ConditionReading reading = ConditionReading::Conjunction);

// The parameter recipe: K = floor(m L a1 a2 a3), R1 = floor(c1 L^{2/3}
// a2 a3) etc with c1 = (32.001 m^2)^{1/3}, c2 = (12 m^2)^{1/3},
// R = R1 + R2 + 1, ...
ThreeLogParams param_recipe(long L, const Real& m, const Real& rho,
                            const Real& a1, const Real& a2, const Real& a3);

struct TwoLogInput {
    Real D;
    Real log_a1, log_a2; // each >= max{h, |log alpha|/D, 1/D}
    Real b1, b2;         // positive coefficients
};

// log|Lambda| >= -25.55 D^4 (max{log b' + 0.19, 18/D, 1})^2 log A1 log A2
Real two_log_lower(const TwoLogInput& in);

// ---- The section-13 reduction chain (Fibonacci) ----

struct ReductionIteration {
    double p_in = 0;       // bound entering the iteration (feeds log b)
    long L = 0;
    double rho = 0, m = 0;
    double s1 = 0, s2 = 0; // recipe S1, S2
    bool maurice_passed = false;
    double p_main = 0;     // bound from the main (non-degenerate) case
    double p_c1c2 = 0;     // max{S1, S2}
    double p_c3 = 0;       // bound from the C3 two-log case
    double p_out = 0;      // max of the cases
    long r_window = 0, t_window = 0;
    double log_a2_two = 0; // two-log log A2 for this iteration's windows
};

struct ReductionResult {
    double first_bound = 0; // unconditional Matveev bound
    std::vector<ReductionIteration> iterations;
    double final_bound = 0;
    bool converged = false;
    bool closes_contradiction = false; // final bound < 2e8
};

struct ReductionOptions {
    double log_y = 1e20;      // lower bound for log y from the sieve stage
    double known_lower = 2e8; // p known to exceed this
    int max_iterations = 8;
    bool optimize_after_first = true; // grid-search (L, rho, m) after pass 1
};

// Golden first-pass parameters reproducing the published run. The
// printed rho is 11; every printed output (S1 = 63054, S2 = 290211,
// the 451e6 bound, the 179/354 windows) reproduces only with contour
// rho = 10 in the printed formulas, so the chain uses rho_printed - 1.
struct GoldenParams {
    long L = 260;
    double rho_printed = 11.0;
    double m = 26.12446;
    double contour_rho() const { return rho_printed - 1.0; }
};

// One full iteration at explicit parameters.
ReductionIteration reduction_step(long L, const Real& rho, const Real& m,
                                  double p_in, const ReductionOptions& opts);

ReductionResult fib_p_reduction(const ReductionOptions& opts = {});

} // namespace fibpow

#endif

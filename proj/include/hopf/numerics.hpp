#ifndef HOPF_NUMERICS_HPP
#define HOPF_NUMERICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hopf/errors.hpp"

namespace hopf {

/// Exact fraction in lowest terms, denominator always positive.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_zero() const { return num == 0; }
    std::string str() const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
};

Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);

/// lcm of two positive rationals: lcm(a/b, c/d) = lcm(a,c)/gcd(b,d).
Rational rational_lcm(const Rational& a, const Rational& b);

/// Shared tolerance knobs. All fields must stay strictly positive.
struct ToleranceConfig {
    double root_tol = 1e-12;
    double derivative_step = 1e-4;
    double residual_tol = 1e-6;
    double rational_tol = 1e-9;
    long long max_denominator = 1000000;

    void validate() const;
};

/// Solves a*x^A + b*x^B = 1 for the unique positive root.
///
/// The left side is strictly increasing on x > 0, so the root is
/// bracketed by doubling away from x = 1, narrowed by bisection and
/// polished with Newton steps. The result satisfies
/// |a*x^A + b*x^B - 1| <= root_tol * (a*x^A + b*x^B).
///
/// Throws DegenerateEquation when a = b = 0.
double solve_power_sum(double a, double b, double A, double B, double root_tol = 1e-12);

/// Best rational approximation by continued-fraction convergents.
///
/// Returns the first convergent p/q with q <= max_denominator and
/// |x - p/q| <= tol, or nothing if no convergent qualifies. A positive
/// answer means "rational within tolerance" only; absence never
/// certifies irrationality.
std::optional<Rational> recognize_rational(double x, double tol, long long max_denominator);

/// One sample of the potential profile: L(theta) with its first two
/// derivatives along the trajectory of L'' = h L' - (L')^2.
struct PotentialSample {
    double theta = 0;
    double L = 0;
    double Lp = 0;
    double Lpp = 0;
};

struct PotentialTrajectory {
    std::vector<PotentialSample> samples; // uniform grid, ascending theta
    bool blew_up = false;                 // L' left (floor, 1/floor)
    double blow_up_theta = 0;             // where integration stopped
};

struct PotentialOptions {
    int grid_points = 2049;      // uniform output samples over the span
    double local_tol = 1e-12;    // per-step error control
    double positivity_floor = 1e-8;
};

/// Integrates the Cauchy problem L'' = h(theta) L' - (L')^2, L'(theta0) = v0,
/// L(theta0) = 0, over [span_lo, span_hi] (theta0 inside). Classical
/// fourth-order explicit stepping with step halving driven by an embedded
/// error estimate; the output grid is uniform and anchored at theta0.
/// Integration stops with the blow-up flag once L' leaves
/// (positivity_floor, 1/positivity_floor); the partial trajectory is kept.
PotentialTrajectory integrate_potential(const std::function<double(double)>& h,
                                        double theta0, double v0,
                                        double span_lo, double span_hi,
                                        const PotentialOptions& opts = {});

/// Defect |((L')^2 + L'') / L' - h| per sample, with L'' re-estimated by
/// fourth-order finite differences of the sampled L' (so the check is
/// independent of the integrator's own right-hand side).
std::vector<double> potential_residuals(const PotentialTrajectory& traj,
                                        const std::function<double(double)>& h);

/// Central difference along a one-parameter flow: flow(0) is the base point.
template <class Flow, class Field>
double flow_derivative(const Field& f, const Flow& flow, double step) {
    return (f(flow(step)) - f(flow(-step))) / (2.0 * step);
}

/// Fourth-order five-point stencil along a flow.
template <class Flow, class Field>
double flow_derivative4(const Field& f, const Flow& flow, double step) {
    const double f1 = f(flow(step));
    const double f2 = f(flow(2.0 * step));
    const double m1 = f(flow(-step));
    const double m2 = f(flow(-2.0 * step));
    return (-f2 + 8.0 * f1 - 8.0 * m1 + m2) / (12.0 * step);
}

/// Halton low-discrepancy value: index i >= 0 in the given prime base.
double halton(std::uint64_t index, unsigned base);

/// Solves the 4x4 system A x = b (row-major A). Returns false when the
/// matrix is numerically singular.
bool solve_linear4(const double A[16], const double b[4], double x[4]);

/// Rough condition estimate ||A|| * ||A^-1|| in the max norm.
double condition_estimate4(const double A[16]);

} // namespace hopf

#endif

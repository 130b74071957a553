#include "hopf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace hopf {

Rational::Rational(long long n, long long d) {
    if (d == 0) throw DomainError("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    num = (g != 0) ? n / g : 0;
    den = (g != 0) ? d / g : 1;
}

std::string Rational::str() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%lld/%lld", num, den);
    return buf;
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw DomainError("Rational: division by zero");
    return Rational(a.num * b.den, a.den * b.num);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

Rational rational_lcm(const Rational& a, const Rational& b) {
    if (a.num <= 0 || b.num <= 0) throw DomainError("rational_lcm: arguments must be positive");
    const long long l = std::lcm(a.num, b.num);
    const long long g = std::gcd(a.den, b.den);
    return Rational(l, g);
}

void ToleranceConfig::validate() const {
    if (!(root_tol > 0 && derivative_step > 0 && residual_tol > 0 && rational_tol > 0 &&
          max_denominator > 0))
        throw DomainError("ToleranceConfig: all fields must be strictly positive");
}

namespace {

double power_sum(double a, double b, double A, double B, double y) {
    // Evaluated in y = log(x); exp overflow saturates to +inf, which the
    // bracketing below tolerates.
    return a * std::exp(A * y) + b * std::exp(B * y);
}

} // namespace

double solve_power_sum(double a, double b, double A, double B, double root_tol) {
    if (!(a >= 0 && b >= 0)) throw DomainError("solve_power_sum: coefficients must be nonnegative");
    if (!(A > 0 && B > 0)) throw DomainError("solve_power_sum: exponents must be positive");
    if (a == 0 && b == 0) throw DegenerateEquation("solve_power_sum: a = b = 0");

    // Bracket in y = log x by doubling away from x = 1.
    double lo = 0.0, hi = 0.0;
    double f1 = power_sum(a, b, A, B, 0.0);
    if (f1 < 1.0) {
        double step = std::log(2.0);
        hi = step;
        while (power_sum(a, b, A, B, hi) < 1.0) {
            lo = hi;
            step *= 2.0;
            hi = lo + step;
        }
    } else {
        double step = std::log(2.0);
        lo = -step;
        while (power_sum(a, b, A, B, lo) > 1.0) {
            hi = lo;
            step *= 2.0;
            lo = hi - step;
        }
    }

    for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (power_sum(a, b, A, B, mid) < 1.0 ? lo : hi) = mid;
    }

    // Newton polish on F(y) = a e^{Ay} + b e^{By} - 1.
    double y = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        const double ea = a * std::exp(A * y);
        const double eb = b * std::exp(B * y);
        const double F = ea + eb - 1.0;
        const double dF = A * ea + B * eb;
        if (dF <= 0 || !std::isfinite(F)) break;
        const double ynew = y - F / dF;
        if (!(ynew > lo && ynew < hi)) break;
        y = ynew;
        if (std::abs(F) <= root_tol * (ea + eb)) break;
    }

    const double x = std::exp(y);
    const double lhs = a * std::pow(x, A) + b * std::pow(x, B);
    if (!(std::abs(lhs - 1.0) <= std::max(root_tol, 64 * std::numeric_limits<double>::epsilon()) *
                                     lhs * 4.0))
        throw Error("solve_power_sum: residual target not reached");
    return x;
}

std::optional<Rational> recognize_rational(double x, double tol, long long max_denominator) {
    if (!std::isfinite(x)) throw DomainError("recognize_rational: non-finite input");
    const bool neg = x < 0;
    long double y = neg ? -static_cast<long double>(x) : static_cast<long double>(x);
    const long double target = y;

    long long h_prev2 = 0, k_prev2 = 1; // convergent h_{-2}/k_{-2}
    long long h_prev = 1, k_prev = 0;   // convergent h_{-1}/k_{-1}
    for (int iter = 0; iter < 64; ++iter) {
        const long double fl = std::floor(y);
        if (fl > 9.0e17L) break;
        const long long term = static_cast<long long>(fl);
        // Overflow guard: stop rather than wrap.
        if (term != 0 && (h_prev > (1LL << 62) / std::max<long long>(1, term) ||
                          k_prev > (1LL << 62) / std::max<long long>(1, term)))
            break;
        const long long h = term * h_prev + h_prev2;
        const long long k = term * k_prev + k_prev2;
        if (k > max_denominator) break;
        h_prev2 = h_prev;
        k_prev2 = k_prev;
        h_prev = h;
        k_prev = k;
        const long double err = std::abs(target - static_cast<long double>(h) / k);
        if (err <= static_cast<long double>(tol)) return Rational(neg ? -h : h, k);
        const long double frac = y - fl;
        if (frac <= 0) break;
        y = 1.0L / frac;
    }
    return std::nullopt;
}

namespace {

struct OdeState {
    double L;
    double P;
};

OdeState rk4_step(const std::function<double(double)>& h, double theta, OdeState s, double dt) {
    auto rhs = [&h](double th, OdeState y) {
        return OdeState{y.P, h(th) * y.P - y.P * y.P};
    };
    const OdeState k1 = rhs(theta, s);
    const OdeState k2 = rhs(theta + dt / 2, {s.L + dt / 2 * k1.L, s.P + dt / 2 * k1.P});
    const OdeState k3 = rhs(theta + dt / 2, {s.L + dt / 2 * k2.L, s.P + dt / 2 * k2.P});
    const OdeState k4 = rhs(theta + dt, {s.L + dt * k3.L, s.P + dt * k3.P});
    return {s.L + dt / 6 * (k1.L + 2 * k2.L + 2 * k3.L + k4.L),
            s.P + dt / 6 * (k1.P + 2 * k2.P + 2 * k3.P + k4.P)};
}

// Advances from theta to theta+dt with step halving; the error estimate
// compares one full step against two half steps and the accepted value is
// the Richardson-extrapolated one. On a positivity violation, reports the
// angle actually reached through `reached` and returns false.
bool advance(const std::function<double(double)>& h, double theta, double dt, double local_tol,
             double floor, OdeState& s, double& reached) {
    double remaining = dt;
    double step = dt;
    double at = theta;
    int guard = 0;
    reached = theta + dt;
    while (std::abs(remaining) > 1e-15 * std::abs(dt)) {
        if (++guard > 100000) throw Error("integrate_potential: step control stalled");
        if (std::abs(step) > std::abs(remaining)) step = remaining;
        const OdeState full = rk4_step(h, at, s, step);
        const OdeState h1 = rk4_step(h, at, s, step / 2);
        const OdeState h2 = rk4_step(h, at + step / 2, h1, step / 2);
        const double err = std::max(std::abs(h2.L - full.L), std::abs(h2.P - full.P)) / 15.0;
        const double scale = std::max({1.0, std::abs(s.L), std::abs(s.P)});
        if (err <= local_tol * scale) {
            s = {h2.L + (h2.L - full.L) / 15.0, h2.P + (h2.P - full.P) / 15.0};
            at += step;
            remaining -= step;
            if (!(s.P > floor && s.P < 1.0 / floor)) {
                reached = at;
                return false;
            }
            if (err < local_tol * scale / 32.0) step *= 2.0;
        } else {
            step *= 0.5;
        }
    }
    return true;
}

} // namespace

PotentialTrajectory integrate_potential(const std::function<double(double)>& h, double theta0,
                                        double v0, double span_lo, double span_hi,
                                        const PotentialOptions& opts) {
    if (!(span_lo <= theta0 && theta0 <= span_hi))
        throw DomainError("integrate_potential: theta0 must lie inside the span");
    if (!(v0 > 0)) throw DomainError("integrate_potential: v0 must be positive");
    if (opts.grid_points < 5) throw DomainError("integrate_potential: too few grid points");

    const double width = span_hi - span_lo;
    const double dt = (width > 0) ? width / (opts.grid_points - 1) : 1.0;
    const long long k_up = (width > 0) ? std::llround(std::ceil((span_hi - theta0) / dt - 1e-9)) : 0;
    const long long k_dn = (width > 0) ? std::llround(std::ceil((theta0 - span_lo) / dt - 1e-9)) : 0;

    PotentialTrajectory out;
    const double floor = opts.positivity_floor;
    auto sample_of = [&h](double th, const OdeState& s) {
        return PotentialSample{th, s.L, s.P, h(th) * s.P - s.P * s.P};
    };

    OdeState init{0.0, v0};
    if (!(v0 > floor && v0 < 1.0 / floor)) {
        out.blew_up = true;
        out.blow_up_theta = theta0;
        out.samples.push_back(sample_of(theta0, init));
        return out;
    }

    std::vector<PotentialSample> down, up;
    up.push_back(sample_of(theta0, init));

    OdeState s = init;
    double reached = theta0;
    for (long long k = 1; k <= k_up; ++k) {
        const double from = theta0 + (k - 1) * dt;
        if (!advance(h, from, dt, opts.local_tol, floor, s, reached)) {
            out.blew_up = true;
            out.blow_up_theta = reached;
            up.push_back(sample_of(reached, s));
            break;
        }
        up.push_back(sample_of(theta0 + k * dt, s));
    }

    s = init;
    for (long long k = 1; k <= k_dn && !out.blew_up; ++k) {
        const double from = theta0 - (k - 1) * dt;
        if (!advance(h, from, -dt, opts.local_tol, floor, s, reached)) {
            out.blew_up = true;
            out.blow_up_theta = reached;
            down.push_back(sample_of(reached, s));
            break;
        }
        down.push_back(sample_of(theta0 - k * dt, s));
    }

    out.samples.assign(down.rbegin(), down.rend());
    out.samples.insert(out.samples.end(), up.begin(), up.end());
    return out;
}

std::vector<double> potential_residuals(const PotentialTrajectory& traj,
                                        const std::function<double(double)>& h) {
    const auto& s = traj.samples;
    const std::size_t n = s.size();
    std::vector<double> res(n, 0.0);
    if (n < 5) return res;
    const double d = s[1].theta - s[0].theta;
    auto lp = [&s](std::size_t i) { return s[i].Lp; };
    for (std::size_t i = 0; i < n; ++i) {
        double lpp;
        if (i >= 2 && i + 2 < n) {
            lpp = (-lp(i + 2) + 8 * lp(i + 1) - 8 * lp(i - 1) + lp(i - 2)) / (12 * d);
        } else if (i < 2) {
            lpp = (-25 * lp(i) + 48 * lp(i + 1) - 36 * lp(i + 2) + 16 * lp(i + 3) - 3 * lp(i + 4)) /
                  (12 * d);
        } else {
            lpp = (25 * lp(i) - 48 * lp(i - 1) + 36 * lp(i - 2) - 16 * lp(i - 3) + 3 * lp(i - 4)) /
                  (12 * d);
        }
        res[i] = std::abs((s[i].Lp * s[i].Lp + lpp) / s[i].Lp - h(s[i].theta));
    }
    return res;
}

double halton(std::uint64_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    std::uint64_t i = index + 1; // skip the zero point
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

bool solve_linear4(const double A[16], const double b[4], double x[4]) {
    double m[4][5];
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) m[r][c] = A[4 * r + c];
        m[r][4] = b[r];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-300) return false;
        if (piv != col)
            for (int c = 0; c < 5; ++c) std::swap(m[piv][c], m[col][c]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
        }
    }
    for (int r = 0; r < 4; ++r) x[r] = m[r][4] / m[r][r];
    return true;
}

double condition_estimate4(const double A[16]) {
    double inv[16];
    for (int col = 0; col < 4; ++col) {
        double e[4] = {0, 0, 0, 0};
        e[col] = 1.0;
        double x[4];
        if (!solve_linear4(A, e, x)) return std::numeric_limits<double>::infinity();
        for (int r = 0; r < 4; ++r) inv[4 * r + col] = x[r];
    }
    auto max_row_sum = [](const double* M) {
        double best = 0;
        for (int r = 0; r < 4; ++r) {
            double s = 0;
            for (int c = 0; c < 4; ++c) s += std::abs(M[4 * r + c]);
            best = std::max(best, s);
        }
        return best;
    };
    return max_row_sum(A) * max_row_sum(inv);
}

} // namespace hopf

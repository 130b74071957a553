#include "hopf/fibration.hpp"

#include <cmath>
#include <numeric>

namespace hopf {

namespace {

complexd int_power(complexd base, long long e) {
    complexd acc{1, 0};
    for (long long i = 0; i < e; ++i) acc *= base;
    return acc;
}

} // namespace

ProjectivePoint ProjectivePoint::normalized(complexd a, complexd b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (!(ma > 0) && !(mb > 0))
        throw DomainError("ProjectivePoint: (0, 0) is not projective");
    ProjectivePoint p;
    if (ma >= mb) {
        p.w0 = {1, 0};
        p.w1 = b / a;
    } else {
        p.w0 = a / b;
        p.w1 = {1, 0};
    }
    return p;
}

double fs_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
    // arccos(|<a,b>|/(||a|| ||b||)), evaluated as atan2 of the wedge and
    // inner products so small distances are not lost to rounding.
    const complexd inner = a.w0 * std::conj(b.w0) + a.w1 * std::conj(b.w1);
    const complexd wedge = a.w0 * b.w1 - a.w1 * b.w0;
    return std::atan2(std::abs(wedge), std::abs(inner));
}

MonodromyData monodromy(const HopfParams& params, const ToleranceConfig& tol) {
    const EllipticData ed = elliptic_data(params, tol);
    if (!ed.elliptic) throw NotElliptic("monodromy: alpha^m = beta^n fails");
    MonodromyData md{ed.m, ed.n, ed.c};
    const long long g = std::gcd(std::gcd(md.m, md.n), std::llabs(md.monodromy_c));
    if (g != 1) throw Error("monodromy: gcd(m, n, c) != 1");
    return md;
}

ProjectivePoint fibration_map(const HopfParams& params, const FramePoint& p,
                              const ToleranceConfig& tol) {
    const MonodromyData md = monodromy(params, tol);
    const complexd a =
        std::polar(1.0, p.theta * static_cast<double>(md.monodromy_c)) * int_power(p.xi1, md.m);
    const complexd b = int_power(p.xi2, md.n);
    return ProjectivePoint::normalized(a, b);
}

OrbifoldData regularity(const HopfParams& params, const ToleranceConfig& tol) {
    const EllipticData ed = elliptic_data(params, tol);
    OrbifoldData out;
    out.certified = ed.certified || params.exact_mode();
    out.quasi_regular = ed.elliptic;
    out.regular = ed.elliptic && ed.m == 1 && ed.n == 1 && params.alpha == params.beta;
    if (ed.elliptic) {
        out.cone_orders = std::make_pair(ed.m, ed.n);
        out.multiplicity_generic = 1;
        out.multiplicity_xi2_axis = ed.m; // leaf through (theta, 0, xi2)
        out.multiplicity_xi1_axis = ed.n; // leaf through (theta, xi1, 0)
    }
    return out;
}

std::array<double, 3> stereographic_projection(const std::array<double, 4>& x) {
    const double denom = 1.0 - x[3];
    if (std::abs(denom) < 1e-15)
        throw PoleExcluded("stereographic_projection: (0,0,0,1) excluded");
    return {x[0] / denom, x[1] / denom, x[2] / denom};
}

std::array<double, 3> stereographic_projection(const complexd& xi1, const complexd& xi2) {
    return stereographic_projection({xi1.real(), xi1.imag(), xi2.real(), xi2.imag()});
}

} // namespace hopf

#include "hopf/foliations.hpp"

#include <cmath>
#include <numeric>

namespace hopf {

namespace {

constexpr double pi = two_pi / 2;
constexpr double axis_threshold = 1e-12;

struct ResolvedQ {
    bool rational = false;
    Rational value{};
    bool declared = false;
};

ResolvedQ resolve(const ExactTag& tag, double floating, const ToleranceConfig& tol) {
    if (tag.is_rational()) return {true, tag.value, true};
    if (tag.is_irrational()) return {false, {}, true};
    if (auto r = recognize_rational(floating, tol.rational_tol, tol.max_denominator))
        return {true, *r, false};
    return {false, {}, false};
}

ResolvedQ resolve_arg_alpha(const HopfParams& params, const ToleranceConfig& tol) {
    return resolve(params.arg_alpha_pi, params.arg_alpha() / pi, tol);
}

ResolvedQ resolve_arg_beta(const HopfParams& params, const ToleranceConfig& tol) {
    return resolve(params.arg_beta_pi, params.arg_beta() / pi, tol);
}

ResolvedQ resolve_log_ratio(const HopfParams& params, const ToleranceConfig& tol) {
    return resolve(params.log_ratio, params.log_mod_alpha() / params.log_mod_beta(), tol);
}

std::string tolerance_qualifier(const ToleranceConfig& tol) {
    return "within tolerance (max_denominator " + std::to_string(tol.max_denominator) + ")";
}

// Smallest t > 0 with -4 pi t in 2 pi Z and 2 t arg in 2 pi Z for every
// rational arg constraint present.
double closed_orbit_period(const std::optional<Rational>& arg_a_pi,
                           const std::optional<Rational>& arg_b_pi) {
    Rational period(1, 2);
    for (const auto& r : {arg_a_pi, arg_b_pi}) {
        if (r && r->num != 0)
            period = rational_lcm(period, Rational(r->den, std::llabs(r->num)));
    }
    return period.value();
}

// b*k - c*l = 1 with the smallest c >= 0.
void bezout_min(long long l, long long k, long long& b, long long& c) {
    long long old_r = k, r = l;
    long long old_s = 1, s = 0;
    while (r != 0) {
        const long long quot = old_r / r;
        long long tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    // old_s * k + y * l = gcd = 1
    long long b0 = old_s;
    long long c0 = (b0 * k - 1) / l;
    // shift so c lands in [0, k)
    long long t = c0 >= 0 ? -(c0 / k) : ((-c0 + k - 1) / k);
    b = b0 + t * l;
    c = c0 + t * k;
}

} // namespace

std::string foliation_name(FoliationKind kind) {
    switch (kind) {
        case FoliationKind::KernelLee: return "kernel_lee";
        case FoliationKind::LeeFlow: return "lee_flow";
        case FoliationKind::AntiLeeFlow: return "anti_lee_flow";
        case FoliationKind::LeeAntiLeePlane: return "lee_anti_lee_plane";
    }
    return "unknown";
}

std::string LeafClass::kind_name() const {
    switch (kind) {
        case Kind::Sphere3Slice: return "sphere3_slice";
        case Kind::CircleCompact: return "circle_compact";
        case Kind::DenseInAxisTorus: return "dense_in_axis_torus";
        case Kind::ToralKnot: return "toral_knot";
        case Kind::DenseIn2Torus: return "dense_in_2_torus";
        case Kind::CompactTorus: return "compact_torus";
        case Kind::DenseIn3Torus: return "dense_in_3_torus";
    }
    return "unknown";
}

FramePoint flow_lee(const HopfParams& params, const FramePoint& p0, double t) {
    return FramePoint(p0.theta - 2.0 * two_pi * t,
                      p0.xi1 * std::polar(1.0, 2.0 * t * params.arg_alpha()),
                      p0.xi2 * std::polar(1.0, 2.0 * t * params.arg_beta()));
}

FramePoint flow_anti_lee(const HopfParams& params, const FramePoint& p0, double s) {
    return FramePoint(p0.theta, p0.xi1 * std::polar(1.0, -2.0 * s * params.log_mod_alpha()),
                      p0.xi2 * std::polar(1.0, -2.0 * s * params.log_mod_beta()));
}

FramePoint leaf_surface(const HopfParams& params, const FramePoint& p0, double t, double s) {
    return FramePoint(
        p0.theta - 2.0 * two_pi * t,
        p0.xi1 * std::polar(1.0, 2.0 * (params.arg_alpha() * t - params.log_mod_alpha() * s)),
        p0.xi2 * std::polar(1.0, 2.0 * (params.arg_beta() * t - params.log_mod_beta() * s)));
}

EllipticData elliptic_data(const HopfParams& params, const ToleranceConfig& tol) {
    EllipticData out;

    if (params.alpha == params.beta) {
        out.elliptic = true;
        out.certified = true;
        out.l = out.k = 1;
        out.p = 0;
        out.q = 1;
        out.m = out.n = 1;
        out.c = 0;
        return out;
    }

    const ResolvedQ ratio = resolve_log_ratio(params, tol);
    if (!ratio.rational) {
        out.certified = ratio.declared;
        return out;
    }
    const long long l = ratio.value.num;
    const long long k = ratio.value.den;

    const ResolvedQ aa = resolve_arg_alpha(params, tol);
    const ResolvedQ ab = resolve_arg_beta(params, tol);

    std::optional<Rational> combo; // (k arg(alpha) - l arg(beta)) / pi
    bool combo_certified = false;
    if (aa.rational && ab.rational) {
        combo = Rational(k, 1) * aa.value - Rational(l, 1) * ab.value;
        combo_certified = ratio.declared && aa.declared && ab.declared;
    } else if (aa.declared && ab.declared) {
        // Declared irrationals are rationally independent: the combination
        // cannot be rational.
        out.certified = ratio.declared;
        return out;
    } else {
        // Floating fallback: the individual arguments may be irrational
        // while the combination is still rational.
        const double value =
            (k * params.arg_alpha() - l * params.arg_beta()) / pi;
        combo = recognize_rational(value, tol.rational_tol, tol.max_denominator);
        combo_certified = false;
    }
    if (!combo) return out;

    const long long p = combo->num, q = combo->den;
    const long long j = (p == 0) ? 1 : (p % 2 == 0 ? q : 2 * q);
    out.elliptic = true;
    out.certified = combo_certified;
    out.l = l;
    out.k = k;
    out.p = p;
    out.q = q;
    out.m = k * j;
    out.n = l * j;
    out.c = (p % 2 == 0) ? p / 2 : p;

    // Floating consistency of the certificate.
    const double mod_gap = out.m * params.log_mod_alpha() - out.n * params.log_mod_beta();
    const double ang_gap =
        out.m * params.arg_alpha() - out.n * params.arg_beta() - two_pi * out.c;
    const double ang_wrapped = std::remainder(ang_gap, two_pi);
    const double scale = std::max(1.0, std::abs(out.m * params.log_mod_alpha()));
    if (std::abs(mod_gap) > 1e-9 * scale || std::abs(ang_wrapped) > 1e-9 * scale) {
        out = EllipticData{};
        return out;
    }
    return out;
}

namespace {

LeafClassification classify_leaf_impl(const HopfParams& params, const FramePoint& p0,
                                      FoliationKind kind, const ToleranceConfig& tol) {
    LeafClassification out;
    const double m1 = std::abs(p0.xi1), m2 = std::abs(p0.xi2);
    out.on_axis = std::min(m1, m2) < axis_threshold;
    const bool xi2_zero = m2 < axis_threshold;

    switch (kind) {
        case FoliationKind::KernelLee: {
            out.leaf.kind = LeafClass::Kind::Sphere3Slice;
            out.certified = true;
            return out;
        }

        case FoliationKind::LeeFlow: {
            if (out.on_axis) {
                const ResolvedQ arg = xi2_zero ? resolve_arg_alpha(params, tol)
                                               : resolve_arg_beta(params, tol);
                out.certified = arg.declared;
                if (arg.rational) {
                    out.leaf.kind = LeafClass::Kind::CircleCompact;
                    out.leaf.period = closed_orbit_period(arg.value, std::nullopt);
                } else {
                    out.leaf.kind = LeafClass::Kind::DenseInAxisTorus;
                }
                return out;
            }
            const ResolvedQ aa = resolve_arg_alpha(params, tol);
            const ResolvedQ ab = resolve_arg_beta(params, tol);
            out.certified = aa.declared && ab.declared;
            if (aa.rational && ab.rational) {
                // theta winds at a rational multiple of 2 pi, so the leaf
                // closes exactly when both arguments are rational in pi.
                out.leaf.period = closed_orbit_period(aa.value, ab.value);
                if (aa.value.is_zero() && ab.value.is_zero()) {
                    out.leaf.kind = LeafClass::Kind::CircleCompact;
                } else if (ab.value.is_zero()) {
                    out.leaf.kind = LeafClass::Kind::CircleCompact;
                } else {
                    out.leaf.kind = LeafClass::Kind::ToralKnot;
                    out.leaf.type = aa.value / ab.value;
                }
                return out;
            }
            const int rational_count = int(aa.rational) + int(ab.rational);
            if (rational_count == 1) {
                out.leaf.kind = LeafClass::Kind::DenseIn2Torus;
                return out;
            }
            // Neither argument is rational in pi. A rational mutual ratio
            // still confines the closure to a 2-torus; in exact mode two
            // declared irrationals are treated as independent.
            if (!aa.declared && !ab.declared && params.arg_beta() != 0.0) {
                if (recognize_rational(params.arg_alpha() / params.arg_beta(), tol.rational_tol,
                                       tol.max_denominator)) {
                    out.leaf.kind = LeafClass::Kind::DenseIn2Torus;
                    return out;
                }
            }
            out.leaf.kind = LeafClass::Kind::DenseIn3Torus;
            return out;
        }

        case FoliationKind::AntiLeeFlow: {
            if (out.on_axis) {
                out.certified = true;
                out.leaf.kind = LeafClass::Kind::CircleCompact;
                out.leaf.period =
                    pi / (xi2_zero ? params.log_mod_alpha() : params.log_mod_beta());
                return out;
            }
            const ResolvedQ ratio = resolve_log_ratio(params, tol);
            out.certified = ratio.declared;
            if (ratio.rational) {
                out.leaf.kind = LeafClass::Kind::ToralKnot;
                out.leaf.type = ratio.value;
                out.leaf.period = ratio.value.num * pi / params.log_mod_alpha();
            } else {
                out.leaf.kind = LeafClass::Kind::DenseIn2Torus;
            }
            return out;
        }

        case FoliationKind::LeeAntiLeePlane: {
            if (out.on_axis) {
                out.certified = true;
                const double lm = xi2_zero ? params.log_mod_alpha() : params.log_mod_beta();
                const double ar = xi2_zero ? params.arg_alpha() : params.arg_beta();
                Lattice lat;
                lat.v = {0.5, ar / (2.0 * lm)};
                lat.w = {0.0, pi / lm};
                out.leaf.kind = LeafClass::Kind::CompactTorus;
                out.leaf.lattice = lat;
                return out;
            }
            const EllipticData ed = elliptic_data(params, tol);
            out.certified = ed.certified;
            if (ed.elliptic) {
                out.leaf.kind = LeafClass::Kind::CompactTorus;
                out.leaf.lattice = leaf_lattice(params, tol);
            } else {
                out.leaf.kind = LeafClass::Kind::DenseIn3Torus;
            }
            return out;
        }
    }
    throw DomainError("classify_leaf: unknown foliation kind");
}

} // namespace

LeafClassification classify_leaf(const HopfParams& params, const FramePoint& p0,
                                 FoliationKind kind, const ToleranceConfig& tol) {
    tol.validate();
    LeafClassification out = classify_leaf_impl(params, p0, kind, tol);
    out.qualifier = out.certified ? (params.exact_mode() ? "exact mode" : "certified")
                                  : tolerance_qualifier(tol);
    return out;
}

std::optional<Rational> knot_type(const HopfParams& params, FoliationKind kind,
                                  const ToleranceConfig& tol) {
    if (kind == FoliationKind::AntiLeeFlow) {
        const ResolvedQ ratio = resolve_log_ratio(params, tol);
        if (ratio.rational) return ratio.value;
        return std::nullopt;
    }
    if (kind != FoliationKind::LeeFlow)
        throw DomainError("knot_type: kind must be LeeFlow or AntiLeeFlow");

    const ResolvedQ aa = resolve_arg_alpha(params, tol);
    const ResolvedQ ab = resolve_arg_beta(params, tol);
    if (aa.rational && ab.rational) {
        if (ab.value.is_zero()) return std::nullopt; // degenerate winding
        return aa.value / ab.value;
    }
    if (!aa.declared && !ab.declared && params.arg_beta() != 0.0)
        return recognize_rational(params.arg_alpha() / params.arg_beta(), tol.rational_tol,
                                  tol.max_denominator);
    return std::nullopt;
}

Lattice leaf_lattice(const HopfParams& params, const ToleranceConfig& tol) {
    const EllipticData ed = elliptic_data(params, tol);
    if (!ed.elliptic) throw NotElliptic("leaf_lattice: alpha^m = beta^n fails");

    LatticeCertificate cert;
    cert.l = ed.l;
    cert.k = ed.k;
    cert.p = ed.p;
    cert.q = ed.q;
    const bool p_odd = (ed.p % 2 != 0);
    cert.p_prime = p_odd ? Rational(ed.p, 1) : Rational(ed.p, 2);
    cert.q_prime = p_odd ? Rational(ed.q, 1) : Rational(ed.q, 2);
    bezout_min(ed.l, ed.k, cert.b, cert.lattice_c);

    Lattice lat;
    const double lb = params.log_mod_beta();
    lat.v = {cert.q_prime.value(),
             (cert.q_prime.value() * params.arg_beta() - cert.p_prime.value() * cert.lattice_c * pi) /
                 lb};
    lat.w = {0.0, cert.k * pi / lb};
    lat.certificate = cert;

    for (std::uint64_t i = 0; i < 10; ++i) {
        const double u = halton(i, 3);
        const FramePoint p0(two_pi * halton(i, 2),
                            std::sqrt(0.2 + 0.6 * u) * std::polar(1.0, two_pi * halton(i, 5)),
                            std::sqrt(0.8 - 0.6 * u) * std::polar(1.0, two_pi * halton(i, 7)));
        if (frame_distance(leaf_surface(params, p0, lat.v[0], lat.v[1]), p0) > 1e-9 ||
            frame_distance(leaf_surface(params, p0, lat.w[0], lat.w[1]), p0) > 1e-9)
            throw NotElliptic("leaf_lattice: period certificate failed numerically");
    }
    return lat;
}

std::optional<EllipticWitness> elliptic_witness(const HopfParams& params,
                                                const ToleranceConfig& tol) {
    const EllipticData ed = elliptic_data(params, tol);
    if (!ed.elliptic) return std::nullopt;
    return EllipticWitness{ed.m, ed.n};
}

std::optional<double> period_oracle(const HopfParams& params, const FramePoint& p0,
                                    FoliationKind kind, const PeriodOracleOptions& opts) {
    if (kind != FoliationKind::LeeFlow && kind != FoliationKind::AntiLeeFlow)
        throw DomainError("period_oracle: kind must be LeeFlow or AntiLeeFlow");
    auto flow = [&](double t) {
        return kind == FoliationKind::LeeFlow ? flow_lee(params, p0, t)
                                              : flow_anti_lee(params, p0, t);
    };
    auto dist = [&](double t) { return frame_distance(flow(t), p0); };

    const double speed =
        kind == FoliationKind::LeeFlow
            ? 2.0 * two_pi + 2.0 * (std::abs(params.arg_alpha()) + std::abs(params.arg_beta()))
            : 2.0 * (params.log_mod_alpha() + params.log_mod_beta());
    const double gate = 1.5 * speed * opts.grid_step;

    const long long n = static_cast<long long>(opts.t_max / opts.grid_step);
    double prev2 = 0, prev = dist(opts.grid_step);
    bool armed = false; // set once the flow has left the start neighborhood
    for (long long i = 2; i <= n; ++i) {
        const double t = i * opts.grid_step;
        const double d = dist(t);
        if (!armed) {
            if (prev > 2.0 * gate) armed = true;
        } else if (prev < gate && prev <= prev2 && prev <= d) {
            // refine the local minimum around t - grid_step
            double a = t - 2.0 * opts.grid_step, b = t;
            for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
                const double mid1 = a + (b - a) / 3.0, mid2 = b - (b - a) / 3.0;
                if (dist(mid1) < dist(mid2)) b = mid2;
                else a = mid1;
            }
            const double t_star = 0.5 * (a + b);
            if (dist(t_star) < opts.tol) return t_star;
        }
        prev2 = prev;
        prev = d;
    }
    return std::nullopt;
}

} // namespace hopf

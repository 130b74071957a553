#include "hopf/frame.hpp"

#include <cmath>

namespace hopf {

namespace {

const complexd imag_unit{0.0, 1.0};

double reduce_angle(double theta) {
    double r = std::fmod(theta, two_pi);
    if (r < 0) r += two_pi;
    if (r == two_pi) r = 0;
    return r;
}

void check_moduli(const complexd& alpha, const complexd& beta) {
    const double ma = std::abs(alpha), mb = std::abs(beta);
    if (!(ma >= mb && mb > 1.0))
        throw DomainError("HopfParams: need ||alpha|| >= ||beta|| > 1");
}

Rational normalize_arg_pi(Rational r) {
    // Into (-1, 1] in units of pi.
    long long n = r.num, d = r.den;
    n %= 2 * d;
    if (n > d) n -= 2 * d;
    if (n <= -d) n += 2 * d;
    return Rational(n, d);
}

ExactTag normalize_arg_tag(ExactTag t) {
    if (t.is_rational()) t.value = normalize_arg_pi(t.value);
    return t;
}

double normalize_arg_payload(double units_of_pi) {
    double r = std::fmod(units_of_pi, 2.0);
    if (r > 1.0) r -= 2.0;
    if (r <= -1.0) r += 2.0;
    return r;
}

} // namespace

HopfParams HopfParams::from_complex(complexd alpha, complexd beta) {
    check_moduli(alpha, beta);
    return HopfParams{alpha, beta, ExactTag::absent(), ExactTag::absent(), ExactTag::absent()};
}

HopfParams HopfParams::from_exact(ExactTag log_ratio, double log_ratio_value, double log_mod_beta,
                                  ExactTag arg_alpha_pi, double arg_alpha_pi_value,
                                  ExactTag arg_beta_pi, double arg_beta_pi_value) {
    if (!log_ratio.declared() || !arg_alpha_pi.declared() || !arg_beta_pi.declared())
        throw DomainError("HopfParams::from_exact: all three declarations required");
    if (!(log_mod_beta > 0)) throw DomainError("HopfParams::from_exact: log||beta|| must be > 0");

    const double ratio = log_ratio.is_rational() ? log_ratio.value.value() : log_ratio_value;
    if (!(ratio >= 1.0)) throw DomainError("HopfParams::from_exact: log ratio must be >= 1");

    arg_alpha_pi = normalize_arg_tag(arg_alpha_pi);
    arg_beta_pi = normalize_arg_tag(arg_beta_pi);
    const double pi = two_pi / 2;
    const double aa = pi * (arg_alpha_pi.is_rational() ? arg_alpha_pi.value.value()
                                                       : normalize_arg_payload(arg_alpha_pi_value));
    const double ab = pi * (arg_beta_pi.is_rational() ? arg_beta_pi.value.value()
                                                      : normalize_arg_payload(arg_beta_pi_value));

    const double la = ratio * log_mod_beta;
    const complexd alpha = std::exp(la) * complexd{std::cos(aa), std::sin(aa)};
    const complexd beta = std::exp(log_mod_beta) * complexd{std::cos(ab), std::sin(ab)};
    check_moduli(alpha, beta);
    return HopfParams{alpha, beta, log_ratio, arg_alpha_pi, arg_beta_pi};
}

HopfParams HopfParams::from_complex_with_exact(complexd alpha, complexd beta, ExactTag log_ratio,
                                               ExactTag arg_alpha_pi, ExactTag arg_beta_pi,
                                               double rational_tol) {
    check_moduli(alpha, beta);
    const double pi = two_pi / 2;
    const double ratio = std::log(std::abs(alpha)) / std::log(std::abs(beta));
    if (log_ratio.is_rational() && std::abs(ratio - log_ratio.value.value()) > rational_tol)
        throw InconsistentExactData("log-modulus ratio declaration disagrees with (alpha, beta)");
    arg_alpha_pi = normalize_arg_tag(arg_alpha_pi);
    arg_beta_pi = normalize_arg_tag(arg_beta_pi);
    if (arg_alpha_pi.is_rational() &&
        std::abs(std::arg(alpha) / pi - arg_alpha_pi.value.value()) > rational_tol)
        throw InconsistentExactData("arg(alpha) declaration disagrees with alpha");
    if (arg_beta_pi.is_rational() &&
        std::abs(std::arg(beta) / pi - arg_beta_pi.value.value()) > rational_tol)
        throw InconsistentExactData("arg(beta) declaration disagrees with beta");
    return HopfParams{alpha, beta, log_ratio, arg_alpha_pi, arg_beta_pi};
}

FramePoint::FramePoint(double theta_, complexd xi1_, complexd xi2_) {
    theta = reduce_angle(theta_);
    const double n = std::sqrt(std::norm(xi1_) + std::norm(xi2_));
    if (!(n > 0) || !std::isfinite(n))
        throw DomainError("FramePoint: (xi1, xi2) must be a nonzero finite pair");
    xi1 = xi1_ / n;
    xi2 = xi2_ / n;
}

std::array<AmbientVector, 4> frame_fields(const FramePoint& p) {
    std::array<AmbientVector, 4> e;
    e[0] = {1.0, {0, 0}, {0, 0}};
    e[1] = {0.0, imag_unit * p.xi1, imag_unit * p.xi2};
    e[2] = {0.0, -std::conj(p.xi2), std::conj(p.xi1)};
    e[3] = {0.0, -imag_unit * std::conj(p.xi2), imag_unit * std::conj(p.xi1)};
    return e;
}

FramePoint frame_flow(const FramePoint& p, int index, double t) {
    switch (index) {
        case 1:
            return FramePoint(p.theta + t, p.xi1, p.xi2);
        case 2: {
            const complexd ph{std::cos(t), std::sin(t)};
            return FramePoint(p.theta, ph * p.xi1, ph * p.xi2);
        }
        case 3: {
            // Left multiplication by exp(jt) = cos t + j sin t.
            const double ct = std::cos(t), st = std::sin(t);
            return FramePoint(p.theta, ct * p.xi1 - st * std::conj(p.xi2),
                              ct * p.xi2 + st * std::conj(p.xi1));
        }
        case 4: {
            // Left multiplication by exp(kt).
            const double ct = std::cos(t), st = std::sin(t);
            return FramePoint(p.theta, ct * p.xi1 - imag_unit * st * std::conj(p.xi2),
                              ct * p.xi2 + imag_unit * st * std::conj(p.xi1));
        }
        default:
            throw DomainError("frame_flow: index must be 1..4");
    }
}

FrameVector frame_bracket(int i, int j) {
    FrameVector out;
    auto set = [&out](int k, double v) { out.c[static_cast<std::size_t>(k - 1)] = v; };
    if (i == j) return out;
    if (i > j) {
        FrameVector v = frame_bracket(j, i);
        for (auto& x : v.c) x = -x;
        return v;
    }
    if (i == 2 && j == 3) set(4, -2.0);
    else if (i == 2 && j == 4) set(3, 2.0);
    else if (i == 3 && j == 4) set(2, -2.0);
    return out;
}

UniversalPoint to_universal(const HopfParams& params, double theta, complexd xi1, complexd xi2) {
    const complexd fa = std::exp(theta * params.log_alpha() / two_pi);
    const complexd fb = std::exp(theta * params.log_beta() / two_pi);
    return {fa * xi1, fb * xi2};
}

UniversalPoint to_universal(const HopfParams& params, const FramePoint& p) {
    return to_universal(params, p.theta, p.xi1, p.xi2);
}

FromUniversalResult from_universal(const HopfParams& params, const UniversalPoint& z,
                                   double root_tol) {
    const double a = std::norm(z.z1);
    const double b = std::norm(z.z2);
    if (!(a + b > 0)) throw DomainError("from_universal: z must be nonzero");
    const double x = solve_power_sum(a, b, params.log_mod_alpha(), params.log_mod_beta(), root_tol);
    const double pi = two_pi / 2;
    const double theta = -pi * std::log(x);
    const complexd xi1 = z.z1 * std::exp(-theta * params.log_alpha() / two_pi);
    const complexd xi2 = z.z2 * std::exp(-theta * params.log_beta() / two_pi);
    return {FramePoint(theta, xi1, xi2), theta};
}

complexd log_average(const HopfParams& params, const FramePoint& p) {
    return std::norm(p.xi1) * params.log_alpha() + std::norm(p.xi2) * params.log_beta();
}

std::array<std::array<double, 4>, 4> complex_structure_matrix(const HopfParams& params,
                                                              const FramePoint& p) {
    const double pi = two_pi / 2;
    const complexd G = log_average(params, p);
    const double re = G.real(), im = G.imag();
    const complexd s = p.xi1 * p.xi2;
    const complexd L = params.log_alpha() - params.log_beta();
    const complexd w1 = imag_unit * s * std::conj(G) * L; // J e1 tail
    const complexd w2 = s * L;                            // J e2 tail

    // m[row][col]: column = J e_{col+1} expanded on e1..e4.
    std::array<std::array<double, 4>, 4> m{};
    m[0][0] = -im / re;
    m[1][0] = std::norm(G) / (two_pi * re);
    m[2][0] = -w1.real() / (two_pi * re);
    m[3][0] = -w1.imag() / (two_pi * re);

    m[0][1] = -(2 * pi) / re;
    m[1][1] = im / re;
    m[2][1] = -w2.real() / re;
    m[3][1] = -w2.imag() / re;

    m[3][2] = 1.0;  // J e3 = e4
    m[2][3] = -1.0; // J e4 = -e3
    return m;
}

FrameVector apply_complex_structure(const HopfParams& params, const FramePoint& p,
                                    const FrameVector& v) {
    const auto m = complex_structure_matrix(params, p);
    FrameVector out;
    for (int r = 0; r < 4; ++r) {
        double acc = 0;
        for (int c = 0; c < 4; ++c) acc += m[r][c] * v.c[c];
        out.c[r] = acc;
    }
    return out;
}

ComplexCoords to_complex_coords(const HopfParams& params, const FramePoint& p,
                                const FrameVector& v) {
    const auto m = complex_structure_matrix(params, p);
    // Columns: e2, J e2, e3, J e3 in the frame basis.
    double A[16] = {
        0, m[0][1], 0, 0,
        1, m[1][1], 0, 0,
        0, m[2][1], 1, 0,
        0, m[3][1], 0, 1,
    };
    double x[4];
    if (!solve_linear4(A, v.c.data(), x))
        throw SingularBasis("to_complex_coords: singular complex basis");
    return {complexd{x[0], x[1]}, complexd{x[2], x[3]}};
}

FrameVector from_complex_coords(const HopfParams& params, const FramePoint& p,
                                const ComplexCoords& cc) {
    const auto m = complex_structure_matrix(params, p);
    FrameVector out;
    out.c[0] = cc.u.imag() * m[0][1];
    out.c[1] = cc.u.real() + cc.u.imag() * m[1][1];
    out.c[2] = cc.v.real() + cc.u.imag() * m[2][1];
    out.c[3] = cc.v.imag() + cc.u.imag() * m[3][1];
    return out;
}

UniversalVector push_forward(const HopfParams& params, const FramePoint& p, const FrameVector& v) {
    const AmbientVector a = to_ambient(p, v);
    const complexd fa = std::exp(p.theta * params.log_alpha() / two_pi);
    const complexd fb = std::exp(p.theta * params.log_beta() / two_pi);
    return {fa * (params.log_alpha() / two_pi * p.xi1 * a.dtheta + a.dxi1),
            fb * (params.log_beta() / two_pi * p.xi2 * a.dtheta + a.dxi2)};
}

double directional_derivative(const std::function<double(const FramePoint&)>& f, int index,
                              const FramePoint& p, double step) {
    return flow_derivative(f, [&](double t) { return frame_flow(p, index, t); }, step);
}

double directional_derivative4(const std::function<double(const FramePoint&)>& f, int index,
                               const FramePoint& p, double step) {
    return flow_derivative4(f, [&](double t) { return frame_flow(p, index, t); }, step);
}

AmbientVector to_ambient(const FramePoint& p, const FrameVector& v) {
    const auto e = frame_fields(p);
    AmbientVector out;
    for (int i = 0; i < 4; ++i) {
        out.dtheta += v.c[i] * e[i].dtheta;
        out.dxi1 += v.c[i] * e[i].dxi1;
        out.dxi2 += v.c[i] * e[i].dxi2;
    }
    return out;
}

double frame_distance(const FramePoint& a, const FramePoint& b) {
    double d = std::abs(a.theta - b.theta);
    d = std::min(d, two_pi - d);
    const double chord = std::sqrt(std::norm(a.xi1 - b.xi1) + std::norm(a.xi2 - b.xi2));
    return std::max(d, chord);
}

} // namespace hopf

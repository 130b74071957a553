#include "hopf/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace hopf {

namespace {

const complexd imag_unit{0.0, 1.0};
constexpr double pi = two_pi / 2;

FrameVector basis_vector(int i) {
    FrameVector v;
    v.c[static_cast<std::size_t>(i - 1)] = 1.0;
    return v;
}

} // namespace

HSpec HSpec::constant(double value) {
    HSpec h;
    h.a0 = value;
    if (!(h.grid_minimum() > 0)) throw NonPositiveProfile("HSpec: profile must be strictly positive");
    return h;
}

HSpec HSpec::fourier(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
    HSpec h;
    h.a0 = a0;
    h.cos_coeffs = std::move(cos_coeffs);
    h.sin_coeffs = std::move(sin_coeffs);
    if (!(h.grid_minimum() > 0)) throw NonPositiveProfile("HSpec: profile must be strictly positive");
    return h;
}

double HSpec::eval(double theta) const {
    double v = a0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
        v += cos_coeffs[k] * std::cos((k + 1) * theta);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
        v += sin_coeffs[k] * std::sin((k + 1) * theta);
    return v;
}

double HSpec::deriv(double theta) const {
    double v = 0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
        v -= cos_coeffs[k] * (k + 1) * std::sin((k + 1) * theta);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
        v += sin_coeffs[k] * (k + 1) * std::cos((k + 1) * theta);
    return v;
}

double HSpec::grid_minimum() const {
    double m = eval(0.0);
    for (int i = 1; i < 4096; ++i) m = std::min(m, eval(two_pi * i / 4096));
    return m;
}

MetricFamily MetricFamily::standard(HopfParams params, HSpec h) {
    return {std::move(params), std::move(h), Kind::Standard};
}

MetricFamily MetricFamily::diagonal(HopfParams params, KappaSpec kappa) {
    if (std::abs(params.log_mod_alpha() - params.log_mod_beta()) > 1e-12)
        throw ParamMismatch("diagonal family requires ||alpha|| = ||beta||");
    return {std::move(params), std::move(kappa), Kind::Diagonal};
}

MetricFamily MetricFamily::perturbed_control(HopfParams params, HSpec h) {
    return {std::move(params), std::move(h), Kind::PerturbedControl};
}

double MetricFamily::lee_profile(double theta) const {
    if (kind == Kind::Diagonal) return profile.eval(theta) * params.log_mod_alpha() / pi;
    return profile.eval(theta);
}

double MetricFamily::lee_profile_deriv(double theta) const {
    if (kind == Kind::Diagonal) return profile.deriv(theta) * params.log_mod_alpha() / pi;
    return profile.deriv(theta);
}

HermitianMetric metric_matrix(const MetricFamily& family, const FramePoint& p) {
    if (family.kind == MetricFamily::Kind::Diagonal)
        return diagonal_family_matrix(family.params, family.profile, p);

    const complexd G = log_average(family.params, p);
    const double re = G.real();
    const double R = family.params.log_mod_alpha() - family.params.log_mod_beta();
    const complexd s = p.xi1 * p.xi2;
    HermitianMetric H;
    H.h11 = pi * family.profile.eval(p.theta) / (re * re) +
            std::norm(p.xi1) * std::norm(p.xi2) * R * R / (re * re * re);
    H.h12 = imag_unit * s * R / (re * re);
    H.h22 = 1.0 / re;
    if (family.kind == MetricFamily::Kind::PerturbedControl)
        H.h11 *= 1.0 + 0.1 * std::norm(p.xi1);
    return H;
}

double metric_eval(const MetricFamily& family, const FramePoint& p, const FrameVector& X,
                   const FrameVector& Y) {
    const HermitianMetric H = metric_matrix(family, p);
    const ComplexCoords x = to_complex_coords(family.params, p, X);
    const ComplexCoords y = to_complex_coords(family.params, p, Y);
    const complexd herm = x.u * H.h11 * std::conj(y.u) + x.u * H.h12 * std::conj(y.v) +
                          x.v * std::conj(H.h12) * std::conj(y.u) + x.v * H.h22 * std::conj(y.v);
    return herm.real();
}

double fundamental_form(const MetricFamily& family, const FramePoint& p, const FrameVector& X,
                        const FrameVector& Y) {
    return metric_eval(family, p, apply_complex_structure(family.params, p, X), Y);
}

std::array<double, 6> fundamental_form_table(const MetricFamily& family, const FramePoint& p) {
    const complexd G = log_average(family.params, p);
    const double re = G.real();
    const double la = family.params.log_mod_alpha();
    const double lb = family.params.log_mod_beta();
    const double R = la - lb;
    const double D = la * family.params.arg_beta() - lb * family.params.arg_alpha();
    const complexd s = p.xi1 * p.xi2;

    const double omega34 =
        fundamental_form(family, p, basis_vector(3), basis_vector(4));
    const double scale = omega34 / 2.0;

    return {scale * family.lee_profile(p.theta),
            -scale * s.real() * D / (pi * re),
            -scale * s.imag() * D / (pi * re),
            -scale * 2.0 * s.real() * R / re,
            -scale * 2.0 * s.imag() * R / re,
            2.0 * scale};
}

FrameCovector lee_form(const MetricFamily& family, const FramePoint& p) {
    FrameCovector w;
    w.w[0] = -family.lee_profile(p.theta);
    return w;
}

FrameVector lee_vector(const MetricFamily& family, const FramePoint& p) {
    const complexd G = log_average(family.params, p);
    const complexd s = p.xi1 * p.xi2;
    const double dab = family.params.arg_alpha() - family.params.arg_beta();
    FrameVector B;
    B.c = {-2.0 * two_pi, 2.0 * G.imag(), 2.0 * s.imag() * dab, -2.0 * s.real() * dab};
    return B;
}

FrameVector anti_lee_vector(const MetricFamily& family, const FramePoint& p) {
    const complexd G = log_average(family.params, p);
    const complexd s = p.xi1 * p.xi2;
    const double R = family.params.log_mod_alpha() - family.params.log_mod_beta();
    FrameVector JB;
    JB.c = {0.0, -2.0 * G.real(), -2.0 * s.imag() * R, 2.0 * s.real() * R};
    return JB;
}

namespace {

FramePoint grid_point(int i, int n) {
    const int m = std::max(2, static_cast<int>(std::lround(std::pow(double(n), 0.25))));
    const int a = i % m, b = (i / m) % m, c = (i / (m * m)) % m, d = i / (m * m * m);
    const double theta = two_pi * (a + 0.5) / m;
    const double u = (b + 0.5) / m;
    const double p1 = two_pi * (c + 0.5) / m;
    const double p2 = two_pi * (d % m + 0.5) / m;
    return FramePoint(theta, std::sqrt(u) * std::polar(1.0, p1),
                      std::sqrt(1.0 - u) * std::polar(1.0, p2));
}

} // namespace

FramePoint halton_point(std::uint64_t index) {
    const double theta = two_pi * halton(index, 2);
    const double u = halton(index, 3);
    const double p1 = two_pi * halton(index, 5);
    const double p2 = two_pi * halton(index, 7);
    return FramePoint(theta, std::sqrt(u) * std::polar(1.0, p1),
                      std::sqrt(1.0 - u) * std::polar(1.0, p2));
}

LckReport check_lck(const MetricFamily& family, int sample_count, const ToleranceConfig& tol,
                    bool grid_sampling) {
    tol.validate();
    LckReport report;
    report.samples = sample_count;
    const double step = tol.derivative_step;

    for (int i = 0; i < sample_count; ++i) {
        const FramePoint p = grid_sampling ? grid_point(i, sample_count)
                                           : halton_point(static_cast<std::uint64_t>(i));

        if (!metric_matrix(family, p).positive_definite()) ++report.positivity_violations;

        auto omega_comp = [&family](int j) {
            return [&family, j](const FramePoint& q) { return lee_form(family, q).w[j - 1]; };
        };
        auto fund = [&family](int a, int b) {
            return [&family, a, b](const FramePoint& q) {
                return fundamental_form(family, q, basis_vector(a), basis_vector(b));
            };
        };
        auto omega_of = [&family, &p](const FrameVector& v) { return lee_form(family, p)(v); };
        auto fund_of = [&family, &p](const FrameVector& v, int b) {
            return fundamental_form(family, p, v, basis_vector(b));
        };

        // d omega on all pairs.
        for (int a = 1; a <= 4; ++a) {
            for (int b = a + 1; b <= 4; ++b) {
                const double d = directional_derivative(omega_comp(b), a, p, step) -
                                 directional_derivative(omega_comp(a), b, p, step) -
                                 omega_of(frame_bracket(a, b));
                report.max_domega = std::max(report.max_domega, std::abs(d));
            }
        }

        // dOmega - omega ^ Omega on the four independent triples.
        const int triples[4][3] = {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
        for (const auto& t : triples) {
            const int a = t[0], b = t[1], c = t[2];
            double dfund = directional_derivative(fund(b, c), a, p, step) +
                           directional_derivative(fund(c, a), b, p, step) +
                           directional_derivative(fund(a, b), c, p, step);
            dfund -= fund_of(frame_bracket(a, b), c);
            dfund -= fund_of(frame_bracket(b, c), a);
            dfund -= fund_of(frame_bracket(c, a), b);

            const FrameCovector w = lee_form(family, p);
            const double wedge = w.w[a - 1] * fund(b, c)(p) - w.w[b - 1] * fund(a, c)(p) +
                                 w.w[c - 1] * fund(a, b)(p);
            report.max_dfund_minus_wedge =
                std::max(report.max_dfund_minus_wedge, std::abs(dfund - wedge));
        }
    }
    return report;
}

FrameVector levi_civita(const MetricFamily& family, const FramePoint& p, int i, int j,
                        double step) {
    double gram[16];
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            gram[4 * (a - 1) + (b - 1)] = metric_eval(family, p, basis_vector(a), basis_vector(b));
    if (condition_estimate4(gram) > 1e12)
        throw IllConditioned("levi_civita: Gram matrix condition exceeds 1e12");

    auto g_field = [&family](int a, int b) {
        return [&family, a, b](const FramePoint& q) {
            return metric_eval(family, q, basis_vector(a), basis_vector(b));
        };
    };

    double rhs[4];
    for (int k = 1; k <= 4; ++k) {
        double v = directional_derivative4(g_field(j, k), i, p, step) +
                   directional_derivative4(g_field(i, k), j, p, step) -
                   directional_derivative4(g_field(i, j), k, p, step);
        v += metric_eval(family, p, frame_bracket(i, j), basis_vector(k));
        v -= metric_eval(family, p, frame_bracket(j, k), basis_vector(i));
        v += metric_eval(family, p, frame_bracket(k, i), basis_vector(j));
        rhs[k - 1] = v / 2.0;
    }

    FrameVector out;
    double x[4];
    if (!solve_linear4(gram, rhs, x)) throw IllConditioned("levi_civita: singular Gram matrix");
    out.c = {x[0], x[1], x[2], x[3]};
    return out;
}

FrameVector levi_civita(const MetricFamily& family, const FramePoint& p, int i, int j) {
    return levi_civita(family, p, i, j, 1e-4);
}

std::array<std::array<double, 4>, 4> nabla_lee_matrix(const MetricFamily& family,
                                                      const FramePoint& p) {
    std::array<std::array<double, 4>, 4> m{};
    const FrameCovector w = lee_form(family, p);
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            // e_i(omega(e_j)): omega = -h(theta) e^1 is analytic in theta and
            // the e_2..e_4 flows keep theta fixed.
            const double dw = (i == 1 && j == 1) ? -family.lee_profile_deriv(p.theta) : 0.0;
            m[i - 1][j - 1] = dw - w(levi_civita(family, p, i, j));
        }
    }
    return m;
}

VaismanReport is_vaisman(const MetricFamily& family, int sample_count, double threshold,
                         bool grid_sampling) {
    VaismanReport report;
    for (int i = 0; i < sample_count; ++i) {
        const FramePoint p = grid_sampling ? grid_point(i, sample_count)
                                           : halton_point(static_cast<std::uint64_t>(i));
        const auto m = nabla_lee_matrix(family, p);
        double frob = 0;
        for (const auto& row : m)
            for (double v : row) frob += v * v;
        report.max_residual = std::max(report.max_residual, std::sqrt(frob));
    }
    report.verdict = report.max_residual < threshold;
    return report;
}

HermitianMetric diagonal_family_matrix(const HopfParams& params, const KappaSpec& kappa,
                                       const FramePoint& p) {
    if (std::abs(params.log_mod_alpha() - params.log_mod_beta()) > 1e-12)
        throw ParamMismatch("diagonal_family_matrix requires ||alpha|| = ||beta||");
    HermitianMetric H;
    H.h11 = kappa.eval(p.theta);
    H.h12 = {0, 0};
    H.h22 = 1.0;
    return H;
}

std::array<std::array<complexd, 2>, 2> invariant_metric_universal(const HopfParams& params,
                                                                  const KappaSpec& kappa,
                                                                  const UniversalPoint& z) {
    if (std::abs(params.log_mod_alpha() - params.log_mod_beta()) > 1e-12)
        throw ParamMismatch("invariant_metric_universal requires ||alpha|| = ||beta||");
    const double n1 = std::norm(z.z1), n2 = std::norm(z.z2);
    const double total = n1 + n2;
    if (!(total > 0)) throw DomainError("invariant_metric_universal: z must be nonzero");
    const double theta = pi * std::log(total) / params.log_mod_alpha();
    const double k = kappa.eval(theta);
    const double denom = total * total;
    std::array<std::array<complexd, 2>, 2> M;
    M[0][0] = (k * n1 + n2) / denom;
    M[0][1] = (k - 1.0) * z.z2 * std::conj(z.z1) / denom;
    M[1][0] = std::conj(M[0][1]);
    M[1][1] = (n1 + k * n2) / denom;
    return M;
}

} // namespace hopf

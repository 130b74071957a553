#include "hopf/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace hopf {

namespace {

constexpr double pi = two_pi / 2;

// Documented payloads for bare "irr" declarations.
constexpr double kIrrArgDefault = 0.61803398874989485;   // (sqrt5 - 1)/2, in pi units
constexpr double kIrrRatioDefault = 1.4142135623730951;  // sqrt 2

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

double parse_double(const std::string& text, const char* what) {
    const char* c = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(c, &end);
    if (end == c || *end != '\0' || !std::isfinite(v))
        throw DomainError(std::string(what) + ": cannot parse '" + text + "'");
    return v;
}

complexd parse_complex(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
    if (text.empty()) throw DomainError("complex literal: empty");

    // Pure imaginary shorthand: "i", "-i", "+i".
    auto parse_term = [](const std::string& t, bool& imag) -> double {
        imag = !t.empty() && t.back() == 'i';
        std::string body = imag ? t.substr(0, t.size() - 1) : t;
        if (imag && (body.empty() || body == "+" || body == "-")) body += "1";
        return parse_double(body, "complex literal");
    };

    // Split at the last '+'/'-' that is not an exponent sign and not leading.
    std::size_t cut = std::string::npos;
    for (std::size_t i = text.size(); i-- > 1;) {
        const char ch = text[i];
        if ((ch == '+' || ch == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    double re = 0, im = 0;
    if (cut == std::string::npos) {
        bool is_imag = false;
        const double v = parse_term(text, is_imag);
        (is_imag ? im : re) = v;
    } else {
        bool first_imag = false, second_imag = false;
        const double a = parse_term(text.substr(0, cut), first_imag);
        const double b = parse_term(text.substr(cut), second_imag);
        if (first_imag == second_imag)
            throw DomainError("complex literal: expected one real and one imaginary term");
        re = first_imag ? b : a;
        im = first_imag ? a : b;
    }
    return {re, im};
}

ExactInput parse_exact_input(const std::string& text, double irr_default) {
    if (text == "irr") return {ExactTag::irrational(), irr_default};
    if (text.rfind("irr:", 0) == 0)
        return {ExactTag::irrational(), parse_double(text.substr(4), "irr payload")};
    const auto slash = text.find('/');
    long long num = 0, den = 1;
    try {
        if (slash == std::string::npos) {
            num = std::stoll(text);
        } else {
            num = std::stoll(text.substr(0, slash));
            den = std::stoll(text.substr(slash + 1));
        }
    } catch (const std::exception&) {
        throw DomainError("rational literal: cannot parse '" + text + "'");
    }
    const Rational r(num, den);
    return {ExactTag::rational(r), r.value()};
}

HSpec parse_hspec(const std::string& text) {
    if (text.rfind("const:", 0) == 0)
        return HSpec::constant(parse_double(text.substr(6), "h profile"));
    if (text.rfind("fourier:", 0) == 0) {
        const auto parts = split(text.substr(8), ',');
        if (parts.empty()) throw DomainError("h profile: fourier needs coefficients");
        std::vector<double> values;
        for (const auto& p : parts) values.push_back(parse_double(p, "h profile"));
        std::vector<double> cosc, sinc;
        for (std::size_t i = 1; i < values.size(); ++i)
            (i % 2 == 1 ? cosc : sinc).push_back(values[i]);
        // pad so cos/sin lists line up with their harmonic index
        while (sinc.size() < cosc.size()) sinc.push_back(0.0);
        while (cosc.size() < sinc.size()) cosc.push_back(0.0);
        return HSpec::fourier(values[0], cosc, sinc);
    }
    throw DomainError("h profile: expected const:<v> or fourier:<a0,c1,s1,...>");
}

FramePoint parse_point(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 5)
        throw DomainError("point: expected theta,re1,im1,re2,im2");
    double v[5];
    for (int i = 0; i < 5; ++i) v[i] = parse_double(parts[i], "point");
    return FramePoint(v[0], {v[1], v[2]}, {v[3], v[4]});
}

HopfParams params_from_cli(const ParamCliInput& in) {
    const bool floating = !in.alpha.empty() || !in.beta.empty();
    const bool exact =
        !in.log_mod_ratio.empty() || !in.arg_alpha_pi.empty() || !in.arg_beta_pi.empty();

    if (floating) {
        if (in.alpha.empty() || in.beta.empty())
            throw DomainError("params: both --alpha and --beta are required in floating mode");
        const complexd a = parse_complex(in.alpha);
        const complexd b = parse_complex(in.beta);
        if (!exact) return HopfParams::from_complex(a, b);
        const ExactInput ratio = in.log_mod_ratio.empty()
                                     ? ExactInput{ExactTag::absent(), 0}
                                     : parse_exact_input(in.log_mod_ratio, kIrrRatioDefault);
        const ExactInput aa = in.arg_alpha_pi.empty()
                                  ? ExactInput{ExactTag::absent(), 0}
                                  : parse_exact_input(in.arg_alpha_pi, kIrrArgDefault);
        const ExactInput ab = in.arg_beta_pi.empty()
                                  ? ExactInput{ExactTag::absent(), 0}
                                  : parse_exact_input(in.arg_beta_pi, kIrrArgDefault);
        return HopfParams::from_complex_with_exact(a, b, ratio.tag, aa.tag, ab.tag,
                                                   in.rational_tol);
    }
    if (!exact) throw DomainError("params: give --alpha/--beta or exact-mode flags");

    const ExactInput ratio = parse_exact_input(
        in.log_mod_ratio.empty() ? "1/1" : in.log_mod_ratio, kIrrRatioDefault);
    const ExactInput aa =
        parse_exact_input(in.arg_alpha_pi.empty() ? "0" : in.arg_alpha_pi, kIrrArgDefault);
    const ExactInput ab =
        parse_exact_input(in.arg_beta_pi.empty() ? "0" : in.arg_beta_pi, kIrrArgDefault);
    return HopfParams::from_exact(ratio.tag, ratio.payload, in.log_mod_beta, aa.tag, aa.payload,
                                  ab.tag, ab.payload);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string tag_text(const ExactTag& tag) {
    if (tag.is_rational()) return tag.value.str();
    if (tag.is_irrational()) return "irr";
    return "-";
}

} // namespace

std::string params_echo_line(const HopfParams& params) {
    return "params: alpha=" + format_double(params.alpha.real()) + "+" +
           format_double(params.alpha.imag()) + "i beta=" + format_double(params.beta.real()) +
           "+" + format_double(params.beta.imag()) + "i mode=" +
           (params.exact_mode() ? "exact" : "floating") +
           " log_mod_ratio=" + tag_text(params.log_ratio) +
           " arg_alpha_pi=" + tag_text(params.arg_alpha_pi) +
           " arg_beta_pi=" + tag_text(params.arg_beta_pi);
}

std::string tolerances_echo_line(const ToleranceConfig& tol) {
    return "tolerances: root_tol=" + format_double(tol.root_tol) +
           " derivative_step=" + format_double(tol.derivative_step) +
           " residual_tol=" + format_double(tol.residual_tol) +
           " rational_tol=" + format_double(tol.rational_tol) +
           " max_denominator=" + std::to_string(tol.max_denominator);
}

namespace {

json exact_tag_json(const ExactTag& tag) {
    if (tag.is_rational()) return tag.value.str();
    if (tag.is_irrational()) return "irr";
    return nullptr;
}

} // namespace

json params_json(const HopfParams& params) {
    json j;
    j["alpha"] = {{"re", params.alpha.real()}, {"im", params.alpha.imag()}};
    j["beta"] = {{"re", params.beta.real()}, {"im", params.beta.imag()}};
    j["mode"] = params.exact_mode() ? "exact" : "floating";
    j["log_mod_alpha"] = params.log_mod_alpha();
    j["log_mod_beta"] = params.log_mod_beta();
    j["exact"] = {{"log_mod_ratio", exact_tag_json(params.log_ratio)},
                  {"arg_alpha_pi", exact_tag_json(params.arg_alpha_pi)},
                  {"arg_beta_pi", exact_tag_json(params.arg_beta_pi)}};
    return j;
}

json tolerances_json(const ToleranceConfig& tol) {
    return {{"root_tol", tol.root_tol},
            {"derivative_step", tol.derivative_step},
            {"residual_tol", tol.residual_tol},
            {"rational_tol", tol.rational_tol},
            {"max_denominator", tol.max_denominator}};
}

json leaf_json(const LeafClassification& c) {
    json j;
    j["class"] = c.leaf.kind_name();
    j["compact"] = c.leaf.compact();
    if (c.leaf.kind == LeafClass::Kind::CircleCompact ||
        c.leaf.kind == LeafClass::Kind::ToralKnot)
        j["period"] = c.leaf.period;
    if (c.leaf.type) j["knot_type"] = c.leaf.type->str();
    if (c.leaf.lattice) {
        json lat;
        lat["v"] = {c.leaf.lattice->v[0], c.leaf.lattice->v[1]};
        lat["w"] = {c.leaf.lattice->w[0], c.leaf.lattice->w[1]};
        if (c.leaf.lattice->certificate) {
            const auto& ct = *c.leaf.lattice->certificate;
            lat["certificate"] = {{"l", ct.l},       {"k", ct.k},
                                  {"p", ct.p},       {"q", ct.q},
                                  {"p_prime", ct.p_prime.str()},
                                  {"q_prime", ct.q_prime.str()},
                                  {"b", ct.b},       {"lattice_c", ct.lattice_c}};
        }
        j["lattice"] = lat;
    }
    j["certified"] = c.certified;
    j["qualifier"] = c.qualifier;
    return j;
}

json classify_report(const HopfParams& params, const ToleranceConfig& tol) {
    const FramePoint generic(0.7, {0.6, 0.2}, {0.5, -0.35});
    const FramePoint axis_xi2_zero(0.3, {1.0, 0.0}, {0.0, 0.0});
    const FramePoint axis_xi1_zero(0.3, {0.0, 0.0}, {1.0, 0.0});

    json j;
    j["params"] = params_json(params);
    j["tolerances"] = tolerances_json(tol);

    json fol;
    for (FoliationKind kind : {FoliationKind::KernelLee, FoliationKind::LeeFlow,
                               FoliationKind::AntiLeeFlow, FoliationKind::LeeAntiLeePlane}) {
        json entry;
        entry["generic"] = leaf_json(classify_leaf(params, generic, kind, tol));
        entry["axis_xi2_zero"] = leaf_json(classify_leaf(params, axis_xi2_zero, kind, tol));
        entry["axis_xi1_zero"] = leaf_json(classify_leaf(params, axis_xi1_zero, kind, tol));
        fol[foliation_name(kind)] = entry;
    }
    j["foliations"] = fol;

    const auto witness = elliptic_witness(params, tol);
    j["elliptic"] = witness ? json{{"m", witness->m}, {"n", witness->n}} : json(nullptr);
    if (witness) {
        const MonodromyData md = monodromy(params, tol);
        j["monodromy"] = {{"m", md.m}, {"n", md.n}, {"c", md.monodromy_c}};
    } else {
        j["monodromy"] = nullptr;
    }

    const OrbifoldData orb = regularity(params, tol);
    json jorb;
    jorb["regular"] = orb.regular;
    jorb["quasi_regular"] = orb.quasi_regular;
    jorb["certified"] = orb.certified;
    jorb["cone_orders"] =
        orb.cone_orders ? json{orb.cone_orders->first, orb.cone_orders->second} : json(nullptr);
    jorb["multiplicities"] = {{"generic", orb.multiplicity_generic},
                              {"xi2_axis", orb.multiplicity_xi2_axis},
                              {"xi1_axis", orb.multiplicity_xi1_axis}};
    j["orbifold"] = jorb;
    return j;
}

json verify_report(const HopfParams& params, const HSpec& h, int samples,
                   const ToleranceConfig& tol, bool grid_sampling) {
    const MetricFamily family = MetricFamily::standard(params, h);

    json j;
    j["params"] = params_json(params);
    j["h_min_on_grid"] = h.grid_minimum();
    j["tolerances"] = tolerances_json(tol);
    j["samples"] = samples;
    j["sampling"] = grid_sampling ? "grid" : "halton";

    const LckReport lck = check_lck(family, samples, tol, grid_sampling);
    j["lck"] = {{"max_domega", lck.max_domega},
                {"max_dfundamental_minus_wedge", lck.max_dfund_minus_wedge},
                {"positivity_violations", lck.positivity_violations},
                {"pass", lck.max_domega < tol.residual_tol &&
                             lck.max_dfund_minus_wedge < tol.residual_tol &&
                             lck.positivity_violations == 0}};

    const VaismanReport vr = is_vaisman(family, std::min(samples, 64), 1e-6, grid_sampling);
    j["vaisman"] = {{"verdict", vr.verdict}, {"max_residual", vr.max_residual}};

    double max_duality = 0, max_jinv = 0;
    const int sweep = std::min(samples, 128);
    for (int i = 0; i < sweep; ++i) {
        const FramePoint p = halton_point(static_cast<std::uint64_t>(i));
        const FrameVector B = lee_vector(family, p);
        const FrameCovector w = lee_form(family, p);
        FrameVector X, Y;
        for (int c = 0; c < 4; ++c) {
            X.c[c] = 2.0 * halton(static_cast<std::uint64_t>(4 * i + c), 11) - 1.0;
            Y.c[c] = 2.0 * halton(static_cast<std::uint64_t>(4 * i + c), 13) - 1.0;
        }
        max_duality = std::max(max_duality, std::abs(metric_eval(family, p, B, X) - w(X)));
        const FrameVector JX = apply_complex_structure(params, p, X);
        const FrameVector JY = apply_complex_structure(params, p, Y);
        max_jinv = std::max(max_jinv, std::abs(metric_eval(family, p, JX, JY) -
                                               metric_eval(family, p, X, Y)));
    }
    j["duality"] = {{"max_residual", max_duality}, {"pass", max_duality < 1e-8}};
    j["j_invariance"] = {{"max_residual", max_jinv}, {"pass", max_jinv < 1e-10}};

    j["pass"] = j["lck"]["pass"].get<bool>() && j["duality"]["pass"].get<bool>() &&
                j["j_invariance"]["pass"].get<bool>();
    return j;
}

std::string render_csv(const CsvTable& table) {
    std::ostringstream out;
    for (const auto& c : table.comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << table.header[i] << (i + 1 < table.header.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_double(row[i]) << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
    return out.str();
}

std::string render_svg(const SvgFigure& fig) {
    const double width = 640.0, height = 640.0, margin = 20.0;
    const double spanx = std::max(fig.max_x - fig.min_x, 1e-12);
    const double spany = std::max(fig.max_y - fig.min_y, 1e-12);
    auto sx = [&](double x) { return margin + (x - fig.min_x) / spanx * (width - 2 * margin); };
    auto sy = [&](double y) {
        return height - margin - (y - fig.min_y) / spany * (height - 2 * margin);
    };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        return std::string(buf);
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    if (!fig.desc.empty()) out << "  <desc>" << fig.desc << "</desc>\n";
    if (!fig.note.empty())
        out << "  <text x=\"" << margin << "\" y=\"" << margin
            << "\" font-family=\"monospace\" font-size=\"12\">" << fig.note << "</text>\n";
    for (const auto& line : fig.polylines) {
        if (line.size() < 2) continue;
        out << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << fmt(sx(line[i][0])) << "," << fmt(sy(line[i][1]));
            if (i + 1 < line.size()) out << " ";
        }
        out << "\"/>\n";
    }
    for (const auto& pt : fig.points)
        out << "  <circle cx=\"" << fmt(sx(pt[0])) << "\" cy=\"" << fmt(sy(pt[1]))
            << "\" r=\"1.2\" fill=\"black\"/>\n";
    out << "</svg>\n";
    return out.str();
}

namespace {

double wrap_angle(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0) r += two_pi;
    return r;
}

// Appends (x, y) to the last polyline, starting a new one on wrap jumps.
void push_wrapped(std::vector<std::vector<std::array<double, 2>>>& lines, double x, double y) {
    if (lines.empty()) lines.emplace_back();
    auto& cur = lines.back();
    if (!cur.empty()) {
        const double dx = std::abs(x - cur.back()[0]);
        const double dy = std::abs(y - cur.back()[1]);
        if (dx > pi || dy > pi) {
            lines.emplace_back();
            lines.back().push_back({x, y});
            return;
        }
    }
    cur.push_back({x, y});
}

} // namespace

LeafTrace trace_leaf(const HopfParams& params, const FramePoint& p0, FoliationKind kind,
                     int samples, double t_max, const std::string& projection) {
    if (projection != "torus-angles" && projection != "stereo")
        throw DomainError("projection: expected torus-angles or stereo");
    if (samples < 2) throw DomainError("samples: need at least 2");
    const bool stereo = projection == "stereo";

    LeafTrace out;
    if (kind == FoliationKind::KernelLee) {
        out.csv.comments.push_back(
            "kernel-lee leaf is the full 3-sphere slice theta = " + format_double(p0.theta) +
            "; no curve to trace");
        out.csv.header = {"theta"};
        out.csv.rows.push_back({p0.theta});
        out.svg.note = "kernel-lee leaf: 3-sphere slice theta = " + format_double(p0.theta);
        out.svg.min_x = 0;
        out.svg.max_x = two_pi;
        out.svg.min_y = 0;
        out.svg.max_y = two_pi;
        return out;
    }

    const bool surface = kind == FoliationKind::LeeAntiLeePlane;
    const double base1 = std::arg(p0.xi1), base2 = std::arg(p0.xi2);

    auto emit = [&](double t, double s, const FramePoint& q) {
        const double t1 = wrap_angle(std::arg(q.xi1) - base1);
        const double t2 = wrap_angle(std::arg(q.xi2) - base2);
        if (stereo) {
            const auto y = stereographic_projection(q.xi1, q.xi2);
            if (surface) out.csv.rows.push_back({t, s, q.theta, y[0], y[1], y[2]});
            else out.csv.rows.push_back({t, q.theta, y[0], y[1], y[2]});
            if (surface) out.svg.points.push_back({y[1], y[2]});
            else push_wrapped(out.svg.polylines, y[1], y[2]);
        } else {
            if (surface) out.csv.rows.push_back({t, s, q.theta, t1, t2});
            else out.csv.rows.push_back({t, q.theta, t1, t2});
            if (surface) out.svg.points.push_back({t1, t2});
            else push_wrapped(out.svg.polylines, t1, t2);
        }
    };

    if (surface) {
        out.csv.header = stereo ? std::vector<std::string>{"t", "s", "theta", "y1", "y2", "y3"}
                                : std::vector<std::string>{"t", "s", "theta", "t1", "t2"};
        const int side = std::max(2, static_cast<int>(std::lround(std::sqrt(double(samples)))));
        for (int i = 0; i < side; ++i) {
            for (int jdx = 0; jdx < side; ++jdx) {
                const double t = t_max * i / (side - 1);
                const double s = t_max * jdx / (side - 1);
                emit(t, s, leaf_surface(params, p0, t, s));
            }
        }
    } else {
        out.csv.header = stereo ? std::vector<std::string>{"t", "theta", "y1", "y2", "y3"}
                                : std::vector<std::string>{"t", "theta", "t1", "t2"};
        for (int i = 0; i < samples; ++i) {
            const double t = t_max * i / (samples - 1);
            const FramePoint q = kind == FoliationKind::LeeFlow ? flow_lee(params, p0, t)
                                                                : flow_anti_lee(params, p0, t);
            emit(t, 0.0, q);
        }
    }

    if (stereo) {
        double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
        auto feed = [&](const std::array<double, 2>& pt) {
            lo_x = std::min(lo_x, pt[0]);
            hi_x = std::max(hi_x, pt[0]);
            lo_y = std::min(lo_y, pt[1]);
            hi_y = std::max(hi_y, pt[1]);
        };
        for (const auto& line : out.svg.polylines)
            for (const auto& pt : line) feed(pt);
        for (const auto& pt : out.svg.points) feed(pt);
        if (lo_x > hi_x) {
            lo_x = lo_y = -1;
            hi_x = hi_y = 1;
        }
        out.svg.min_x = lo_x;
        out.svg.max_x = hi_x;
        out.svg.min_y = lo_y;
        out.svg.max_y = hi_y;
    } else {
        out.svg.min_x = 0;
        out.svg.max_x = two_pi;
        out.svg.min_y = 0;
        out.svg.max_y = two_pi;
    }
    return out;
}

} // namespace hopf

// Acceptance suite: exercises every contract criterion end to end and
// prints one PASS/FAIL line per criterion. The first argument is the path
// to the CLI binary (used by the determinism and exit-code criterion).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hopf/cli_io.hpp"

using namespace hopf;

namespace {

constexpr double pi = two_pi / 2;

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

FramePoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    return FramePoint(two_pi * uni(rng), {gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)});
}

FrameVector random_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    FrameVector v;
    for (auto& c : v.c) c = gauss(rng);
    return v;
}

FramePoint generic_point() { return FramePoint(0.7, {0.6, 0.2}, {0.5, -0.35}); }

ExactTag rat(long long n, long long d) { return ExactTag::rational(Rational(n, d)); }

HopfParams exact4_2() {
    return HopfParams::from_exact(rat(2, 1), 0, std::log(2.0), rat(0, 1), 0, rat(0, 1), 0);
}

HopfParams exact2i_2() {
    return HopfParams::from_exact(rat(1, 1), 0, std::log(2.0), rat(1, 2), 0, rat(0, 1), 0);
}

std::vector<HopfParams> float_battery() {
    return {
        HopfParams::from_complex({4, 0}, {2, 0}),
        HopfParams::from_complex({0, 2}, {2, 0}),
        HopfParams::from_complex({std::exp(two_pi), 0}, {std::exp(two_pi), 0}),
        HopfParams::from_complex(std::polar(std::exp(1.3), pi / 5),
                                 std::polar(std::exp(1.1), -pi / 7)),
        HopfParams::from_complex({2.5, 1.5}, {1.2, -0.8}),
    };
}

complexd int_pow(complexd b, long long e) {
    complexd acc{1, 0};
    for (long long i = 0; i < e; ++i) acc *= b;
    return acc;
}

void criterion1() {
    std::mt19937_64 rng(101);
    const auto battery = float_battery();
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const HopfParams& P = battery[i % battery.size()];
        const FramePoint p = random_point(rng);
        const FrameVector v = random_vector(rng);
        const FrameVector jjv = apply_complex_structure(P, p, apply_complex_structure(P, p, v));
        for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(jjv.c[c] + v.c[c]));
    }
    report(1, "complex structure squares to minus identity", worst < 1e-10,
           "max residual " + num(worst) + " over 1000 triples, 5 parameter sets");
}

void criterion2() {
    std::mt19937_64 rng(102);
    double worst_rt = 0, worst_deck = 0;
    for (const auto& P : float_battery()) {
        for (int i = 0; i < 200; ++i) {
            const FramePoint p = random_point(rng);
            worst_rt = std::max(worst_rt,
                                frame_distance(from_universal(P, to_universal(P, p)).point, p));

            const double theta = two_pi * halton(static_cast<std::uint64_t>(i), 2);
            const UniversalPoint z = to_universal(P, theta, p.xi1, p.xi2);
            const UniversalPoint s = to_universal(P, theta + two_pi, p.xi1, p.xi2);
            const double scale = std::abs(P.alpha * z.z1) + std::abs(P.beta * z.z2);
            worst_deck = std::max(worst_deck, std::abs(s.z1 - P.alpha * z.z1) / scale);
            worst_deck = std::max(worst_deck, std::abs(s.z2 - P.beta * z.z2) / scale);
        }
    }
    report(2, "covering diffeomorphism inverts and is deck-equivariant",
           worst_rt < 1e-10 && worst_deck < 1e-12,
           "roundtrip " + num(worst_rt) + ", deck relative " + num(worst_deck));
}

void criterion3() {
    const ToleranceConfig tol; // derivative step 1e-4
    const std::vector<HopfParams> battery = {
        HopfParams::from_complex({0, 2}, {2, 0}),
        HopfParams::from_complex({4, 0}, {2, 0}),
        HopfParams::from_complex(std::polar(std::exp(1.3), pi / 5),
                                 std::polar(std::exp(1.1), -pi / 7)),
    };
    const std::vector<HSpec> profiles = {HSpec::constant(2.0), HSpec::fourier(2.0, {}, {0.5})};
    double worst = 0;
    bool pd_ok = true;
    for (const auto& P : battery) {
        for (const auto& h : profiles) {
            const LckReport r = check_lck(MetricFamily::standard(P, h), 200, tol);
            worst = std::max({worst, r.max_domega, r.max_dfund_minus_wedge});
            pd_ok = pd_ok && r.positivity_violations == 0;
        }
    }
    const LckReport bad = check_lck(
        MetricFamily::perturbed_control(HopfParams::from_complex({0, 2}, {2, 0}),
                                        HSpec::constant(2.0)),
        200, tol);
    const bool control = bad.max_dfund_minus_wedge > 1e-3;
    report(3, "conformal-Kahler identity with negative control",
           worst < 1e-6 && pd_ok && control,
           "max residual " + num(worst) + ", control residual " +
               num(bad.max_dfund_minus_wedge));
}

void criterion4() {
    const HopfParams P = HopfParams::from_complex({0, 2}, {2, 0});
    const HopfParams Q = HopfParams::from_complex({4, 0}, {2, 0});

    const VaismanReport yes = is_vaisman(MetricFamily::standard(P, HSpec::constant(2.0)), 48, 1e-6);
    const VaismanReport yes2 = is_vaisman(MetricFamily::standard(Q, HSpec::constant(3.0)), 48, 1e-6);
    const VaismanReport no =
        is_vaisman(MetricFamily::standard(P, HSpec::fourier(2.0, {}, {0.5})), 48, 1e-6);

    const HopfParams R =
        HopfParams::from_complex({std::exp(two_pi), 0}, {std::exp(two_pi), 0});
    const MetricFamily D = MetricFamily::diagonal(R, HSpec::fourier(2.0, {}, {1.0}));
    const auto m = nabla_lee_matrix(D, FramePoint(0.0, {0.6, 0.2}, {0.5, -0.35}));
    const double entry_err = std::abs(m[0][0] - (-1.0));

    const bool pass = yes.verdict && yes.max_residual < 1e-8 && yes2.verdict &&
                      yes2.max_residual < 1e-8 && !no.verdict && no.max_residual > 1e-2 &&
                      entry_err < 1e-5;
    report(4, "Vaisman dichotomy and closed-form Lee derivative", pass,
           "const residual " + num(std::max(yes.max_residual, yes2.max_residual)) +
               ", trig residual " + num(no.max_residual) + ", entry error " + num(entry_err));
}

void criterion5() {
    const ToleranceConfig tol;
    PeriodOracleOptions opts;
    opts.t_max = 100.0;

    auto make = [](ExactTag ratio, double ratio_val, double log_beta, ExactTag aa, double aav,
                   ExactTag ab, double abv) {
        return HopfParams::from_exact(ratio, ratio_val, log_beta, aa, aav, ab, abv);
    };
    const ExactTag irr = ExactTag::irrational();
    const double golden = 0.61803398874989485;

    // six parameter sets with every leaf closed, six with a dense leaf
    // inside the horizon
    const std::vector<HopfParams> battery = {
        make(rat(2, 1), 0, pi, rat(0, 1), 0, rat(0, 1), 0),
        exact2i_2(),
        make(rat(5, 3), 0, 3.0, rat(0, 1), 0, rat(0, 1), 0),
        make(rat(2, 1), 0, 1.0, rat(3, 5), 0, rat(-2, 7), 0),
        make(rat(1, 1), 0, two_pi, rat(1, 3), 0, rat(1, 3), 0),
        exact4_2(),
        make(irr, std::sqrt(2.0), 1.0, rat(0, 1), 0, rat(0, 1), 0),
        make(irr, std::sqrt(3.0), 1.0, irr, golden, rat(0, 1), 0),
        make(rat(1, 1), 0, 1.0, irr, std::sqrt(2.0) - 1.0, rat(0, 1), 0),
        make(rat(3, 2), 0, 1.0, irr, golden, rat(1, 3), 0),
        make(irr, 1.0 + 1.0 / std::sqrt(2.0), 1.0, irr, std::sqrt(7.0) - 2.0, irr,
             (std::sqrt(3.0) - 1.0) / 2.0),
        make(irr, std::sqrt(5.0), 1.0, rat(1, 2), 0, rat(0, 1), 0),
    };

    bool pass = true;
    std::string detail;
    int compact_sets = 0, dense_sets = 0;
    for (std::size_t i = 0; i < battery.size(); ++i) {
        const HopfParams& P = battery[i];
        bool set_all_compact = true;
        for (FoliationKind kind : {FoliationKind::LeeFlow, FoliationKind::AntiLeeFlow}) {
            const auto cls = classify_leaf(P, generic_point(), kind, tol);
            const auto oracle = period_oracle(P, generic_point(), kind, opts);
            if (cls.leaf.compact()) {
                if (!oracle || std::abs(*oracle - cls.leaf.period) > 1e-5 * (1 + cls.leaf.period)) {
                    pass = false;
                    detail = "set " + std::to_string(i) + " compact verdict not confirmed";
                }
            } else {
                set_all_compact = false;
                if (oracle) {
                    pass = false;
                    detail = "set " + std::to_string(i) + " dense verdict has period " +
                             num(*oracle);
                }
            }
        }
        (set_all_compact ? compact_sets : dense_sets) += 1;
    }
    if (compact_sets < 6 || dense_sets < 6) {
        pass = false;
        detail = "battery split " + std::to_string(compact_sets) + "/" +
                 std::to_string(dense_sets);
    }

    // knot winding counts for every lowest-terms type with |p|, |q| <= 7
    for (long long p = -7; p <= 7 && pass; ++p) {
        for (long long q = 1; q <= 7 && pass; ++q) {
            if (p == 0 || std::gcd(std::llabs(p), q) != 1) continue;
            const HopfParams P =
                make(rat(1, 1), 0, 1.0, rat(p, 9), 0, rat(q, 9), 0);
            const auto type = knot_type(P, FoliationKind::LeeFlow, tol);
            if (!type || !(*type == Rational(p, q))) {
                pass = false;
                detail = "knot type mismatch";
                break;
            }
            const Rational pa(p, 9), qa(q, 9);
            const Rational T = rational_lcm(Rational(pa.den, std::llabs(pa.num)),
                                            Rational(qa.den, std::llabs(qa.num)));
            const double period = T.value();
            const double w1 = P.arg_alpha() * period / pi;
            const double w2 = P.arg_beta() * period / pi;
            const long long i1 = std::llround(w1), i2 = std::llround(w2);
            const long long g = std::gcd(std::llabs(i1), std::llabs(i2));
            if (std::abs(w1 - i1) > 1e-9 || std::abs(w2 - i2) > 1e-9 || g == 0 ||
                std::llabs(i1) / g != std::llabs(type->num) || std::llabs(i2) / g != type->den) {
                pass = false;
                detail = "winding mismatch for " + Rational(p, q).str();
            }
        }
    }
    report(5, "leaf classification agrees with the period oracle", pass,
           pass ? "12 sets, horizon 100; windings up to 7/7" : detail);
}

void criterion6() {
    const ToleranceConfig tol;
    bool pass = true;
    std::string detail = "v, w, v+w periods; halves rejected";
    for (const HopfParams& P : {exact4_2(), exact2i_2()}) {
        const Lattice L = leaf_lattice(P, tol);
        for (int i = 0; i < 10; ++i) {
            const double u = 0.25 + 0.5 * halton(static_cast<std::uint64_t>(i), 3);
            const FramePoint p0(two_pi * halton(static_cast<std::uint64_t>(i), 2),
                                std::polar(std::sqrt(u), 1.0 + i),
                                std::polar(std::sqrt(1 - u), 2.0 - i));
            const double targets[3][2] = {{L.v[0], L.v[1]},
                                          {L.w[0], L.w[1]},
                                          {L.v[0] + L.w[0], L.v[1] + L.w[1]}};
            for (const auto& t : targets) {
                if (frame_distance(leaf_surface(P, p0, t[0], t[1]), p0) > 1e-9) {
                    pass = false;
                    detail = "lattice vector fails to return";
                }
            }
            const double halves[3][2] = {{L.v[0] / 2, L.v[1] / 2},
                                         {L.w[0] / 2, L.w[1] / 2},
                                         {(L.v[0] + L.w[0]) / 2, (L.v[1] + L.w[1]) / 2}};
            for (const auto& t : halves) {
                if (frame_distance(leaf_surface(P, p0, t[0], t[1]), p0) <= 0.1) {
                    pass = false;
                    detail = "half lattice vector is a period";
                }
            }
        }
    }
    report(6, "lattice generators certified, halves rejected", pass, detail);
}

void criterion7() {
    const ToleranceConfig tol;
    std::mt19937_64 rng(107);
    bool pass = true;
    std::string detail;
    double worst_spread = 0, worst_equiv = 0, worst_cover = 0;

    for (const HopfParams& P : {exact4_2(), exact2i_2()}) {
        const MonodromyData md = monodromy(P, tol);

        // axis values hit exactly
        const ProjectivePoint a1 = fibration_map(P, FramePoint(1.1, {1, 0}, {0, 0}), tol);
        const ProjectivePoint a2 = fibration_map(P, FramePoint(2.2, {0, 0}, {1, 0}), tol);
        if (!(a1.w0 == complexd{1, 0} && a1.w1 == complexd{0, 0} &&
              a2.w1 == complexd{1, 0} && a2.w0 == complexd{0, 0})) {
            pass = false;
            detail = "axis image not exact";
        }

        // leaf invariance, 100 samples per leaf
        for (int leaf = 0; leaf < 4; ++leaf) {
            const FramePoint p0 = random_point(rng);
            const ProjectivePoint base = fibration_map(P, p0, tol);
            for (int i = 0; i < 100; ++i) {
                const double t = std::uniform_real_distribution<double>(-10, 10)(rng);
                const double s = std::uniform_real_distribution<double>(-10, 10)(rng);
                worst_spread = std::max(
                    worst_spread,
                    fs_distance(base, fibration_map(P, leaf_surface(P, p0, t, s), tol)));
            }
        }

        // equivariance with [z1^m : z2^n]
        for (int i = 0; i < 100; ++i) {
            const FramePoint p = random_point(rng);
            const UniversalPoint z = to_universal(P, p);
            const ProjectivePoint via =
                ProjectivePoint::normalized(int_pow(z.z1, md.m), int_pow(z.z2, md.n));
            worst_equiv = std::max(worst_equiv, fs_distance(fibration_map(P, p, tol), via));
        }

        // coarse surjectivity: 64 x 64 x 16 samples vs a 32 x 32 target grid
        std::vector<ProjectivePoint> images;
        const int n_chi = 64, n_t1 = 64, n_t2 = 16;
        images.reserve(static_cast<std::size_t>(n_chi) * n_t1 * n_t2);
        for (int a = 0; a < n_chi; ++a) {
            const double chi = (pi / 2) * (a + 0.5) / n_chi;
            for (int b = 0; b < n_t1; ++b)
                for (int c = 0; c < n_t2; ++c)
                    images.push_back(fibration_map(
                        P,
                        FramePoint(0.0, std::polar(std::cos(chi), two_pi * b / n_t1),
                                   std::polar(std::sin(chi), two_pi * c / n_t2)),
                        tol));
        }
        for (int a = 0; a < 32; ++a) {
            const double psi = pi * (a + 0.5) / 32;
            for (int b = 0; b < 32; ++b) {
                const ProjectivePoint target = ProjectivePoint::normalized(
                    {std::cos(psi / 2), 0.0},
                    std::polar(std::sin(psi / 2), two_pi * b / 32));
                double best = 10;
                for (const auto& img : images) {
                    best = std::min(best, fs_distance(target, img));
                    if (best < 0.05) break;
                }
                worst_cover = std::max(worst_cover, best);
            }
        }
    }
    pass = pass && worst_spread < 1e-9 && worst_equiv < 1e-9 && worst_cover < 0.2;
    report(7, "elliptic fibration: leaf invariance, equivariance, coverage", pass,
           "spread " + num(worst_spread) + ", equivariance " + num(worst_equiv) +
               ", coverage gap " + num(worst_cover));
}

void criterion8() {
    const ToleranceConfig tol;
    const ExactTag irr = ExactTag::irrational();
    auto make = [](ExactTag ratio, double rv, double lb, ExactTag aa, double aav, ExactTag ab,
                   double abv) {
        return HopfParams::from_exact(ratio, rv, lb, aa, aav, ab, abv);
    };

    struct Case {
        HopfParams params;
        bool regular;
        bool quasi;
        long long m, n;
    };
    const std::vector<Case> battery = {
        {make(rat(1, 1), 0, std::log(2.0), rat(0, 1), 0, rat(0, 1), 0), true, true, 1, 1},
        {make(rat(1, 1), 0, std::log(2.0), rat(1, 2), 0, rat(1, 2), 0), true, true, 1, 1},
        {exact4_2(), false, true, 1, 2},
        {exact2i_2(), false, true, 4, 4},
        {make(rat(2, 1), 0, pi, rat(0, 1), 0, rat(0, 1), 0), false, true, 1, 2},
        {make(irr, std::sqrt(2.0), 1.0, rat(0, 1), 0, rat(0, 1), 0), false, false, 0, 0},
        {make(rat(1, 1), 0, 1.0, irr, 0.61803398874989485, rat(0, 1), 0), false, false, 0, 0},
        {make(rat(2, 1), 0, 1.0, rat(0, 1), 0, irr, 0.41421356237309515), false, false, 0, 0},
    };

    bool pass = true;
    std::string detail = "8 parameter sets";
    for (std::size_t i = 0; i < battery.size(); ++i) {
        const auto& c = battery[i];
        const OrbifoldData orb = regularity(c.params, tol);
        bool ok = orb.regular == c.regular && orb.quasi_regular == c.quasi;
        if (c.quasi) {
            ok = ok && orb.cone_orders.has_value() && orb.cone_orders->first == c.m &&
                 orb.cone_orders->second == c.n && orb.multiplicity_xi2_axis == c.m &&
                 orb.multiplicity_xi1_axis == c.n;
        } else {
            ok = ok && !orb.cone_orders.has_value();
        }
        if (!ok) {
            pass = false;
            detail = "set " + std::to_string(i) + " misclassified";
        }
    }
    report(8, "regular iff alpha = beta; quasi-regular iff elliptic", pass, detail);
}

void criterion9() {
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> base(1.5, 3.0);
    std::uniform_real_distribution<double> amp(-0.4, 0.4);
    double worst = 0;
    for (int trial = 0; trial < 5; ++trial) {
        const double a0 = base(rng);
        const double c1 = amp(rng), s1 = amp(rng), c2 = amp(rng) / 2, s2 = amp(rng) / 2;
        auto h = [=](double th) {
            return a0 + c1 * std::cos(th) + s1 * std::sin(th) + c2 * std::cos(2 * th) +
                   s2 * std::sin(2 * th);
        };
        const auto traj = integrate_potential(h, 0.0, h(0.0), 0.0, two_pi);
        if (traj.blew_up) {
            worst = 1.0;
            break;
        }
        for (double r : potential_residuals(traj, h)) worst = std::max(worst, r);
    }

    auto h2 = [](double) { return 2.0; };
    const auto traj = integrate_potential(h2, 0.0, 2.0, 0.0, two_pi);
    double closed_form = 0;
    for (const auto& s : traj.samples)
        closed_form = std::max(closed_form, std::abs(s.L - 2.0 * s.theta));

    report(9, "potential ODE residuals and constant closed form",
           worst < 1e-8 && closed_form < 1e-8,
           "max residual " + num(worst) + ", closed form " + num(closed_form));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion10(const std::string& cli) {
    auto run = [&cli](const std::string& args) {
        const std::string cmd = cli + " " + args + " 2>/dev/null";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };

    bool pass = true;
    std::string detail = "byte-identical reruns; exit codes 2..7";

    // determinism: identical inputs -> identical bytes
    const struct {
        const char* args;
        const char* out_a;
        const char* out_b;
    } runs[] = {
        {"classify --alpha 2i --beta 2", "acc_classify_a.json", "acc_classify_b.json"},
        {"leaf --alpha 2i --beta 2 --kind anti-lee --samples 257 --format svg "
         "--project torus-angles",
         "acc_leaf_a.svg", "acc_leaf_b.svg"},
        {"leaf --alpha 2i --beta 2 --kind lee --samples 129 --format csv --project stereo",
         "acc_leaf_a.csv", "acc_leaf_b.csv"},
    };
    for (const auto& r : runs) {
        const int e1 = run(std::string(r.args) + " -o " + r.out_a);
        const int e2 = run(std::string(r.args) + " -o " + r.out_b);
        const std::string a = read_file(r.out_a), b = read_file(r.out_b);
        if (e1 != 0 || e2 != 0 || a.empty() || a != b) {
            pass = false;
            detail = std::string("rerun of '") + r.args + "' not byte-identical";
        }
        std::remove(r.out_a);
        std::remove(r.out_b);
    }

    // exit-code contract
    const struct {
        const char* args;
        int expect;
    } codes[] = {
        {"classify --alpha 0.5 --beta 2 -o /dev/null", 2},
        {"leaf --alpha 4 --beta 2 --point 0,0,0,0,0 -o /dev/null", 2},
        {"classify --alpha 4 --beta 2 --log-mod-ratio 3/1 -o /dev/null", 3},
        {"verify --alpha 4 --beta 2 --h const:-1 -o /dev/null", 4},
        {"leaf --alpha 4 --beta 2 --project bogus -o /dev/null", 5},
        {"fibrate --log-mod-ratio irr -o /dev/null", 6},
        {"solve-potential --h const:2 --v0 1e-12 -o /dev/null", 7},
    };
    for (const auto& c : codes) {
        const int got = run(c.args);
        if (got != c.expect) {
            pass = false;
            detail = std::string("expected exit ") + std::to_string(c.expect) + " from '" +
                     c.args + "', got " + std::to_string(got);
        }
    }
    report(10, "CLI determinism and exit-code contract", pass, detail);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli>\n";
        return 2;
    }
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10(argv[1]);

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}

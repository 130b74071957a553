// hopflck: command-line surface for the Hopf-surface conformal-Kahler
// library. Subcommands: classify, verify, leaf, fibrate, solve-potential.
//
// Exit codes (stable contract for scripting):
//   0 success
//   2 parameter or point violation
//   3 inconsistent exact data
//   4 non-positive h profile
//   5 unknown projection
//   6 not elliptic
//   7 potential ODE blow-up

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hopf/cli_io.hpp"

namespace {

struct CommonArgs {
    hopf::ParamCliInput params;
    double tol = 0;          // 0 = keep default residual_tol
    long long max_den = 0;   // 0 = keep default
    bool seedless = false;
    std::string output = "-";
};

void add_param_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--alpha", args.params.alpha, "alpha as a+bi decimal literal");
    cmd->add_option("--beta", args.params.beta, "beta as a+bi decimal literal");
    cmd->add_option("--log-mod-ratio", args.params.log_mod_ratio,
                    "log||alpha||/log||beta|| as N/D, irr, or irr:<float>");
    cmd->add_option("--log-mod-beta", args.params.log_mod_beta, "log||beta|| (exact mode)");
    cmd->add_option("--arg-alpha-pi", args.params.arg_alpha_pi,
                    "arg(alpha)/pi as N/D, irr, or irr:<float>");
    cmd->add_option("--arg-beta-pi", args.params.arg_beta_pi,
                    "arg(beta)/pi as N/D, irr, or irr:<float>");
    cmd->add_option("--tol", args.tol, "residual tolerance override");
    cmd->add_option("--max-denominator", args.max_den, "rational recognition bound");
    cmd->add_flag("--seedless", args.seedless, "grid sampling instead of the Halton sweep");
    cmd->add_option("--output,-o", args.output, "output path, - for stdout");
}

hopf::ToleranceConfig tolerances_of(const CommonArgs& args) {
    hopf::ToleranceConfig tol;
    if (args.tol > 0) tol.residual_tol = args.tol;
    if (args.max_den > 0) tol.max_denominator = args.max_den;
    tol.validate();
    return tol;
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hopf::DomainError("cannot open output file: " + path);
    out << content;
}

int run(int argc, char** argv) {
    CLI::App app{"locally conformal Kahler geometry of class-1 Hopf surfaces"};
    app.require_subcommand(1);

    CommonArgs classify_args;
    auto* cmd_classify = app.add_subcommand("classify", "foliation and fibration report");
    add_param_flags(cmd_classify, classify_args);

    CommonArgs verify_args;
    std::string verify_h = "const:2";
    int verify_samples = 200;
    auto* cmd_verify = app.add_subcommand("verify", "metric identity verification sweep");
    cmd_verify->set_help_flag("--help", "print help");
    add_param_flags(cmd_verify, verify_args);
    cmd_verify->add_option("--h", verify_h, "metric profile: const:<v> or fourier:<a0,c1,s1,...>");
    cmd_verify->add_option("--samples", verify_samples, "sample count");

    CommonArgs leaf_args;
    std::string leaf_kind = "anti-lee";
    std::string leaf_point = "0,0.8,0,0.6,0";
    std::string leaf_project = "torus-angles";
    std::string leaf_format = "csv";
    int leaf_samples = 512;
    double leaf_tmax = hopf::two_pi;
    auto* cmd_leaf = app.add_subcommand("leaf", "trace one leaf to CSV or SVG");
    add_param_flags(cmd_leaf, leaf_args);
    cmd_leaf->add_option("--kind", leaf_kind, "kernel | lee | anti-lee | plane");
    cmd_leaf->add_option("--point", leaf_point, "theta,re1,im1,re2,im2");
    cmd_leaf->add_option("--samples", leaf_samples, "sample count");
    cmd_leaf->add_option("--t-max", leaf_tmax, "parameter range");
    cmd_leaf->add_option("--project", leaf_project, "stereo | torus-angles");
    cmd_leaf->add_option("--format", leaf_format, "csv | svg");

    CommonArgs fib_args;
    std::string fib_point = "0,0.8,0,0.6,0";
    auto* cmd_fibrate = app.add_subcommand("fibrate", "evaluate the elliptic fibration");
    add_param_flags(cmd_fibrate, fib_args);
    cmd_fibrate->add_option("--point", fib_point, "theta,re1,im1,re2,im2");

    CommonArgs pot_args;
    std::string pot_h = "const:2";
    double pot_theta0 = 0.0, pot_v0 = 1.0;
    std::string pot_span = "0:6.283185307179586";
    int pot_samples = 2049;
    auto* cmd_pot = app.add_subcommand("solve-potential", "integrate the potential profile");
    cmd_pot->set_help_flag("--help", "print help");
    add_param_flags(cmd_pot, pot_args);
    cmd_pot->add_option("--h", pot_h, "profile: const:<v> or fourier:<a0,c1,s1,...>");
    cmd_pot->add_option("--theta0", pot_theta0, "initial angle");
    cmd_pot->add_option("--v0", pot_v0, "initial L' (must be positive)")->required();
    cmd_pot->add_option("--span", pot_span, "integration interval lo:hi");
    cmd_pot->add_option("--samples", pot_samples, "output grid points");

    CLI11_PARSE(app, argc, argv);

    if (cmd_classify->parsed()) {
        const auto tol = tolerances_of(classify_args);
        classify_args.params.rational_tol = tol.rational_tol;
        const hopf::HopfParams params = hopf::params_from_cli(classify_args.params);
        const hopf::json report = hopf::classify_report(params, tol);
        write_output(classify_args.output, report.dump(2) + "\n");
        return 0;
    }

    if (cmd_verify->parsed()) {
        const auto tol = tolerances_of(verify_args);
        verify_args.params.rational_tol = tol.rational_tol;
        const hopf::HopfParams params = hopf::params_from_cli(verify_args.params);
        const hopf::HSpec h = hopf::parse_hspec(verify_h);
        const hopf::json report =
            hopf::verify_report(params, h, verify_samples, tol, verify_args.seedless);
        write_output(verify_args.output, report.dump(2) + "\n");
        return 0;
    }

    if (cmd_leaf->parsed()) {
        const auto tol = tolerances_of(leaf_args);
        leaf_args.params.rational_tol = tol.rational_tol;
        const hopf::HopfParams params = hopf::params_from_cli(leaf_args.params);
        hopf::FoliationKind kind;
        if (leaf_kind == "kernel") kind = hopf::FoliationKind::KernelLee;
        else if (leaf_kind == "lee") kind = hopf::FoliationKind::LeeFlow;
        else if (leaf_kind == "anti-lee") kind = hopf::FoliationKind::AntiLeeFlow;
        else if (leaf_kind == "plane") kind = hopf::FoliationKind::LeeAntiLeePlane;
        else throw hopf::DomainError("kind: expected kernel, lee, anti-lee or plane");
        if (leaf_format != "csv" && leaf_format != "svg")
            throw hopf::DomainError("format: expected csv or svg");

        const hopf::FramePoint p0 = hopf::parse_point(leaf_point);
        hopf::LeafTrace trace =
            hopf::trace_leaf(params, p0, kind, leaf_samples, leaf_tmax, leaf_project);
        trace.csv.comments.insert(trace.csv.comments.begin(),
                                  {hopf::params_echo_line(params),
                                   hopf::tolerances_echo_line(tol)});
        trace.svg.desc =
            hopf::params_echo_line(params) + "; " + hopf::tolerances_echo_line(tol);
        write_output(leaf_args.output, leaf_format == "csv" ? hopf::render_csv(trace.csv)
                                                            : hopf::render_svg(trace.svg));
        return 0;
    }

    if (cmd_fibrate->parsed()) {
        const auto tol = tolerances_of(fib_args);
        fib_args.params.rational_tol = tol.rational_tol;
        const hopf::HopfParams params = hopf::params_from_cli(fib_args.params);
        const hopf::FramePoint p0 = hopf::parse_point(fib_point);
        const hopf::ProjectivePoint base = hopf::fibration_map(params, p0, tol);

        double spread = 0;
        for (int i = 0; i < 16; ++i) {
            const double t = 0.37 * (i + 1);
            const double s = 0.23 * (i + 1);
            const hopf::ProjectivePoint q =
                hopf::fibration_map(params, hopf::leaf_surface(params, p0, t, s), tol);
            spread = std::max(spread, hopf::fs_distance(base, q));
        }
        auto fmt_complex = [](const hopf::complexd& z) {
            const std::string im = hopf::format_double(std::abs(z.imag()));
            return hopf::format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
        };
        const std::string text = "[" + fmt_complex(base.w0) + " : " + fmt_complex(base.w1) +
                                 "]\n" + "fs_spread_16_leaf_samples " +
                                 hopf::format_double(spread) + "\n" +
                                 hopf::params_echo_line(params) + "\n" +
                                 hopf::tolerances_echo_line(tol) + "\n";
        write_output(fib_args.output, text);
        return 0;
    }

    // solve-potential
    const auto pot_tol = tolerances_of(pot_args);
    const hopf::HSpec h = hopf::parse_hspec(pot_h);
    const auto sep = pot_span.find(':');
    if (sep == std::string::npos) throw hopf::DomainError("span: expected lo:hi");
    const double lo = hopf::parse_double(pot_span.substr(0, sep), "span");
    const double hi = hopf::parse_double(pot_span.substr(sep + 1), "span");

    hopf::PotentialOptions opts;
    opts.grid_points = pot_samples;
    const hopf::PotentialTrajectory traj = hopf::integrate_potential(
        [&h](double th) { return h.eval(th); }, pot_theta0, pot_v0, lo, hi, opts);
    const std::vector<double> residuals =
        hopf::potential_residuals(traj, [&h](double th) { return h.eval(th); });

    hopf::CsvTable table;
    table.comments.push_back("h=" + pot_h + " theta0=" + hopf::format_double(pot_theta0) +
                             " v0=" + hopf::format_double(pot_v0) + " span=" + pot_span);
    table.comments.push_back(hopf::tolerances_echo_line(pot_tol));
    table.header = {"theta", "L", "Lp", "Lpp", "residual", "blow_up"};
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        table.rows.push_back({s.theta, s.L, s.Lp, s.Lpp, residuals[i], traj.blew_up ? 1.0 : 0.0});
    }
    if (traj.blew_up)
        table.comments.push_back("blow-up: L' left the positivity window at theta = " +
                                 hopf::format_double(traj.blow_up_theta));
    write_output(pot_args.output, hopf::render_csv(table));
    return traj.blew_up ? 7 : 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hopf::InconsistentExactData& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hopf::NonPositiveProfile& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const hopf::NotElliptic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const hopf::DomainError& e) {
        const std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        if (what.rfind("projection:", 0) == 0) return 5;
        return 2;
    } catch (const hopf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

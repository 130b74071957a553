#ifndef HOPF_CLI_IO_HPP
#define HOPF_CLI_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "hopf/fibration.hpp"
#include "hopf/metrics.hpp"

namespace hopf {

using json = nlohmann::ordered_json;

/// "a+bi" decimal literals, including "2", "-1.5-0.5i", "2i", "i".
complexd parse_complex(const std::string& text);

/// "N/D", "N", "irr" or "irr:<float>"; the float payload (or the
/// documented default) backs declared irrationals numerically.
struct ExactInput {
    ExactTag tag;
    double payload = 0;
};
ExactInput parse_exact_input(const std::string& text, double irr_default);

/// "const:V" or "fourier:a0,c1,s1,c2,s2,..." (cos/sin coefficients).
HSpec parse_hspec(const std::string& text);

/// "theta,re1,im1,re2,im2".
FramePoint parse_point(const std::string& text);

/// Raw parameter flags as received from the command line.
struct ParamCliInput {
    std::string alpha, beta;                  // floating mode
    std::string log_mod_ratio;                // exact mode
    double log_mod_beta = 1.0;
    std::string arg_alpha_pi, arg_beta_pi;
    double rational_tol = 1e-9;
};

/// Resolves floating / exact / mixed parameter input. Throws DomainError
/// on malformed or out-of-range values, InconsistentExactData on a
/// float/declaration mismatch.
HopfParams params_from_cli(const ParamCliInput& in);

double parse_double(const std::string& text, const char* what);

std::string format_double(double v);  // %.17g, locale-independent

json params_json(const HopfParams& params);
json tolerances_json(const ToleranceConfig& tol);
json leaf_json(const LeafClassification& c);

/// Full classification document: per-foliation leaf classes at a generic
/// probe point and on both axes, elliptic witness, monodromy, orbifold
/// data, parameter echo.
json classify_report(const HopfParams& params, const ToleranceConfig& tol);

/// Verification document: conformal-Kahler residuals, Vaisman verdict,
/// Lee duality and J-invariance sweeps.
json verify_report(const HopfParams& params, const HSpec& h, int samples,
                   const ToleranceConfig& tol, bool grid_sampling);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments; // emitted before the header as "# ..."
};

std::string render_csv(const CsvTable& table);

/// Polyline segments in the plane, already split at wrap-arounds.
struct SvgFigure {
    double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
    std::vector<std::vector<std::array<double, 2>>> polylines;
    std::vector<std::array<double, 2>> points;
    std::string note;
    std::string desc; // metadata echo, emitted as a <desc> element
};

/// One-line echo of the resolved parameters and tolerances, used in CSV
/// comments and SVG metadata.
std::string params_echo_line(const HopfParams& params);
std::string tolerances_echo_line(const ToleranceConfig& tol);

std::string render_svg(const SvgFigure& fig);

/// Leaf sampling for the leaf subcommand; kind selects curve vs surface.
struct LeafTrace {
    CsvTable csv;
    SvgFigure svg;
};

LeafTrace trace_leaf(const HopfParams& params, const FramePoint& p0, FoliationKind kind,
                     int samples, double t_max, const std::string& projection);

} // namespace hopf

#endif

#ifndef HOPF_FRAME_HPP
#define HOPF_FRAME_HPP

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "hopf/numerics.hpp"

namespace hopf {

using complexd = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Exactness declaration for one real quantity used in classification.
/// A declared irrational is treated as rationally independent of pi and
/// of every other declared irrational.
struct ExactTag {
    enum class Kind { Absent, RationalValue, Irrational } kind = Kind::Absent;
    Rational value{}; // meaningful only for RationalValue

    static ExactTag absent() { return {}; }
    static ExactTag rational(Rational r) { return {Kind::RationalValue, r}; }
    static ExactTag irrational() { return {Kind::Irrational, {}}; }

    bool is_rational() const { return kind == Kind::RationalValue; }
    bool is_irrational() const { return kind == Kind::Irrational; }
    bool declared() const { return kind != Kind::Absent; }
};

/// The pair (alpha, beta) with ||alpha|| >= ||beta|| > 1, optionally
/// carrying exact declarations for log||alpha||/log||beta|| and for the
/// two arguments in units of pi. Floating values drive all numerics;
/// the declarations drive certified classification.
struct HopfParams {
    complexd alpha;
    complexd beta;
    ExactTag log_ratio;    // log||alpha|| / log||beta||
    ExactTag arg_alpha_pi; // arg(alpha) / pi, normalized to (-1, 1]
    ExactTag arg_beta_pi;  // arg(beta) / pi

    static HopfParams from_complex(complexd alpha, complexd beta);

    /// Builds the floating pair from exact data. Rational tags carry the
    /// value; irrational tags take their floating payload from
    /// log_ratio_value / arg values (in pi units).
    static HopfParams from_exact(ExactTag log_ratio, double log_ratio_value, double log_mod_beta,
                                 ExactTag arg_alpha_pi, double arg_alpha_pi_value,
                                 ExactTag arg_beta_pi, double arg_beta_pi_value);

    /// Attaches declarations to an existing floating pair, rejecting
    /// declarations farther than rational_tol from the floats.
    static HopfParams from_complex_with_exact(complexd alpha, complexd beta, ExactTag log_ratio,
                                              ExactTag arg_alpha_pi, ExactTag arg_beta_pi,
                                              double rational_tol = 1e-9);

    double log_mod_alpha() const { return std::log(std::abs(alpha)); }
    double log_mod_beta() const { return std::log(std::abs(beta)); }
    double arg_alpha() const { return std::arg(alpha); }
    double arg_beta() const { return std::arg(beta); }
    complexd log_alpha() const { return {log_mod_alpha(), arg_alpha()}; }
    complexd log_beta() const { return {log_mod_beta(), arg_beta()}; }
    bool exact_mode() const {
        return log_ratio.declared() && arg_alpha_pi.declared() && arg_beta_pi.declared();
    }
};

/// Point of S^1 x S^3; theta stored reduced to [0, 2pi), (xi1, xi2)
/// renormalized onto the unit sphere on construction.
struct FramePoint {
    double theta = 0;
    complexd xi1{1, 0};
    complexd xi2{0, 0};

    FramePoint() = default;
    FramePoint(double theta_, complexd xi1_, complexd xi2_);
};

/// Point of the universal cover C^2 \ 0.
struct UniversalPoint {
    complexd z1;
    complexd z2;
};

/// Tangent vector in the parallelization basis (e1..e4).
struct FrameVector {
    std::array<double, 4> c{0, 0, 0, 0};
};

/// Covector on the dual coframe (e^1..e^4).
struct FrameCovector {
    std::array<double, 4> w{0, 0, 0, 0};
    double operator()(const FrameVector& v) const {
        return w[0] * v.c[0] + w[1] * v.c[1] + w[2] * v.c[2] + w[3] * v.c[3];
    }
};

/// Coordinates over the complex basis (e2, e3): X = u . e2 + v . e3 with
/// complex scaling i . Y = J Y.
struct ComplexCoords {
    complexd u;
    complexd v;
};

/// Ambient expression of a tangent vector: theta rate plus d(xi1, xi2).
struct AmbientVector {
    double dtheta = 0;
    complexd dxi1{0, 0};
    complexd dxi2{0, 0};
};

/// Image of a tangent vector under the covering differential, in the
/// coordinates (z1, z2) of C^2.
struct UniversalVector {
    complexd dz1;
    complexd dz2;
};

/// The parallelization at p: e1 the unit theta-translation, e2 = iQ,
/// e3 = jQ, e4 = kQ with Q = xi1 + j conj(xi2) read as a unit quaternion.
std::array<AmbientVector, 4> frame_fields(const FramePoint& p);

/// Exact integral curve of e_{index} through p for time t.
FramePoint frame_flow(const FramePoint& p, int index, double t);

/// Constant structure brackets: [e2,e3] = -2 e4, [e2,e4] = 2 e3,
/// [e3,e4] = -2 e2, all brackets with e1 zero.
FrameVector frame_bracket(int i, int j);

/// Covering map on R x S^3 (theta unreduced).
UniversalPoint to_universal(const HopfParams& params, double theta, complexd xi1, complexd xi2);
UniversalPoint to_universal(const HopfParams& params, const FramePoint& p);

struct FromUniversalResult {
    FramePoint point;
    double theta_unreduced = 0;
};

/// Inverse of the covering map: theta solves
/// ||z1||^2 x^{log||alpha||} + ||z2||^2 x^{log||beta||} = 1 with
/// x = e^{-theta/pi}.
FromUniversalResult from_universal(const HopfParams& params, const UniversalPoint& z,
                                   double root_tol = 1e-14);

/// ||xi1||^2 log(alpha) + ||xi2||^2 log(beta); real part >= log||beta|| > 0.
complexd log_average(const HopfParams& params, const FramePoint& p);

/// The 4x4 matrix of the complex structure in the frame basis
/// (columns J e1 .. J e4).
std::array<std::array<double, 4>, 4> complex_structure_matrix(const HopfParams& params,
                                                              const FramePoint& p);

FrameVector apply_complex_structure(const HopfParams& params, const FramePoint& p,
                                    const FrameVector& v);

/// Coordinates of v over (e2, e3); solves the real 4x4 system with
/// columns (e2, J e2, e3, J e3). Throws SingularBasis if degenerate.
ComplexCoords to_complex_coords(const HopfParams& params, const FramePoint& p,
                                const FrameVector& v);

FrameVector from_complex_coords(const HopfParams& params, const FramePoint& p,
                                const ComplexCoords& cc);

/// Differential of the covering map applied to a frame vector.
UniversalVector push_forward(const HopfParams& params, const FramePoint& p, const FrameVector& v);

/// Central difference of a scalar field along the exact frame flow.
double directional_derivative(const std::function<double(const FramePoint&)>& f, int index,
                              const FramePoint& p, double step);

/// Fourth-order variant used where the O(step^2) stencil is too coarse.
double directional_derivative4(const std::function<double(const FramePoint&)>& f, int index,
                               const FramePoint& p, double step);

/// Frame vector as an ambient velocity.
AmbientVector to_ambient(const FramePoint& p, const FrameVector& v);

/// max of angular distance on theta and chordal distance on (xi1, xi2).
double frame_distance(const FramePoint& a, const FramePoint& b);

} // namespace hopf

#endif

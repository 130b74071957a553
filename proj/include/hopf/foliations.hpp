#ifndef HOPF_FOLIATIONS_HPP
#define HOPF_FOLIATIONS_HPP

#include <optional>
#include <string>

#include "hopf/frame.hpp"

namespace hopf {

/// The four canonical foliations: kernel of the Lee form, Lee flow,
/// anti-Lee flow, and the plane field they span.
enum class FoliationKind { KernelLee, LeeFlow, AntiLeeFlow, LeeAntiLeePlane };

std::string foliation_name(FoliationKind kind);

/// Integer certificate behind a compact surface leaf; p_prime / q_prime
/// follow the parity rule and may be half-integers when p is even.
struct LatticeCertificate {
    long long l = 1, k = 1; // log||alpha||/log||beta|| = l/k, coprime
    long long p = 0, q = 1; // (k arg(alpha) - l arg(beta))/pi = p/q, coprime
    Rational p_prime{0, 1};
    Rational q_prime{1, 2};
    long long b = 1, lattice_c = 0; // b*k - lattice_c*l = 1, lattice_c minimal >= 0
};

/// Period lattice of a compact surface leaf in the (t, s) parameter plane.
struct Lattice {
    std::array<double, 2> v{0, 0};
    std::array<double, 2> w{0, 0};
    std::optional<LatticeCertificate> certificate;
};

/// Minimal positive integers with alpha^m = beta^n.
struct EllipticWitness {
    long long m = 1;
    long long n = 1;
};

/// Resolved elliptic certificate shared by classification and the
/// fibration: log||alpha||/log||beta|| = l/k and
/// (k arg(alpha) - l arg(beta))/pi = p/q in lowest terms, minimal (m, n)
/// with alpha^m = beta^n, and the integer c with
/// m arg(alpha) = n arg(beta) + 2 pi c.
struct EllipticData {
    bool elliptic = false;
    bool certified = false;
    long long l = 1, k = 1, p = 0, q = 1;
    long long m = 1, n = 1, c = 0;
};

EllipticData elliptic_data(const HopfParams& params, const ToleranceConfig& tol = {});

/// Classification of one leaf.
struct LeafClass {
    enum class Kind {
        Sphere3Slice,
        CircleCompact,
        DenseInAxisTorus,
        ToralKnot,
        DenseIn2Torus,
        CompactTorus,
        DenseIn3Torus
    } kind = Kind::Sphere3Slice;
    double period = 0;            // CircleCompact, ToralKnot
    std::optional<Rational> type; // ToralKnot winding ratio, lowest terms
    std::optional<Lattice> lattice; // CompactTorus

    bool compact() const {
        return kind == Kind::Sphere3Slice || kind == Kind::CircleCompact ||
               kind == Kind::ToralKnot || kind == Kind::CompactTorus;
    }
    std::string kind_name() const;
};

struct LeafClassification {
    LeafClass leaf;
    bool certified = false;  // true only for exact-mode parameters
    bool on_axis = false;    // xi1 xi2 = 0 at the base point
    std::string qualifier;   // "exact mode" or the tolerance note
};

/// Integral curve of the Lee vector field:
/// theta -> theta - 4 pi t, xi_i -> xi_i e^{2 i t arg(.)}.
FramePoint flow_lee(const HopfParams& params, const FramePoint& p0, double t);

/// Integral curve of the anti-Lee field: theta fixed,
/// xi_i -> xi_i e^{-2 i s log||.||}.
FramePoint flow_anti_lee(const HopfParams& params, const FramePoint& p0, double s);

/// Parametrization of the plane-field leaf through p0; equals the
/// composition of the two (commuting) flows.
FramePoint leaf_surface(const HopfParams& params, const FramePoint& p0, double t, double s);

/// Full leaf classification. Exact-mode parameters give certified
/// verdicts; floating parameters are resolved through continued-fraction
/// recognition and tagged "within tolerance".
LeafClassification classify_leaf(const HopfParams& params, const FramePoint& p0,
                                 FoliationKind kind, const ToleranceConfig& tol = {});

/// Winding ratio of the projected leaf: arg(alpha)/arg(beta) for the Lee
/// flow, log||alpha||/log||beta|| for the anti-Lee flow. Empty when the
/// ratio is degenerate or not (certifiably) rational.
std::optional<Rational> knot_type(const HopfParams& params, FoliationKind kind,
                                  const ToleranceConfig& tol = {});

/// Lattice of the generic plane-field leaf; requires the elliptic
/// certificate and self-checks both generators through leaf_surface.
Lattice leaf_lattice(const HopfParams& params, const ToleranceConfig& tol = {});

/// Minimal (m, n) with alpha^m = beta^n, if certified.
std::optional<EllipticWitness> elliptic_witness(const HopfParams& params,
                                                const ToleranceConfig& tol = {});

struct PeriodOracleOptions {
    double t_max = 100.0;
    double grid_step = 2e-4;
    double tol = 1e-6;
};

/// Brute-force search for the smallest t in (0, t_max] returning the flow
/// to its start within tol: grid scan for candidate minima, each refined
/// by bisection on the descent direction.
std::optional<double> period_oracle(const HopfParams& params, const FramePoint& p0,
                                    FoliationKind kind, const PeriodOracleOptions& opts = {});

} // namespace hopf

#endif

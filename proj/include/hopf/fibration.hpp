#ifndef HOPF_FIBRATION_HPP
#define HOPF_FIBRATION_HPP

#include <array>
#include <optional>

#include "hopf/foliations.hpp"

namespace hopf {

/// Minimal monodromy data of the elliptic fibration:
/// m arg(alpha) = n arg(beta) + 2 pi c with gcd(m, n, c) = 1.
struct MonodromyData {
    long long m = 1;
    long long n = 1;
    long long monodromy_c = 0;
};

/// Point of CP^1 normalized so the larger-modulus entry equals 1 exactly
/// (making outputs bitwise comparable across runs).
struct ProjectivePoint {
    complexd w0{1, 0};
    complexd w1{0, 0};

    static ProjectivePoint normalized(complexd a, complexd b);
};

/// Fubini-Study distance arccos(|<a,b>| / (||a|| ||b||)).
double fs_distance(const ProjectivePoint& a, const ProjectivePoint& b);

struct OrbifoldData {
    bool regular = false;
    bool quasi_regular = false;
    bool certified = false;
    std::optional<std::pair<long long, long long>> cone_orders; // (m, n)
    long long multiplicity_generic = 1;
    long long multiplicity_xi2_axis = 1; // leaves through (theta, 0, xi2)
    long long multiplicity_xi1_axis = 1; // leaves through (theta, xi1, 0)
};

/// Minimal (m, n, c); throws NotElliptic when alpha^m = beta^n fails.
MonodromyData monodromy(const HopfParams& params, const ToleranceConfig& tol = {});

/// The leaf-space map (theta, xi1, xi2) -> [e^{i theta c} xi1^m : xi2^n],
/// constant along plane-field leaves. Throws NotElliptic.
ProjectivePoint fibration_map(const HopfParams& params, const FramePoint& p,
                              const ToleranceConfig& tol = {});

/// Regular iff alpha = beta; quasi-regular iff elliptic; cone orders and
/// leaf multiplicities from the monodromy pair.
OrbifoldData regularity(const HopfParams& params, const ToleranceConfig& tol = {});

/// (x1, x2, x3) / (1 - x4); throws PoleExcluded at (0,0,0,1). The sphere
/// point is (Re xi1, Im xi1, Re xi2, Im xi2).
std::array<double, 3> stereographic_projection(const std::array<double, 4>& x);
std::array<double, 3> stereographic_projection(const complexd& xi1, const complexd& xi2);

} // namespace hopf

#endif

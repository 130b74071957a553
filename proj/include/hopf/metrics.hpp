#ifndef HOPF_METRICS_HPP
#define HOPF_METRICS_HPP

#include <array>
#include <vector>

#include "hopf/frame.hpp"

namespace hopf {

/// Strictly positive 2pi-periodic profile: a0 + sum_k (c_k cos k theta
/// + s_k sin k theta), with its analytic derivative. Positivity is
/// checked on a 4096-point grid at construction.
struct HSpec {
    double a0 = 1.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    static HSpec constant(double value);
    static HSpec fourier(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    double eval(double theta) const;
    double deriv(double theta) const;
    double grid_minimum() const;
    bool is_constant() const { return cos_coeffs.empty() && sin_coeffs.empty(); }
};

/// Positive profile k(theta) for the diagonal family diag(k, 1).
using KappaSpec = HSpec;

/// 2x2 positive-definite hermitian matrix over the complex basis (e2, e3).
struct HermitianMetric {
    double h11 = 1;
    complexd h12{0, 0};
    double h22 = 1;

    double det() const { return h11 * h22 - std::norm(h12); }
    bool positive_definite() const { return h11 > 0 && det() > 0; }
};

/// A metric family on S^1 x S^3. Standard is the h-parametrized family;
/// Diagonal is diag(k, 1) for ||alpha|| = ||beta|| (profile read as k);
/// PerturbedControl multiplies H11 by (1 + 0.1 ||xi1||^2) and serves as
/// the negative control in the conformal-Kahler checks.
struct MetricFamily {
    enum class Kind { Standard, Diagonal, PerturbedControl };
    HopfParams params;
    HSpec profile;
    Kind kind = Kind::Standard;

    static MetricFamily standard(HopfParams params, HSpec h);
    static MetricFamily diagonal(HopfParams params, KappaSpec kappa);
    static MetricFamily perturbed_control(HopfParams params, HSpec h);

    /// The theta-profile entering the Lee form omega = -h e^1. For the
    /// diagonal family this is k log||alpha|| / pi.
    double lee_profile(double theta) const;
    double lee_profile_deriv(double theta) const;
};

HermitianMetric metric_matrix(const MetricFamily& family, const FramePoint& p);

/// g(X, Y) = Re H(X, Y) with the hermitian form linear in its first slot:
/// H(X, Y) = coords(X)^T . H . conj(coords(Y)).
double metric_eval(const MetricFamily& family, const FramePoint& p, const FrameVector& X,
                   const FrameVector& Y);

/// Omega(X, Y) = g(JX, Y).
double fundamental_form(const MetricFamily& family, const FramePoint& p, const FrameVector& X,
                        const FrameVector& Y);

/// Independent evaluation of Omega on the frame pairs (i < j) through the
/// explicit wedge-coefficient expansion, normalized so the (3,4)
/// coefficient matches the metric route. Indexing: [0]=(1,2) [1]=(1,3)
/// [2]=(1,4) [3]=(2,3) [4]=(2,4) [5]=(3,4).
std::array<double, 6> fundamental_form_table(const MetricFamily& family, const FramePoint& p);

/// omega = -h(theta) e^1.
FrameCovector lee_form(const MetricFamily& family, const FramePoint& p);

/// Metric dual of the Lee form; independent of the profile.
FrameVector lee_vector(const MetricFamily& family, const FramePoint& p);

/// J B.
FrameVector anti_lee_vector(const MetricFamily& family, const FramePoint& p);

struct LckReport {
    double max_domega = 0;               // largest |d omega(e_i, e_j)|
    double max_dfund_minus_wedge = 0;    // largest |dOmega - omega ^ Omega| component
    int positivity_violations = 0;
    int samples = 0;
};

/// Checks d(omega) = 0 and dOmega = omega ^ Omega on quasi-random points
/// (Halton sweep; grid sweep when grid_sampling is set), using structure
/// constants and finite differences along the exact frame flows.
LckReport check_lck(const MetricFamily& family, int sample_count, const ToleranceConfig& tol,
                    bool grid_sampling = false);

/// nabla_{e_i} e_j by the six-terms (Koszul) formula with fourth-order
/// finite differences of the metric along exact flows. Throws
/// IllConditioned when the Gram matrix condition exceeds 1e12.
FrameVector levi_civita(const MetricFamily& family, const FramePoint& p, int i, int j,
                        double step);
FrameVector levi_civita(const MetricFamily& family, const FramePoint& p, int i, int j);

/// Matrix of (nabla_{e_i} omega)(e_j).
std::array<std::array<double, 4>, 4> nabla_lee_matrix(const MetricFamily& family,
                                                      const FramePoint& p);

struct VaismanReport {
    bool verdict = false;
    double max_residual = 0; // largest Frobenius norm of nabla omega seen
};

VaismanReport is_vaisman(const MetricFamily& family, int sample_count, double threshold,
                         bool grid_sampling = false);

/// diag(k(theta), 1) for ||alpha|| = ||beta||; throws ParamMismatch otherwise.
HermitianMetric diagonal_family_matrix(const HopfParams& params, const KappaSpec& kappa,
                                       const FramePoint& p);

/// The invariant hermitian metric on C^2 \ 0 induced by the diagonal
/// family, as a 2x2 matrix over (dz1, dz2). k is evaluated at the S^1
/// coordinate pi log(||z1||^2 + ||z2||^2) / log||alpha||, which makes the
/// matrix invariant under (z1, z2) -> (alpha z1, beta z2).
std::array<std::array<complexd, 2>, 2> invariant_metric_universal(const HopfParams& params,
                                                                  const KappaSpec& kappa,
                                                                  const UniversalPoint& z);

/// Quasi-random point on S^1 x S^3 (Halton sweep, Hopf coordinates).
FramePoint halton_point(std::uint64_t index);

} // namespace hopf

#endif

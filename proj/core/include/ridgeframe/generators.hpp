#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ridgeframe/spectral.hpp"

namespace ridgeframe {

// ---------------------------------------------------------------------------
// Meyer wavelet
// ---------------------------------------------------------------------------

/// Sigmoid used by the Meyer window: 0 for y <= 0, 1 for y >= 1,
/// nu(y) + nu(1 - y) = 1.
using SmoothStep = std::function<double(double)>;

/// Degree-7 polynomial y^4 (35 - 84 y + 70 y^2 - 20 y^3) clamped to [0, 1].
double meyer_nu(double y);

/// Looks up a sigmoid by name ("poly7"; "skewed" is a deliberately broken
/// y^2 step used as a mutation fixture).
SmoothStep smooth_step_by_name(const std::string& name);

/// Meyer window: sine branch on [2pi/3, 4pi/3], cosine branch on
/// [4pi/3, 8pi/3] with argument 3y/(4pi) - 1 so the two branches meet
/// continuously at 4pi/3, zero elsewhere.
double meyer_window(double y, const SmoothStep& nu = meyer_nu);

/// exp(-i pi gamma) (w(2 pi gamma) + w(-2 pi gamma)); supported in
/// 1/3 <= |gamma| <= 4/3.
Complex meyer_psi_hat(double gamma, const SmoothStep& nu = meyer_nu);

/// Samples of 2^{-m/2} psi(2^{-m} x - k), synthesized from the analytic
/// spectrum. Throws ResolutionError when the grid's Nyquist frequency is
/// below the support bound 4/3 * 2^{-m}.
SampledSignal meyer_basis_element(int k, int m, const Grid1D& grid, const SmoothStep& nu = meyer_nu);

// ---------------------------------------------------------------------------
// Complex B-splines
// ---------------------------------------------------------------------------

/// (1 - exp(-2 pi i gamma)) / (2 pi i gamma), with Omega(0) = 1.
Complex bspline_omega(double gamma);

/// Omega(gamma)^z on the principal branch. Requires Re z > 1.
Complex complex_bspline_hat(Complex z, double gamma);

/// Same value through the modulation/damping factorization
/// beta_{Re z}(gamma) exp(i Im z ln|Omega|) exp(-Im z arg Omega).
Complex complex_bspline_hat_factored(Complex z, double gamma);

/// Number of terms K used by autocorrelation_filter on each side for the
/// given tolerance (analytic tail bound with decay |k|^{-2 Re z}).
long autocorrelation_terms(Complex z, double tail_tol);

/// A_z(gamma) = sum_k |beta_z(gamma + k)|^2, truncated symmetrically.
double autocorrelation_filter(Complex z, double gamma, double tail_tol = 1e-12);

/// beta_z(gamma) / sqrt(A_z(gamma)).
Complex orthonormal_scaling_hat(Complex z, double gamma, double tail_tol = 1e-12);

/// H_z(xi) = beta_perp(2 xi) / beta_perp(xi). Throws SingularEvaluation when
/// |beta_perp(xi)| < 1e-14.
Complex scaling_filter(Complex z, double xi);

/// -exp(-i pi gamma) conj(H_z((gamma + 1)/2)) beta_perp(gamma / 2). H_z is
/// 1-periodic, so its argument is reduced to [-1/2, 1/2) before evaluation.
Complex bspline_wavelet_hat(Complex z, double gamma);

// ---------------------------------------------------------------------------
// Generator descriptors
// ---------------------------------------------------------------------------

struct MeyerWavelet {
    std::string nu = "poly7";
};

struct ComplexBSplineScaling {
    Complex z;
    bool orthonormal = false;
};

struct ComplexBSplineWavelet {
    Complex z;
};

/// Unit-norm Gaussian 2^{1/4} s^{-1/2} exp(-pi ((x - shift)/s)^2).
struct GaussianWindow {
    double scale = 1.0;
    double shift = 0.0;
};

/// Spectrum given by samples on gamma0 + k*dgamma, linearly interpolated,
/// zero outside the table.
struct TabulatedSpectrum {
    double gamma0 = 0.0;
    double dgamma = 1.0;
    std::vector<Complex> values;
};

/// Spectrum 1 on lo <= |gamma| <= hi, 0 elsewhere.
struct BandIndicator {
    double lo = 1.0;
    double hi = 2.0;
};

class GeneratorSpec {
public:
    using Kind = std::variant<MeyerWavelet, ComplexBSplineScaling, ComplexBSplineWavelet,
                              GaussianWindow, TabulatedSpectrum, BandIndicator>;

    explicit GeneratorSpec(Kind kind);

    static GeneratorSpec meyer();
    static GeneratorSpec cbspline(Complex z, bool orthonormal = false);
    static GeneratorSpec cbspline_wavelet(Complex z);
    static GeneratorSpec gaussian(double scale = 1.0, double shift = 0.0);
    static GeneratorSpec band(double lo, double hi);
    static GeneratorSpec tabulated(double gamma0, double dgamma, std::vector<Complex> values);

    const Kind& kind() const { return kind_; }
    std::string kind_name() const;

    /// Exact spectral value at gamma.
    Complex spectrum(double gamma) const;

    /// Closed interval in |gamma| outside of which the spectrum vanishes, when
    /// known analytically.
    std::optional<std::pair<double, double>> spectral_band() const;

    /// Positive |gamma| where the spectrum is not smooth.
    std::vector<double> breakpoints() const;

    /// |gamma|^alpha * spectrum on the frequency grid dual to `grid`.
    Spectrum spectrum_on(const Grid1D& grid, double alpha = 0.0) const;

    /// Time-domain samples of (|.|^alpha ghat)^v on `grid`.
    SampledSignal sample(const Grid1D& grid, double alpha = 0.0) const;

    nlohmann::json manifest() const;
    static GeneratorSpec from_manifest(const nlohmann::json& j);

private:
    Kind kind_;
    SmoothStep nu_;
};

// ---------------------------------------------------------------------------
// Admissibility and the multiscale setup conditions
// ---------------------------------------------------------------------------

struct SpectralIntegral {
    bool finite = false;
    double value = 0.0;
    std::string reason;
};

/// \int |ghat(gamma)|^2 / |gamma|^power d gamma by adaptive Gauss-Kronrod
/// quadrature, with divergence detection at 0 and infinity.
SpectralIntegral weighted_spectral_integral(const GeneratorSpec& spec, double power);

/// C_psi = \int |psihat|^2 / |gamma|. Throws NotAdmissible on divergence.
double admissibility_constant(const GeneratorSpec& spec);

struct ConditionResult {
    bool holds = false;
    double value = 0.0;
};

struct EnvelopeFit {
    bool holds = false;
    double K = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct SetupReport {
    ConditionResult condition_i;   // integral of |ghat|^2 / |gamma|^n
    ConditionResult condition_ii;  // infimum of the dyadic partial sums
    EnvelopeFit condition_iii;     // |ghat| <= K |gamma|^alpha (1+|gamma|)^-beta
    double a0 = 2.0;
    int n = 2;

    bool all_hold() const {
        return condition_i.holds && condition_ii.holds && condition_iii.holds;
    }
    nlohmann::json to_json() const;
};

SetupReport check_general_setup(const GeneratorSpec& spec, double a0, int n);

}  // namespace ridgeframe

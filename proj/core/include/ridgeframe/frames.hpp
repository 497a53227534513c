#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ridgeframe/generators.hpp"
#include "ridgeframe/spectral.hpp"

namespace ridgeframe {

/// Midpoint cells on [-a_max, a_max] x [-b_max, b_max] (translation a,
/// modulation b), Lebesgue measure.
struct GaborQuadrature {
    double a_max = 6.0;
    double b_max = 6.0;
    std::size_t na = 64;
    std::size_t nb = 64;

    double da() const { return 2.0 * a_max / static_cast<double>(na); }
    double db() const { return 2.0 * b_max / static_cast<double>(nb); }
    double a(std::size_t i) const { return -a_max + (static_cast<double>(i) + 0.5) * da(); }
    double b(std::size_t j) const { return -b_max + (static_cast<double>(j) + 0.5) * db(); }
};

/// Midpoint cells in log|a| over [a_min, a_max] for both signs of a, and
/// uniform in b over [-b_max, b_max]; measure da db / a^2.
struct WaveletQuadrature {
    double a_min = 1.0 / 16.0;
    double a_max = 16.0;
    std::size_t na = 64;
    double b_max = 8.0;
    std::size_t nb = 128;

    double dlog() const { return std::log(a_max / a_min) / static_cast<double>(na); }
    double db() const { return 2.0 * b_max / static_cast<double>(nb); }
    /// Scale of cell i in [0, 2 na): negative scales first.
    double a(std::size_t i) const;
    /// da / a^2 of cell i.
    double weight(std::size_t i) const;
    double b(std::size_t j) const { return -b_max + (static_cast<double>(j) + 0.5) * db(); }
};

struct ContinuousGabor {
    GeneratorSpec window;
    Complex scale{1.0, 0.0};
    GaborQuadrature quadrature{};
};

/// Atoms |a|^{-1/2} psi((x - b)/a), measure da db / a^2.
struct ContinuousWavelet {
    GeneratorSpec mother;
    WaveletQuadrature quadrature{};
};

/// Atoms a0^{-m/2} psi(a0^{-m} x - l b). Translations outside the working
/// grid's period are not counted.
struct DiscreteWaveletGrid {
    GeneratorSpec mother;
    double a0 = 2.0;
    int m_min = -3;
    int m_max = 3;
    double b = 1.0;
    long l_min = -3;
    long l_max = 3;
};

struct DiscreteCustom {
    std::vector<SampledSignal> generators;
};

class FrameSystem {
public:
    using Kind = std::variant<ContinuousGabor, ContinuousWavelet, DiscreteWaveletGrid, DiscreteCustom>;

    FrameSystem(Kind kind);

    const Kind& kind() const { return kind_; }
    std::string kind_name() const;
    std::string measure() const;
    nlohmann::json manifest() const;
    /// Inverse of manifest() for all kinds except discrete_custom. Throws
    /// FormatError.
    static FrameSystem from_manifest(const nlohmann::json& j);

private:
    Kind kind_;
};

struct BoundsEstimate {
    double lower = 0.0;
    double upper = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string test_family;
    double coverage_defect = 0.0;
    std::vector<std::string> warnings;

    nlohmann::json to_json() const;
};

/// E_b T_a g, i.e. exp(2 pi i b x) g(x - a). Throws DomainError when the
/// translated window reaches the ends of the grid.
SampledSignal gabor_atom(const SampledSignal& g, double a, double b);
SampledSignal gabor_atom(const GeneratorSpec& g, double a, double b, const Grid1D& grid);

/// D_a T_b psi, i.e. |a|^{1/2} psi(a x - b). Throws InvalidParameter for a = 0.
SampledSignal wavelet_atom(const SampledSignal& psi, double a, double b);
SampledSignal wavelet_atom(const GeneratorSpec& psi, double a, double b, const Grid1D& grid);

/// <f, E_b T_a g> on the cells of q, row-major in (a, b).
std::vector<Complex> gabor_coefficients(const SampledSignal& f, const GeneratorSpec& g,
                                        const GaborQuadrature& q);
/// <f, |a|^{-1/2} psi((. - b)/a)> on the cells of q, row-major in (a, b).
std::vector<Complex> wavelet_coefficients(const SampledSignal& f, const GeneratorSpec& psi,
                                          const WaveletQuadrature& q);

struct ResolutionCheck {
    Complex lhs;
    Complex rhs;
    double coverage_defect = 0.0;
};

/// lhs = int int <f1, E_b T_a g1> conj(<f2, E_b T_a g2>) da db,
/// rhs = <f1, f2> <g2, g1>. Throws CoverageError when more than 1e-6 of the
/// integrand mass sits on the boundary cells.
ResolutionCheck gabor_resolution_check(const SampledSignal& f1, const SampledSignal& f2,
                                       const GeneratorSpec& g1, const GeneratorSpec& g2,
                                       const GaborQuadrature& q = {});

/// lhs = int int <f, psi_{a,b}> conj(<g, psi_{a,b}>) da db / a^2,
/// rhs = C_psi <f, g>. Throws NotAdmissible for inadmissible psi.
ResolutionCheck wavelet_resolution_check(const SampledSignal& f, const SampledSignal& g,
                                         const GeneratorSpec& psi, const WaveletQuadrature& q = {});

/// int conj-linear spectral inner product <g1, g2> = int g1hat conj(g2hat).
Complex spectral_inner(const GeneratorSpec& g1, const GeneratorSpec& g2);

struct DualGaborPair {
    FrameSystem primary;
    FrameSystem dual;
    Complex overlap;  // <g1, g2>
};

/// Dual generator g2 / <g2, g1>. Throws PerpendicularWindows when
/// |<g1, g2>| <= 1e-10.
DualGaborPair make_dual_gabor_pair(const GeneratorSpec& g1, const GeneratorSpec& g2,
                                   const GaborQuadrature& q = {});

struct FrameEnergy {
    double energy = 0.0;
    double coverage_defect = 0.0;
};

/// Integral (continuous kinds, by quadrature) or sum (discrete kinds) of
/// |<f, f_k>|^2.
FrameEnergy frame_energy(const FrameSystem& sys, const SampledSignal& f);

/// Min and max of energy(f)/||f||^2 over the tests. Zero-norm tests are
/// skipped with a warning; fewer than 30 usable tests is InvalidInput.
BoundsEstimate estimate_frame_bounds(const FrameSystem& sys, std::span<const SampledSignal> tests,
                                     std::uint64_t seed, const std::string& family);

/// Generic form: ratio(i) returns (energy, ||f_i||^2, coverage defect).
struct TrialEnergy {
    double energy = 0.0;
    double norm2 = 0.0;
    double coverage_defect = 0.0;
};
BoundsEstimate estimate_bounds(std::size_t trials, const std::function<TrialEnergy(std::size_t)>& trial,
                               std::uint64_t seed, const std::string& family);

}  // namespace ridgeframe

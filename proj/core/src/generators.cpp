#include "ridgeframe/generators.hpp"

#include <cmath>
#include <limits>

#include "ridgeframe/errors.hpp"

namespace ridgeframe {
namespace {

// exp(-i pi gamma), argument reduced mod 2 first.
Complex half_turn_phase(double gamma) {
    const double r = gamma - 2.0 * std::round(0.5 * gamma);
    return {std::cos(kPi * r), -std::sin(kPi * r)};
}

void require_bspline_order(Complex z) {
    if (!(z.real() > 1.0))
        throw InvalidParameter("complex B-spline requires Re z > 1");
}

}  // namespace

// ---------------------------------------------------------------------------

double meyer_nu(double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double y4 = y * y * y * y;
    return y4 * (35.0 + y * (-84.0 + y * (70.0 - 20.0 * y)));
}

SmoothStep smooth_step_by_name(const std::string& name) {
    if (name == "poly7") return meyer_nu;
    if (name == "skewed")
        return [](double y) { return y <= 0.0 ? 0.0 : (y >= 1.0 ? 1.0 : y * y); };
    throw InvalidParameter("unknown smooth step '" + name + "'");
}

double meyer_window(double y, const SmoothStep& nu) {
    constexpr double lo = 2.0 * kPi / 3.0;
    constexpr double mid = 4.0 * kPi / 3.0;
    constexpr double hi = 8.0 * kPi / 3.0;
    if (y < lo || y > hi) return 0.0;
    if (y <= mid) return std::sin(0.5 * kPi * nu(3.0 * y / (2.0 * kPi) - 1.0));
    return std::cos(0.5 * kPi * nu(3.0 * y / (4.0 * kPi) - 1.0));
}

Complex meyer_psi_hat(double gamma, const SmoothStep& nu) {
    const double w = meyer_window(2.0 * kPi * gamma, nu) + meyer_window(-2.0 * kPi * gamma, nu);
    if (w == 0.0) return {};
    return half_turn_phase(gamma) * w;
}

SampledSignal meyer_basis_element(int k, int m, const Grid1D& grid, const SmoothStep& nu) {
    const double scale = std::ldexp(1.0, m);
    const double nyquist = 0.5 / grid.dx;
    if (nyquist < (4.0 / 3.0) / scale)
        throw ResolutionError("meyer_basis_element: grid spacing too coarse for scale m=" +
                              std::to_string(m));
    const double amp = std::sqrt(scale);
    const double shift = static_cast<double>(k) * scale;
    auto sp = Spectrum::from_function(grid, [&](double g) -> Complex {
        const Complex psi = meyer_psi_hat(scale * g, nu);
        if (psi == Complex{}) return {};
        double t = g * shift;
        t -= std::round(t);
        return amp * psi * Complex(std::cos(2.0 * kPi * t), -std::sin(2.0 * kPi * t));
    });
    return inverse_ft(sp);
}

// ---------------------------------------------------------------------------

Complex bspline_omega(double gamma) {
    if (gamma == 0.0) return {1.0, 0.0};
    const double r = gamma - std::round(gamma);
    if (r == 0.0) return {};
    // (1 - e^{-2 pi i g}) / (2 pi i g) = e^{-i pi r} sin(pi r) / (pi g)
    const double mag = std::sin(kPi * r) / (kPi * gamma);
    return Complex(std::cos(kPi * r), -std::sin(kPi * r)) * mag;
}

Complex complex_bspline_hat(Complex z, double gamma) {
    require_bspline_order(z);
    const Complex omega = bspline_omega(gamma);
    if (omega == Complex{}) return {};
    return std::exp(z * std::log(omega));
}

Complex complex_bspline_hat_factored(Complex z, double gamma) {
    require_bspline_order(z);
    const Complex omega = bspline_omega(gamma);
    if (omega == Complex{}) return {};
    const double log_abs = std::log(std::abs(omega));
    const double arg = std::arg(omega);
    const Complex real_order = std::exp(z.real() * Complex(log_abs, arg));
    const Complex modulation = std::exp(Complex(0.0, z.imag() * log_abs));
    const double damping = std::exp(-z.imag() * arg);
    return real_order * modulation * damping;
}

long autocorrelation_terms(Complex z, double tail_tol) {
    require_bspline_order(z);
    if (!(tail_tol > 0.0)) throw InvalidParameter("autocorrelation_filter: tail_tol must be > 0");
    // For |r| <= 1/2 and k > K: |beta(r+k)|^2 <= e^{2 pi |Im z|} (pi (k - 1/2))^{-2 Re z},
    // and the two-sided tail is at most
    // 2 e^{2 pi |Im z|} pi^{-2s} (K - 1/2)^{1-2s} / (2s - 1).
    const double s = z.real();
    const double c = 2.0 * std::exp(2.0 * kPi * std::abs(z.imag())) * std::pow(kPi, -2.0 * s) /
                     (2.0 * s - 1.0);
    const double need = std::pow(c / tail_tol, 1.0 / (2.0 * s - 1.0)) + 0.5;
    constexpr double cap = static_cast<double>(1L << 24);
    if (!(need < cap))
        throw InvalidParameter("autocorrelation_filter: tolerance unattainable for this z");
    return std::max(1L, static_cast<long>(std::ceil(need)));
}

double autocorrelation_filter(Complex z, double gamma, double tail_tol) {
    const long K = autocorrelation_terms(z, tail_tol);
    const double r = gamma - std::round(gamma);
    if (r == 0.0) return 1.0;
    // |Omega^z|^2 = exp(2 (Re z ln|Omega| - Im z arg Omega)); every shifted
    // argument r + k shares the phase factor exp(-i pi r), so only the sign of
    // the real amplitude sin(pi r) / (pi (r + k)) changes.
    const Complex phase(std::cos(kPi * r), -std::sin(kPi * r));
    const double sr = std::sin(kPi * r) / kPi;
    auto term = [&](double g) {
        const double amp = sr / g;
        const double arg = std::arg(amp > 0.0 ? phase : -phase);
        return std::exp(2.0 * (z.real() * std::log(std::abs(amp)) - z.imag() * arg));
    };
    double acc = term(r);
    for (long k = 1; k <= K; ++k) {
        const double kk = static_cast<double>(k);
        acc += term(r + kk) + term(r - kk);
    }
    return acc;
}

Complex orthonormal_scaling_hat(Complex z, double gamma, double tail_tol) {
    const Complex b = complex_bspline_hat(z, gamma);
    if (b == Complex{}) return {};
    return b / std::sqrt(autocorrelation_filter(z, gamma, tail_tol));
}

Complex scaling_filter(Complex z, double xi) {
    const Complex den = orthonormal_scaling_hat(z, xi);
    if (std::abs(den) < 1e-14)
        throw SingularEvaluation("scaling_filter: vanishing denominator at xi=" +
                                     format_double(xi),
                                 xi);
    return orthonormal_scaling_hat(z, 2.0 * xi) / den;
}

Complex bspline_wavelet_hat(Complex z, double gamma) {
    require_bspline_order(z);
    const double xi = 0.5 * (gamma + 1.0);
    const double reduced = xi - std::floor(xi + 0.5);
    const Complex h = scaling_filter(z, reduced);
    return -half_turn_phase(gamma) * std::conj(h) * orthonormal_scaling_hat(z, 0.5 * gamma);
}

// ---------------------------------------------------------------------------

GeneratorSpec::GeneratorSpec(Kind kind) : kind_(std::move(kind)) {
    std::visit(
        [this](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, MeyerWavelet>) {
                nu_ = smooth_step_by_name(k.nu);
            } else if constexpr (std::is_same_v<T, ComplexBSplineScaling> ||
                                 std::is_same_v<T, ComplexBSplineWavelet>) {
                require_bspline_order(k.z);
            } else if constexpr (std::is_same_v<T, GaussianWindow>) {
                if (!(k.scale > 0.0)) throw InvalidParameter("gaussian: scale must be > 0");
            } else if constexpr (std::is_same_v<T, TabulatedSpectrum>) {
                if (k.values.empty() || !(k.dgamma > 0.0))
                    throw InvalidParameter("tabulated spectrum: need samples and dgamma > 0");
            } else if constexpr (std::is_same_v<T, BandIndicator>) {
                if (!(k.lo >= 0.0 && k.hi > k.lo))
                    throw InvalidParameter("band: need 0 <= lo < hi");
            }
        },
        kind_);
}

GeneratorSpec GeneratorSpec::meyer() { return GeneratorSpec(MeyerWavelet{}); }
GeneratorSpec GeneratorSpec::cbspline(Complex z, bool orthonormal) {
    return GeneratorSpec(ComplexBSplineScaling{z, orthonormal});
}
GeneratorSpec GeneratorSpec::cbspline_wavelet(Complex z) {
    return GeneratorSpec(ComplexBSplineWavelet{z});
}
GeneratorSpec GeneratorSpec::gaussian(double scale, double shift) {
    return GeneratorSpec(GaussianWindow{scale, shift});
}
GeneratorSpec GeneratorSpec::band(double lo, double hi) {
    return GeneratorSpec(BandIndicator{lo, hi});
}
GeneratorSpec GeneratorSpec::tabulated(double gamma0, double dgamma,
                                       std::vector<Complex> values) {
    return GeneratorSpec(TabulatedSpectrum{gamma0, dgamma, std::move(values)});
}

std::string GeneratorSpec::kind_name() const {
    static const char* names[] = {"meyer",    "cbspline", "cbspline_wavelet",
                                  "gaussian", "tabulated", "band"};
    return names[kind_.index()];
}

Complex GeneratorSpec::spectrum(double gamma) const {
    return std::visit(
        [&](const auto& k) -> Complex {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, MeyerWavelet>) {
                return meyer_psi_hat(gamma, nu_);
            } else if constexpr (std::is_same_v<T, ComplexBSplineScaling>) {
                return k.orthonormal ? orthonormal_scaling_hat(k.z, gamma)
                                     : complex_bspline_hat(k.z, gamma);
            } else if constexpr (std::is_same_v<T, ComplexBSplineWavelet>) {
                return bspline_wavelet_hat(k.z, gamma);
            } else if constexpr (std::is_same_v<T, GaussianWindow>) {
                const double sg = k.scale * gamma;
                const double amp = std::pow(2.0, 0.25) * std::sqrt(k.scale) * std::exp(-kPi * sg * sg);
                if (k.shift == 0.0) return amp;
                double t = gamma * k.shift;
                t -= std::round(t);
                return amp * Complex(std::cos(2.0 * kPi * t), -std::sin(2.0 * kPi * t));
            } else if constexpr (std::is_same_v<T, TabulatedSpectrum>) {
                const double pos = (gamma - k.gamma0) / k.dgamma;
                const double last = static_cast<double>(k.values.size() - 1);
                if (pos < 0.0 || pos > last) return {};
                const auto i = static_cast<std::size_t>(std::floor(pos));
                if (i + 1 >= k.values.size()) return k.values.back();
                const double f = pos - static_cast<double>(i);
                return (1.0 - f) * k.values[i] + f * k.values[i + 1];
            } else {
                const double a = std::abs(gamma);
                return (a >= k.lo && a <= k.hi) ? Complex(1.0) : Complex{};
            }
        },
        kind_);
}

std::optional<std::pair<double, double>> GeneratorSpec::spectral_band() const {
    if (std::holds_alternative<MeyerWavelet>(kind_)) return std::make_pair(1.0 / 3.0, 4.0 / 3.0);
    if (const auto* b = std::get_if<BandIndicator>(&kind_)) return std::make_pair(b->lo, b->hi);
    if (const auto* t = std::get_if<TabulatedSpectrum>(&kind_)) {
        const double end = t->gamma0 + t->dgamma * static_cast<double>(t->values.size() - 1);
        return std::make_pair(0.0, std::max(std::abs(t->gamma0), std::abs(end)));
    }
    return std::nullopt;
}

std::vector<double> GeneratorSpec::breakpoints() const {
    if (std::holds_alternative<MeyerWavelet>(kind_)) return {1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0};
    if (const auto* b = std::get_if<BandIndicator>(&kind_)) {
        if (b->lo > 0.0) return {b->lo, b->hi};
        return {b->hi};
    }
    return {};
}

Spectrum GeneratorSpec::spectrum_on(const Grid1D& grid, double alpha) const {
    return Spectrum::from_function(grid, [&](double g) {
        const double w = abs_power(g, alpha);
        return w == 0.0 ? Complex{} : w * spectrum(g);
    });
}

SampledSignal GeneratorSpec::sample(const Grid1D& grid, double alpha) const {
    return inverse_ft(spectrum_on(grid, alpha));
}

nlohmann::json GeneratorSpec::manifest() const {
    nlohmann::json j;
    j["kind"] = kind_name();
    nlohmann::json params = nlohmann::json::object();
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, MeyerWavelet>) {
                params["nu"] = k.nu;
            } else if constexpr (std::is_same_v<T, ComplexBSplineScaling>) {
                j["z"] = {k.z.real(), k.z.imag()};
                params["orthonormal"] = k.orthonormal;
            } else if constexpr (std::is_same_v<T, ComplexBSplineWavelet>) {
                j["z"] = {k.z.real(), k.z.imag()};
            } else if constexpr (std::is_same_v<T, GaussianWindow>) {
                params["scale"] = k.scale;
                params["shift"] = k.shift;
            } else if constexpr (std::is_same_v<T, TabulatedSpectrum>) {
                params["gamma0"] = k.gamma0;
                params["dgamma"] = k.dgamma;
                std::vector<double> re, im;
                for (const auto& v : k.values) {
                    re.push_back(v.real());
                    im.push_back(v.imag());
                }
                params["re"] = re;
                params["im"] = im;
            } else {
                params["lo"] = k.lo;
                params["hi"] = k.hi;
            }
        },
        kind_);
    j["params"] = params;
    return j;
}

GeneratorSpec GeneratorSpec::from_manifest(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InvalidInput("generator manifest: missing \"kind\"");
    const std::string kind = j["kind"];
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    auto read_z = [&]() -> Complex {
        if (!j.contains("z") || !j["z"].is_array() || j["z"].size() != 2)
            throw InvalidInput("generator manifest: kind '" + kind + "' needs \"z\": [re, im]");
        return {j["z"][0].get<double>(), j["z"][1].get<double>()};
    };
    try {
        if (kind == "meyer") return GeneratorSpec(MeyerWavelet{params.value("nu", std::string("poly7"))});
        if (kind == "cbspline")
            return GeneratorSpec(ComplexBSplineScaling{read_z(), params.value("orthonormal", false)});
        if (kind == "cbspline_wavelet") return GeneratorSpec(ComplexBSplineWavelet{read_z()});
        if (kind == "gaussian")
            return GeneratorSpec(GaussianWindow{params.value("scale", 1.0), params.value("shift", 0.0)});
        if (kind == "band")
            return GeneratorSpec(BandIndicator{params.value("lo", 1.0), params.value("hi", 2.0)});
        if (kind == "tabulated") {
            const auto re = params.at("re").get<std::vector<double>>();
            const auto im = params.value("im", std::vector<double>(re.size(), 0.0));
            if (im.size() != re.size()) throw InvalidInput("tabulated: re/im length mismatch");
            std::vector<Complex> v(re.size());
            for (std::size_t i = 0; i < re.size(); ++i) v[i] = {re[i], im[i]};
            return GeneratorSpec(TabulatedSpectrum{params.at("gamma0").get<double>(),
                                                   params.at("dgamma").get<double>(), std::move(v)});
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("generator manifest: ") + e.what());
    }
    throw InvalidInput("generator manifest: unknown kind '" + kind + "'");
}

}  // namespace ridgeframe

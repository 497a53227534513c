#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ridgeframe/errors.hpp"
#include "ridgeframe/generators.hpp"

namespace ridgeframe {
namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kNearZero = 1e-8;
constexpr double kFarOut = 1e8;

// Local power-law exponent of h between two probe points (NaN if either
// value vanishes).
double local_exponent(double h_a, double a, double h_b, double b) {
    if (!(h_a > 0.0) || !(h_b > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::log(h_b / h_a) / std::log(b / a);
}

struct SideResult {
    bool finite = true;
    double value = 0.0;
    std::string reason;
};

SideResult integrate_side(const GeneratorSpec& spec, double power, double sign) {
    SideResult out;
    auto h = [&](double t) {
        return std::norm(spec.spectrum(sign * t)) * std::pow(t, -power);
    };

    // Probes sit at half-integers away from 0 so that spectra with zeros at
    // the integers (B-splines) are measured on their envelope.
    const double q0 = local_exponent(h(1e-10), 1e-10, h(1e-6), 1e-6);
    if (std::isfinite(q0) && q0 <= -0.95) {
        out.finite = false;
        out.reason = "integrand behaves like |gamma|^" + format_double(q0) + " near 0";
        return out;
    }
    const double qi = local_exponent(h(1e6 + 0.5), 1e6 + 0.5, h(1e8 + 0.5), 1e8 + 0.5);
    if (std::isfinite(qi) && qi >= -1.05) {
        out.finite = false;
        out.reason = "integrand behaves like |gamma|^" + format_double(qi) + " at infinity";
        return out;
    }

    double lo = kNearZero;
    double hi = kFarOut;
    if (auto band = spec.spectral_band()) {
        lo = std::max(lo, band->first);
        hi = std::min(hi, band->second);
    } else if (std::isfinite(qi)) {
        // Stop at the first decade beyond which the envelope tail is negligible.
        for (double t = 10.0; t < kFarOut; t *= 10.0) {
            if (h(t + 0.5) * t / (-1.0 - qi) < 1e-15) {
                hi = t;
                break;
            }
        }
    }

    std::vector<double> nodes{lo, hi};
    for (double t = 1e-7; t < hi; t *= 10.0)
        if (t > lo) nodes.push_back(t);
    for (double b : spec.breakpoints())
        if (b > lo && b < hi) nodes.push_back(b);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    // A single Kronrod pass per piece gives the overall scale; pieces that
    // cannot matter at 1e-15 of it are not refined (their relative accuracy
    // is limited by cancellation in some spectra anyway).
    const std::size_t pieces = nodes.size() - 1;
    std::vector<double> rough(pieces), l1(pieces);
    double scale = 0.0;
    for (std::size_t i = 0; i < pieces; ++i) {
        double err = 0.0;
        rough[i] = gauss_kronrod<double, 61>::integrate(h, nodes[i], nodes[i + 1], 0, 0.0, &err, &l1[i]);
        scale += l1[i];
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < pieces; ++i) {
        if (l1[i] < 1e-15 * scale) {
            sum += rough[i];
            continue;
        }
        sum += gauss_kronrod<double, 61>::integrate(h, nodes[i], nodes[i + 1], 15, 1e-12);
    }

    if (lo == kNearZero && std::isfinite(q0)) sum += h(lo) * lo / (q0 + 1.0);
    if (hi == kFarOut && std::isfinite(qi)) sum += h(hi + 0.5) * hi / (-1.0 - qi);
    out.value = sum;
    return out;
}

}  // namespace

SpectralIntegral weighted_spectral_integral(const GeneratorSpec& spec, double power) {
    SpectralIntegral result;
    const SideResult pos = integrate_side(spec, power, 1.0);
    const SideResult neg = integrate_side(spec, power, -1.0);
    result.finite = pos.finite && neg.finite;
    result.reason = !pos.finite ? pos.reason : neg.reason;
    result.value = result.finite ? pos.value + neg.value
                                 : std::numeric_limits<double>::infinity();
    return result;
}

double admissibility_constant(const GeneratorSpec& spec) {
    const SpectralIntegral r = weighted_spectral_integral(spec, 1.0);
    if (!r.finite) throw NotAdmissible("admissibility integral diverges: " + r.reason);
    return r.value;
}

namespace {

ConditionResult dyadic_infimum(const GeneratorSpec& spec, double a0, int n) {
    // inf over 1 <= |gamma| <= a0 of sum_{k>=0} |g(a0^-k gamma)|^2 |a0^-k gamma|^{-2(n-1)}
    constexpr int samples = 2001;
    const double expo = -2.0 * (n - 1);
    const int kmax = static_cast<int>(std::ceil(std::log(1e10) / std::log(a0)));
    double inf = std::numeric_limits<double>::infinity();
    for (double sign : {1.0, -1.0}) {
        for (int i = 0; i < samples; ++i) {
            const double g = sign * (1.0 + (a0 - 1.0) * i / (samples - 1));
            double sum = 0.0;
            double t = g;
            for (int k = 0; k <= kmax; ++k, t /= a0)
                sum += std::norm(spec.spectrum(t)) * std::pow(std::abs(t), expo);
            inf = std::min(inf, sum);
        }
    }
    return {inf > 1e-14, inf};
}

// Least-squares slope of log|g| against log|gamma| on [lo, hi], both signs.
std::optional<double> envelope_slope(const GeneratorSpec& spec, double lo, double hi) {
    constexpr int per_side = 81;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (double sign : {1.0, -1.0}) {
        for (int i = 0; i < per_side; ++i) {
            const double lx = std::log(lo) + (std::log(hi) - std::log(lo)) * i / (per_side - 1);
            const double mag = std::abs(spec.spectrum(sign * std::exp(lx)));
            if (mag < 1e-13) continue;
            const double ly = std::log(mag);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++count;
        }
    }
    if (count < 4) return std::nullopt;
    const double den = count * sxx - sx * sx;
    return (count * sxy - sx * sy) / den;
}

EnvelopeFit fit_envelope(const GeneratorSpec& spec, int n) {
    EnvelopeFit fit;
    const double need_alpha = 0.5 * (n - 1);
    const double need_gap = 0.5 * (n + 3);
    const auto s0 = envelope_slope(spec, 1e-3, 1e-1);
    const auto si = envelope_slope(spec, 1e2, 1e4);
    fit.alpha = s0 ? *s0 : need_alpha + 1.0;
    fit.beta = si ? fit.alpha - *si : fit.alpha + need_gap + 1.0;

    double K = 0.0;
    for (double sign : {1.0, -1.0}) {
        for (int i = 0; i <= 900; ++i) {
            const double g = std::pow(10.0, -4.0 + 9.0 * i / 900.0);
            const double mag = std::abs(spec.spectrum(sign * g));
            if (mag == 0.0) continue;
            const double env = std::pow(g, fit.alpha) * std::pow(1.0 + g, -fit.beta);
            K = std::max(K, mag / env);
        }
    }
    fit.K = K;
    fit.holds = std::isfinite(K) && K > 0.0 && fit.alpha > need_alpha &&
                fit.beta > fit.alpha + need_gap;
    return fit;
}

}  // namespace

SetupReport check_general_setup(const GeneratorSpec& spec, double a0, int n) {
    if (!(a0 > 1.0)) throw InvalidParameter("check_general_setup: a0 must be > 1");
    if (n < 2) throw InvalidParameter("check_general_setup: n must be >= 2");
    SetupReport report;
    report.a0 = a0;
    report.n = n;
    const SpectralIntegral i = weighted_spectral_integral(spec, static_cast<double>(n));
    report.condition_i = {i.finite, i.value};
    report.condition_ii = dyadic_infimum(spec, a0, n);
    report.condition_iii = fit_envelope(spec, n);
    return report;
}

nlohmann::json SetupReport::to_json() const {
    auto num = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    };
    return {
        {"a0", a0},
        {"n", n},
        {"condition_i", {{"holds", condition_i.holds}, {"integral", num(condition_i.value)}}},
        {"condition_ii", {{"holds", condition_ii.holds}, {"infimum", num(condition_ii.value)}}},
        {"condition_iii",
         {{"holds", condition_iii.holds},
          {"K", num(condition_iii.K)},
          {"alpha", condition_iii.alpha},
          {"beta", condition_iii.beta}}},
        {"all_hold", all_hold()},
    };
}

}  // namespace ridgeframe

#include "scales.hpp"

#include <algorithm>
#include <cmath>

#include "ridgeframe/fft.hpp"
#include "ridgeframe/parallel.hpp"

namespace ridgeframe::detail {

Complex cis(double t) {
    t -= std::round(t);
    return {std::cos(2.0 * kPi * t), std::sin(2.0 * kPi * t)};
}

std::vector<Complex> scaled_dft(std::span<const Complex> c, double x0, double dx, double t0,
                                double dt, std::size_t count, int sign) {
    const double sg = sign;
    std::vector<Complex> a(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) a[k] = c[k] * cis(sg * static_cast<double>(k) * dx * t0);
    std::vector<Complex> y(count);
    const fft::ChirpZ cz(c.size(), -sg * dx * dt, 0, count);
    cz.apply(a, y);
    const Complex base = cis(sg * x0 * t0);
    for (std::size_t j = 0; j < count; ++j) y[j] *= base * cis(sg * x0 * static_cast<double>(j) * dt);
    return y;
}

SampledSignal evaluate_on(const Spectrum& S, const Grid1D& out) {
    auto y = scaled_dft(S.values(), S.gamma(0), S.dgamma(), out.x0, out.dx, out.size, +1);
    for (auto& v : y) v *= S.dgamma();
    return SampledSignal(out, std::move(y));
}

Grid1D lift_grid(std::size_t m) {
    const double dx = 2.0 / static_cast<double>(m) / 8.0;
    return {-2.0, dx, 32 * m};
}

double mother_band(const GeneratorSpec& g) {
    if (const auto band = g.spectral_band()) return band->second;
    double peak = 0.0;
    std::vector<std::pair<double, double>> probe;
    for (int i = 0; i <= 1000; ++i) {
        const double x = std::pow(10.0, -4.0 + 10.0 * i / 1000.0);
        const double v = std::max(std::abs(g.spectrum(x)), std::abs(g.spectrum(-x)));
        probe.emplace_back(x, v);
        peak = std::max(peak, v);
    }
    double hi = probe.front().first;
    for (const auto& [x, v] : probe)
        if (v >= 1e-8 * peak) hi = x;
    return hi;
}

ScaleGrid scale_grid(double scale, double b, int n, double band, double essential_radius,
                     double min_span) {
    ScaleGrid g;
    g.scale = scale;
    while (static_cast<double>(g.step) < 2.0 * b * band) g.step *= 2;
    const double dx = b * scale / static_cast<double>(g.step);
    const double span = std::max(min_span, 4.0 * ridge_reach(n) + 2.0 * scale * (essential_radius + 40.0));
    const auto half = static_cast<std::size_t>(std::ceil(0.5 * span / dx));
    g.grid = {-static_cast<double>(half) * dx, dx, 2 * half};
    return g;
}

ScaleCoefficients scale_coefficients(const SampledSignal& R, const GeneratorSpec& mother,
                                     const ScaleGrid& sg, double b, int n, double alpha,
                                     long l_min, long l_max, double essential_radius,
                                     double nyquist) {
    const Grid1D& g = sg.grid;
    auto F = scaled_dft(R.samples(), R.x0(), R.dx(), g.gamma(0), g.dgamma(), g.size, -1);
    const double amp = std::sqrt(sg.scale);
    for (std::size_t k = 0; k < g.size; ++k) {
        const double gam = g.gamma(k);
        if (std::abs(gam) > nyquist * (1.0 + 1e-12)) {
            F[k] = {};
            continue;
        }
        F[k] *= R.dx() * abs_power(gam, alpha) * std::conj(amp * mother.spectrum(sg.scale * gam));
    }
    const SampledSignal h = inverse_ft(Spectrum(g, std::move(F)));
    const long centre = static_cast<long>(g.size / 2);
    const long lo = -centre / sg.step, hi = (static_cast<long>(g.size) - 1 - centre) / sg.step;
    ScaleCoefficients out;
    for (long l = lo; l <= hi; ++l) {
        const double t = static_cast<double>(l) * b * sg.scale;
        const Complex c = h[static_cast<std::size_t>(centre + l * sg.step)];
        const bool reaches = std::abs(t) <= ridge_reach(n) + sg.scale * essential_radius;
        if (l < l_min || l > l_max || !reaches)
            out.dropped += std::norm(c);
        else
            out.kept.emplace_back(l, c);
    }
    return out;
}

namespace {

constexpr std::size_t kBlock = 8;

GridField pairwise(std::vector<GridField>& parts, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return std::move(parts[lo]);
    const std::size_t mid = lo + (hi - lo) / 2;
    GridField a = pairwise(parts, lo, mid);
    a += pairwise(parts, mid, hi);
    return a;
}

double pairwise(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t mid = v.size() / 2;
    return pairwise(v.subspan(0, mid)) + pairwise(v.subspan(mid));
}

}  // namespace

GridField deterministic_sum(std::size_t count, int n, std::size_t m,
                            const std::function<GridField(std::size_t)>& term) {
    if (count == 0) return GridField(n, m);
    std::vector<GridField> blocks;
    for (std::size_t start = 0; start < count; start += kBlock) {
        const std::size_t len = std::min(kBlock, count - start);
        std::vector<GridField> parts(len);
        parallel_for(len, [&](std::size_t i) { parts[i] = term(start + i); });
        blocks.push_back(pairwise(parts, 0, len));
    }
    return pairwise(blocks, 0, blocks.size());
}

double deterministic_sum(std::span<const double> v) { return pairwise(v); }

}  // namespace ridgeframe::detail

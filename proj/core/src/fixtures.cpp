#include "ridgeframe/fixtures.hpp"

#include <cmath>

#include "ridgeframe/errors.hpp"

namespace ridgeframe {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (tag + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    // Box-Muller; one value per call keeps the sequence simple.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::vector<Bump> random_bumps(int n, std::uint64_t seed, std::size_t count, double width_lo,
                               double width_hi) {
    if (!(width_lo > 0.0) || width_hi < width_lo) throw InvalidParameter("random_bumps: bad width range");
    Rng rng(seed);
    std::vector<Bump> list;
    for (std::size_t b = 0; b < count; ++b) {
        Bump bump;
        for (int a = 0; a < n; ++a) bump.centre.push_back(rng.uniform(-0.25, 0.25));
        bump.width = rng.uniform(width_lo, width_hi);
        const double re = rng.normal();
        bump.amplitude = {re, rng.normal()};
        list.push_back(bump);
    }
    return list;
}

GridField bump_field(std::size_t m, std::span<const Bump> bumps) {
    if (bumps.empty()) throw InvalidInput("bump_field: no bumps");
    const int n = static_cast<int>(bumps.front().centre.size());
    return GridField::from_function(n, m, [&](std::span<const double> x) {
        Complex v{};
        for (const auto& b : bumps) {
            double r2 = 0.0;
            for (std::size_t a = 0; a < x.size(); ++a) {
                const double d = x[a] - b.centre[a];
                r2 += d * d;
            }
            v += b.amplitude * std::exp(-kPi * r2 / (b.width * b.width));
        }
        return v;
    });
}

Complex bump_spectrum(std::span<const Bump> bumps, std::span<const double> xi) {
    Complex v{};
    double r2 = 0.0;
    for (double x : xi) r2 += x * x;
    for (const auto& b : bumps) {
        double phase = 0.0;
        for (std::size_t a = 0; a < xi.size(); ++a) phase += b.centre[a] * xi[a];
        const double mag = std::pow(b.width, static_cast<double>(xi.size())) * std::exp(-kPi * b.width * b.width * r2);
        v += b.amplitude * mag * std::polar(1.0, -2.0 * kPi * phase);
    }
    return v;
}

GridField random_bump_field(int n, std::size_t m, std::uint64_t seed, std::size_t bumps) {
    return bump_field(m, random_bumps(n, seed, bumps));
}

GridField gaussian_field(int n, std::size_t m, double sigma, bool unit_norm) {
    if (!(sigma > 0.0)) throw InvalidParameter("gaussian_field: sigma must be > 0");
    GridField f = GridField::from_function(n, m, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return Complex(std::exp(-kPi * r2 / (sigma * sigma)));
    });
    if (unit_norm) f *= 1.0 / f.norm();
    return f;
}

std::vector<Direction> random_directions(int n, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Direction> out;
    out.reserve(count);
    while (out.size() < count) {
        std::vector<double> v(static_cast<std::size_t>(n));
        double s = 0.0;
        for (auto& c : v) {
            c = rng.normal();
            s += c * c;
        }
        if (s < 1e-12) continue;
        for (auto& c : v) c /= std::sqrt(s);
        out.emplace_back(std::move(v));
    }
    return out;
}

std::vector<SampledSignal> random_test_signals(const Grid1D& grid, std::size_t count,
                                               std::uint64_t seed, const PacketFamily& fam) {
    Rng rng(seed);
    std::vector<SampledSignal> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        struct Packet {
            double c, w, xi;
            Complex amp;
        };
        std::vector<Packet> ps;
        for (std::size_t p = 0; p < fam.packets; ++p) {
            Packet pk;
            pk.c = rng.uniform(-fam.center_spread, fam.center_spread);
            pk.w = rng.uniform(fam.width_lo, fam.width_hi);
            pk.xi = rng.uniform(fam.freq_lo, fam.freq_hi) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
            pk.amp = {rng.normal(), rng.normal()};
            ps.push_back(pk);
        }
        out.push_back(SampledSignal::from_function(grid, [&](double x) {
            Complex v{};
            for (const auto& p : ps) {
                const double d = (x - p.c) / p.w;
                double ph = p.xi * x;
                ph -= std::round(ph);
                v += p.amp * std::exp(-kPi * d * d) * Complex(std::cos(2 * kPi * ph), std::sin(2 * kPi * ph));
            }
            return v;
        }));
    }
    return out;
}

SampledSignal band_bump_signal(const Grid1D& grid, double lo, double hi, double shift) {
    if (!(lo >= 0.0 && hi > lo)) throw InvalidParameter("band_bump_signal: need 0 <= lo < hi");
    auto sp = Spectrum::from_function(grid, [&](double g) -> Complex {
        const double a = std::abs(g);
        if (a <= lo || a >= hi) return {};
        const double v = std::exp(-1.0 / ((a - lo) * (hi - a)));
        double ph = g * shift;
        ph -= std::round(ph);
        return v * Complex(std::cos(2 * kPi * ph), -std::sin(2 * kPi * ph));
    });
    SampledSignal s = inverse_ft(sp);
    const double nrm = s.norm();
    if (nrm > 0.0) s *= 1.0 / nrm;
    return s;
}

}  // namespace ridgeframe

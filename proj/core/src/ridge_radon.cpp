#include "ridgeframe/ridge_radon.hpp"

#include <cmath>

#include "ridgeframe/errors.hpp"
#include "ridgeframe/fft.hpp"
#include "ridgeframe/parallel.hpp"

namespace ridgeframe {
namespace {

constexpr int kOversample = 8;

Complex unit_phase(double turns) {
    turns -= std::round(turns);
    return {std::cos(2.0 * kPi * turns), -std::sin(2.0 * kPi * turns)};
}

long aligned_offset(const Grid1D& from, const Grid1D& to) {
    if (std::abs(from.dx - to.dx) > 1e-12 * from.dx) return -1;
    const double off = (from.x0 - to.x0) / to.dx;
    const double r = std::round(off);
    if (std::abs(off - r) > 1e-6 || r < 0.0) return -1;
    const auto o = static_cast<long>(r);
    if (static_cast<std::size_t>(o) + from.size > to.size) return -1;
    return o;
}

}  // namespace

Grid1D radon_grid(const GridField& f) {
    const double h = f.spacing();
    return {-2.0, h, 2 * f.per_axis()};
}

Grid1D long_grid(const GridField& f, double span) {
    const double h = f.spacing();
    const auto half = static_cast<std::size_t>(std::ceil(0.5 * span / h - 1e-9));
    const std::size_t min_half = f.per_axis();  // 2/h
    const std::size_t hs = std::max(half, min_half);
    return {-static_cast<double>(hs) * h, h, 2 * hs};
}

SampledSignal embed(const SampledSignal& s, const Grid1D& target) {
    const long off = aligned_offset(s.grid(), target);
    if (off < 0) throw InvalidInput("embed: target grid is not an aligned superset");
    SampledSignal out = SampledSignal::zeros(target);
    for (std::size_t j = 0; j < s.size(); ++j) out[static_cast<std::size_t>(off) + j] = s[j];
    return out;
}

Complex interpolate(const SampledSignal& g, double t) {
    const std::size_t n = g.size();
    if (n < 6) throw DomainError("interpolate: need at least 6 samples");
    const double pos = (t - g.x0()) / g.dx();
    if (pos < -1e-9 || pos > static_cast<double>(n - 1) + 1e-9)
        throw DomainError("interpolate: point " + format_double(t) + " outside sampled domain");
    long j = static_cast<long>(std::floor(pos)) - 2;
    j = std::clamp(j, 0L, static_cast<long>(n) - 6);
    Complex acc{};
    for (int a = 0; a < 6; ++a) {
        double w = 1.0;
        for (int b = 0; b < 6; ++b)
            if (b != a) w *= (pos - static_cast<double>(j + b)) / static_cast<double>(a - b);
        acc += w * g[static_cast<std::size_t>(j + a)];
    }
    return acc;
}

GridField ridge_lift(const SampledSignal& g, const Direction& u, std::size_t m) {
    GridField out(u.dim(), m);
    const double reach = std::sqrt(static_cast<double>(u.dim()));
    const double last = g.x(g.size() - 1);
    if (g.x0() > -reach || last < reach) {
        // Only complain about points that are actually hit.
        double lo = 0.0, hi = 0.0;
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double t = u.dot(out.point(k));
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        if (lo < g.x0() || hi > last)
            throw DomainError("ridge_lift: u.x leaves the sampled domain of g");
    }
    parallel_for(out.size(), [&](std::size_t k) { out[k] = interpolate(g, u.dot(out.point(k))); });
    return out;
}

GridField ridge_lift(const GeneratorSpec& g, const Direction& u, std::size_t m, double alpha) {
    GridField probe(u.dim(), m);
    const Grid1D coarse = long_grid(probe);
    const Grid1D fine{coarse.x0, coarse.dx / kOversample, coarse.size * kOversample};
    return ridge_lift(g.sample(fine, alpha), u, m);
}

SampledSignal weighted_generator(const GeneratorSpec& g, int n, const Grid1D& grid) {
    if (n < 2) throw InvalidParameter("weighted_generator: n must be >= 2");
    return g.sample(grid, 0.5 * (n - 1));
}

SampledSignal weighted_generator(const SampledSignal& g, int n) {
    if (n < 2) throw InvalidParameter("weighted_generator: n must be >= 2");
    return frac_diff(g, 0.5 * (n - 1));
}

// ---------------------------------------------------------------------------

SampledSignal radon_direct(const GridField& f, const Direction& u, const Grid1D& s_grid) {
    if (u.dim() != f.dim()) throw InvalidInput("radon_direct: direction/field dimension mismatch");
    const int n = f.dim();
    const double h = f.spacing();
    const auto perp = u.complement();
    const long J = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n)) / h)) + 1;
    SampledSignal out = SampledSignal::zeros(s_grid);
    parallel_for(s_grid.size, [&](std::size_t k) {
        const double s = s_grid.x(k);
        std::vector<double> x(static_cast<std::size_t>(n));
        Complex acc{};
        if (n == 2) {
            for (long j = -J; j <= J; ++j) {
                const double t = static_cast<double>(j) * h;
                for (int a = 0; a < 2; ++a)
                    x[static_cast<std::size_t>(a)] = s * u[static_cast<std::size_t>(a)] +
                                                     t * perp[0][static_cast<std::size_t>(a)];
                acc += f.interpolate(x);
            }
            acc *= h;
        } else {
            for (long j1 = -J; j1 <= J; ++j1) {
                const double t1 = static_cast<double>(j1) * h;
                for (long j2 = -J; j2 <= J; ++j2) {
                    const double t2 = static_cast<double>(j2) * h;
                    for (std::size_t a = 0; a < 3; ++a)
                        x[a] = s * u[a] + t1 * perp[0][a] + t2 * perp[1][a];
                    acc += f.interpolate(x);
                }
            }
            acc *= h * h;
        }
        out[k] = acc;
    });
    return out;
}

SampledSignal radon_direct(const GridField& f, const Direction& u) {
    return radon_direct(f, u, radon_grid(f));
}

Spectrum ray_spectrum(const GridField& f, const Direction& u, const Grid1D& s_grid) {
    if (u.dim() != f.dim()) throw InvalidInput("ray_spectrum: direction/field dimension mismatch");
    const int n = f.dim();
    const std::size_t m = f.per_axis();
    const std::size_t count = s_grid.size;
    const double h = f.spacing();
    const double deta = s_grid.dgamma();
    const long p0 = s_grid.first_bin();
    const auto vals = f.values();
    const auto last = static_cast<std::size_t>(n - 1);

    // x_i = -1 + i h, so exp(-2 pi i eta u_a x_i) = exp(2 pi i eta u_a) B_a^i with
    // B_a = exp(-2 pi i eta u_a h). The last axis is summed for all eta at once
    // by a chirp-z transform; the remaining axes by recurrences in i.
    const fft::ChirpZ cz(m, deta * u[last] * h, p0, count);
    auto step = [&](std::size_t a, std::size_t k) {
        return unit_phase(s_grid.gamma(k) * u[a] * h);
    };

    std::vector<std::vector<Complex>> partial(m, std::vector<Complex>(count));
    parallel_for(m, [&](std::size_t i) {
        auto& out = partial[i];
        if (n == 2) {
            cz.apply(vals.subspan(i * m, m), out);
            return;
        }
        std::vector<Complex> row(count), power(count, Complex(1.0)), b(count);
        for (std::size_t k = 0; k < count; ++k) b[k] = step(1, k);
        for (std::size_t j = 0; j < m; ++j) {
            cz.apply(vals.subspan((i * m + j) * m, m), row);
            for (std::size_t k = 0; k < count; ++k) {
                out[k] += power[k] * row[k];
                power[k] *= b[k];
            }
        }
    });

    const double band = 0.5 / h;
    const double vol = f.cell_volume();
    std::vector<Complex> out(count);
    parallel_for(count, [&](std::size_t k) {
        const double eta = s_grid.gamma(k);
        if (std::abs(eta) > band * (1.0 + 1e-12)) return;
        const Complex b = step(0, k);
        Complex acc{};
        for (std::size_t i = m; i-- > 0;) acc = acc * b + partial[i][k];
        double shift = 0.0;
        for (std::size_t a = 0; a < static_cast<std::size_t>(n); ++a) shift += eta * u[a];
        out[k] = vol * std::conj(unit_phase(shift)) * acc;
    });
    return Spectrum(s_grid, std::move(out));
}

SampledSignal radon_slice(const GridField& f, const Direction& u, const Grid1D& s_grid) {
    return inverse_ft(ray_spectrum(f, u, s_grid));
}

SampledSignal radon_slice(const GridField& f, const Direction& u) {
    return radon_slice(f, u, radon_grid(f));
}

// ---------------------------------------------------------------------------

namespace {

SampledSignal radon_on(const GridField& f, const Direction& u, const Grid1D& grid) {
    const SampledSignal shortr = radon_slice(f, u);
    if (aligned_offset(shortr.grid(), grid) >= 0) return embed(shortr, grid);
    return radon_slice(f, u, grid);
}

void check_routes(Complex fast, Complex slow) {
    const double scale = std::max(std::abs(fast), std::abs(slow));
    if (std::abs(fast - slow) > 1e-6 * scale + 1e-14)
        throw ConsistencyError("ridge_inner: 1-D and n-D routes disagree (" + format_double(std::abs(fast - slow)) +
                               " vs scale " + format_double(scale) + ")");
}

}  // namespace

Complex ridge_inner(const GridField& f, const GeneratorSpec& g, const Direction& u, bool verify) {
    const Grid1D grid = long_grid(f);
    const Complex value = inner(radon_on(f, u, grid), g.sample(grid));
    if (verify) check_routes(value, ridge_inner_direct(f, g, u));
    return value;
}

Complex ridge_inner(const GridField& f, const SampledSignal& g, const Direction& u, bool verify) {
    const Complex value = inner(radon_on(f, u, g.grid()), g);
    if (verify) check_routes(value, ridge_inner_direct(f, g, u));
    return value;
}

Complex ridge_inner_direct(const GridField& f, const GeneratorSpec& g, const Direction& u) {
    return inner(f, ridge_lift(g, u, f.per_axis()));
}

Complex ridge_inner_direct(const GridField& f, const SampledSignal& g, const Direction& u) {
    return inner(f, ridge_lift(g, u, f.per_axis()));
}

Complex ridge_coefficient(const GridField& f, const GeneratorSpec& g, const Direction& u) {
    const Grid1D grid = long_grid(f);
    const SampledSignal r = frac_diff(radon_on(f, u, grid), 0.5 * (f.dim() - 1));
    return inner(r, g.sample(grid));
}

Complex ridge_coefficient_weighted(const GridField& f, const GeneratorSpec& g, const Direction& u) {
    const Grid1D grid = long_grid(f);
    return inner(radon_on(f, u, grid), weighted_generator(g, f.dim(), grid));
}

}  // namespace ridgeframe

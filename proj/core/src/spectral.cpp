#include "ridgeframe/spectral.hpp"

#include <cmath>

#include "ridgeframe/errors.hpp"
#include "ridgeframe/fft.hpp"

namespace ridgeframe {
namespace {

std::size_t dft_bin(long m, std::size_t n) {
    const long nn = static_cast<long>(n);
    return static_cast<std::size_t>(((m % nn) + nn) % nn);
}

// exp(sign * 2 pi i * m * ratio) with the argument reduced mod 1 before the
// trig call so large x0*gamma products keep full phase accuracy.
Complex unit_phase(long m, double ratio, double sign) {
    double t = static_cast<double>(m) * ratio;
    t -= std::round(t);
    const double a = sign * 2.0 * kPi * t;
    return {std::cos(a), std::sin(a)};
}

void validate_grid(const Grid1D& g) {
    if (!(g.dx > 0.0) || !std::isfinite(g.dx) || !std::isfinite(g.x0))
        throw InvalidInput("sample spacing must be positive and finite");
}

}  // namespace

Grid1D Grid1D::centered(double length, std::size_t size) {
    if (size == 0 || !(length > 0.0)) throw InvalidInput("empty grid");
    return Grid1D{-0.5 * length, length / static_cast<double>(size), size};
}

bool Grid1D::same_as(const Grid1D& o, double rel_tol) const {
    return size == o.size && std::abs(dx - o.dx) <= rel_tol * dx &&
           std::abs(x0 - o.x0) <= rel_tol * std::max(1.0, std::abs(x0)) + rel_tol * dx;
}

SampledSignal::SampledSignal(Grid1D grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
    grid_.size = samples_.size();
    validate_grid(grid_);
}

SampledSignal::SampledSignal(double x0, double dx, std::vector<Complex> samples)
    : SampledSignal(Grid1D{x0, dx, samples.size()}, std::move(samples)) {}

SampledSignal SampledSignal::zeros(const Grid1D& grid) {
    return SampledSignal(grid, std::vector<Complex>(grid.size));
}

SampledSignal SampledSignal::from_function(const Grid1D& grid,
                                           const std::function<Complex(double)>& f) {
    std::vector<Complex> v(grid.size);
    for (std::size_t j = 0; j < grid.size; ++j) v[j] = f(grid.x(j));
    return SampledSignal(grid, std::move(v));
}

double SampledSignal::norm2() const {
    double acc = 0.0;
    for (const auto& v : samples_) acc += std::norm(v);
    return acc * grid_.dx;
}

double SampledSignal::norm() const { return std::sqrt(norm2()); }

SampledSignal& SampledSignal::operator*=(Complex c) {
    for (auto& v : samples_) v *= c;
    return *this;
}

SampledSignal& SampledSignal::operator+=(const SampledSignal& o) {
    if (!grid_.same_as(o.grid_)) throw InvalidInput("signal grids differ");
    for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += o.samples_[j];
    return *this;
}

SampledSignal operator*(Complex c, SampledSignal s) { return s *= c; }
SampledSignal operator+(SampledSignal a, const SampledSignal& b) { return a += b; }
SampledSignal operator-(SampledSignal a, const SampledSignal& b) {
    return a += Complex(-1.0) * b;
}

Spectrum::Spectrum(Grid1D spatial, std::vector<Complex> values)
    : spatial_(spatial), values_(std::move(values)) {
    spatial_.size = values_.size();
    validate_grid(spatial_);
}

Spectrum Spectrum::from_function(const Grid1D& spatial,
                                 const std::function<Complex(double)>& f) {
    std::vector<Complex> v(spatial.size);
    for (std::size_t k = 0; k < spatial.size; ++k) v[k] = f(spatial.gamma(k));
    return Spectrum(spatial, std::move(v));
}

std::vector<double> Spectrum::frequencies() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < size(); ++k) out[k] = gamma(k);
    return out;
}

double Spectrum::norm2() const {
    double acc = 0.0;
    for (const auto& v : values_) acc += std::norm(v);
    return acc * dgamma();
}

Spectrum forward_ft(const SampledSignal& s) {
    const std::size_t n = s.size();
    if (n == 0) throw InvalidInput("forward_ft: empty signal");
    std::vector<Complex> buf(s.samples().begin(), s.samples().end());
    fft::transform(buf, fft::Sign::Forward);
    const Grid1D& g = s.grid();
    const double ratio = g.x0 / g.length();
    std::vector<Complex> out(n);
    const long m0 = g.first_bin();
    for (std::size_t k = 0; k < n; ++k) {
        const long m = m0 + static_cast<long>(k);
        out[k] = g.dx * unit_phase(m, ratio, -1.0) * buf[dft_bin(m, n)];
    }
    return Spectrum(g, std::move(out));
}

SampledSignal inverse_ft(const Spectrum& sp) {
    const std::size_t n = sp.size();
    if (n == 0) throw InvalidInput("inverse_ft: empty spectrum");
    const Grid1D& g = sp.spatial_grid();
    const double ratio = g.x0 / g.length();
    std::vector<Complex> buf(n);
    const long m0 = g.first_bin();
    for (std::size_t k = 0; k < n; ++k) {
        const long m = m0 + static_cast<long>(k);
        buf[dft_bin(m, n)] = sp[k] * unit_phase(m, ratio, 1.0);
    }
    fft::transform(buf, fft::Sign::Backward);
    const double dg = g.dgamma();
    for (auto& v : buf) v *= dg;
    return SampledSignal(g, std::move(buf));
}

double abs_power(double gamma, double alpha) {
    if (alpha == 0.0) return 1.0;
    const double a = std::abs(gamma);
    if (a == 0.0) return 0.0;
    if (alpha == 1.0) return a;
    if (alpha == 0.5) return std::sqrt(a);
    return std::pow(a, alpha);
}

SampledSignal apply_multiplier(const SampledSignal& s,
                               const std::function<Complex(double)>& m) {
    Spectrum sp = forward_ft(s);
    for (std::size_t k = 0; k < sp.size(); ++k) sp[k] *= m(sp.gamma(k));
    return inverse_ft(sp);
}

SampledSignal frac_diff(const SampledSignal& s, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidParameter("frac_diff: alpha must be >= 0");
    if (s.size() == 0) throw InvalidInput("frac_diff: empty signal");
    if (alpha == 0.0) return s;
    return apply_multiplier(s, [alpha](double g) { return Complex(abs_power(g, alpha)); });
}

Complex inner(const SampledSignal& a, const SampledSignal& b) {
    if (!a.grid().same_as(b.grid())) throw InvalidInput("inner: grids differ");
    Complex acc{};
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]);
    return acc * a.dx();
}

double relative_l2(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw InvalidInput("relative_l2: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        num += std::norm(a[j] - b[j]);
        den += std::norm(b[j]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double relative_l2(const SampledSignal& a, const SampledSignal& b) {
    if (!a.grid().same_as(b.grid())) throw InvalidInput("relative_l2: grids differ");
    return relative_l2(a.samples(), b.samples());
}

}  // namespace ridgeframe

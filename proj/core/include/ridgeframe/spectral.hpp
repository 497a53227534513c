#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ridgeframe {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Uniform sample positions x_j = x0 + j*dx, j in [0, size).
struct Grid1D {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t size = 0;

    /// size points covering [-length/2, length/2).
    static Grid1D centered(double length, std::size_t size);

    double x(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
    double length() const { return dx * static_cast<double>(size); }
    /// Spacing of the matching frequency grid, 1/(size*dx).
    double dgamma() const { return 1.0 / length(); }
    /// Integer index of the first (most negative) frequency bin. The grid is
    /// centered; for even sizes the Nyquist bin sits on the positive side.
    long first_bin() const { return -static_cast<long>((size - 1) / 2); }
    double gamma(std::size_t k) const {
        return static_cast<double>(first_bin() + static_cast<long>(k)) * dgamma();
    }
    bool same_as(const Grid1D& o, double rel_tol = 1e-12) const;
};

/// Uniformly sampled complex function on an interval of R.
class SampledSignal {
public:
    SampledSignal() = default;
    SampledSignal(Grid1D grid, std::vector<Complex> samples);
    SampledSignal(double x0, double dx, std::vector<Complex> samples);

    static SampledSignal zeros(const Grid1D& grid);
    static SampledSignal from_function(const Grid1D& grid,
                                       const std::function<Complex(double)>& f);

    const Grid1D& grid() const { return grid_; }
    double x0() const { return grid_.x0; }
    double dx() const { return grid_.dx; }
    std::size_t size() const { return samples_.size(); }
    double x(std::size_t j) const { return grid_.x(j); }

    std::span<const Complex> samples() const { return samples_; }
    std::span<Complex> samples() { return samples_; }
    const Complex& operator[](std::size_t j) const { return samples_[j]; }
    Complex& operator[](std::size_t j) { return samples_[j]; }

    /// dx * sum |s_j|^2
    double norm2() const;
    double norm() const;

    SampledSignal& operator*=(Complex c);
    SampledSignal& operator+=(const SampledSignal& o);

private:
    Grid1D grid_{};
    std::vector<Complex> samples_;
};

SampledSignal operator*(Complex c, SampledSignal s);
SampledSignal operator+(SampledSignal a, const SampledSignal& b);
SampledSignal operator-(SampledSignal a, const SampledSignal& b);

/// Values of a transform on the centered frequency grid dual to a spatial grid.
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(Grid1D spatial, std::vector<Complex> values);

    static Spectrum from_function(const Grid1D& spatial,
                                  const std::function<Complex(double)>& f);

    const Grid1D& spatial_grid() const { return spatial_; }
    std::size_t size() const { return values_.size(); }
    double dgamma() const { return spatial_.dgamma(); }
    double gamma(std::size_t k) const { return spatial_.gamma(k); }
    std::vector<double> frequencies() const;

    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }
    const Complex& operator[](std::size_t k) const { return values_[k]; }
    Complex& operator[](std::size_t k) { return values_[k]; }

    /// dgamma * sum |v_k|^2
    double norm2() const;

private:
    Grid1D spatial_{};
    std::vector<Complex> values_;
};

/// Riemann approximation of \int f(x) exp(-2 pi i x gamma) dx on the
/// centered frequency grid, phase-corrected for x0 != 0.
Spectrum forward_ft(const SampledSignal& s);
SampledSignal inverse_ft(const Spectrum& sp);

/// |gamma|^alpha with 0^alpha = 0 for alpha > 0 and 1 for alpha = 0.
double abs_power(double gamma, double alpha);

/// Pointwise Fourier multiplier m(gamma) applied through forward/inverse.
SampledSignal apply_multiplier(const SampledSignal& s,
                               const std::function<Complex(double)>& m);

/// Fractional differential operator (|gamma|^alpha s^)^v.
SampledSignal frac_diff(const SampledSignal& s, double alpha);

/// <a, b> = dx * sum a_j conj(b_j); grids must match.
Complex inner(const SampledSignal& a, const SampledSignal& b);

/// Relative L2 distance ||a - b|| / ||b|| (absolute when b is zero).
double relative_l2(const SampledSignal& a, const SampledSignal& b);
double relative_l2(std::span<const Complex> a, std::span<const Complex> b);

/// Signal CSV: header `x,re,im` (or `gamma,re,im` for spectra), 17 significant
/// digits, LF endings. with_modulus appends an `abs` column.
void write_signal_csv(std::ostream& os, const SampledSignal& s, bool with_modulus = false);
void write_spectrum_csv(std::ostream& os, const Spectrum& sp, bool with_modulus = false);
void write_signal_csv(const std::string& path, const SampledSignal& s, bool with_modulus = false);
void write_spectrum_csv(const std::string& path, const Spectrum& sp, bool with_modulus = false);
SampledSignal read_signal_csv(std::istream& is);
SampledSignal read_signal_csv(const std::string& path);

/// %.17g formatting used by every text artifact.
std::string format_double(double v);

}  // namespace ridgeframe

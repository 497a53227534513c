#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ridgeframe/spectral.hpp"

namespace ridgeframe {

/// Unit vector in R^n. Inputs within 1e-6 of unit length are renormalized,
/// anything further off is rejected with InvalidParameter.
class Direction {
public:
    explicit Direction(std::vector<double> coords);
    static Direction from_angle(double theta);

    int dim() const { return static_cast<int>(coords_.size()); }
    const std::vector<double>& coords() const { return coords_; }
    double operator[](std::size_t i) const { return coords_[i]; }
    double dot(std::span<const double> x) const;

    /// Orthonormal basis of the complement of u (n - 1 vectors).
    std::vector<std::vector<double>> complement() const;

private:
    std::vector<double> coords_;
};

/// Samples of a complex function on Q = [-1, 1]^n at x_i = -1 + i*h,
/// h = 2/m, i in [0, m) on every axis. Last axis varies fastest.
class GridField {
public:
    GridField() = default;
    GridField(int n, std::size_t m);

    static GridField from_function(int n, std::size_t m,
                                   const std::function<Complex(std::span<const double>)>& f);

    int dim() const { return n_; }
    std::size_t per_axis() const { return m_; }
    double spacing() const { return 2.0 / static_cast<double>(m_); }
    double coord(std::size_t i) const { return -1.0 + static_cast<double>(i) * spacing(); }
    std::size_t size() const { return values_.size(); }
    /// h^n, the volume of one cell.
    double cell_volume() const;

    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }
    Complex& operator[](std::size_t flat) { return values_[flat]; }
    const Complex& operator[](std::size_t flat) const { return values_[flat]; }

    /// Coordinates of the sample with the given flat index.
    std::vector<double> point(std::size_t flat) const;

    /// Multilinear interpolation; zero outside the sampled cube.
    Complex interpolate(std::span<const double> x) const;

    double norm2() const;
    double norm() const;
    double max_abs() const;
    /// Largest |value| on the outermost layer of samples.
    double boundary_max_abs() const;

    GridField& operator*=(Complex c);
    GridField& operator+=(const GridField& o);

    bool same_shape(const GridField& o) const { return n_ == o.n_ && m_ == o.m_; }

private:
    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<Complex> values_;
};

GridField operator*(Complex c, GridField f);
GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);

/// h^n sum a conj(b); shapes must match.
Complex inner(const GridField& a, const GridField& b);
double relative_l2(const GridField& a, const GridField& b);

/// Field rotated by theta in the (x1, x2) plane: result(x) = f(R_{-theta} x),
/// sampled by bilinear interpolation.
GridField rotate(const GridField& f, double theta);

// Binary RFGRID format, little-endian.
void write_field(std::ostream& os, const GridField& f);
void write_field(const std::string& path, const GridField& f);
GridField read_field(std::istream& is);
GridField read_field(const std::string& path);

/// `x1,x2,re,im` for n = 2.
void write_field_csv(std::ostream& os, const GridField& f);
void write_field_csv(const std::string& path, const GridField& f);
GridField read_field_csv(std::istream& is);
GridField read_field_csv(const std::string& path);

/// Binary PGM (P5) of |value| scaled so the maximum maps to 255. For n = 3
/// the central x1 slice is rendered.
void write_field_ppm(const std::string& path, const GridField& f);

}  // namespace ridgeframe

#pragma once

// Internal helpers shared by the semi-discrete and fully discrete ridge
// systems: per-scale working grids and exact band-limited evaluation.

#include <cmath>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ridgeframe/generators.hpp"
#include "ridgeframe/grid_field.hpp"
#include "ridgeframe/spectral.hpp"

namespace ridgeframe::detail {

// exp(2 pi i t), argument reduced mod 1.
Complex cis(double t);

inline double alpha_of(int n) { return 0.5 * (n - 1); }
inline double ridge_reach(int n) { return std::sqrt(static_cast<double>(n)); }

// y_j = sum_k c_k exp(sign 2 pi i (x0 + k dx)(t0 + j dt)) for j < count.
std::vector<Complex> scaled_dft(std::span<const Complex> c, double x0, double dx, double t0,
                                double dt, std::size_t count, int sign);

// Inverse transform of S evaluated at the nodes of `out`.
SampledSignal evaluate_on(const Spectrum& S, const Grid1D& out);

// Fine s-grid over [-2, 2) used for ridge lifts of an m^n field.
Grid1D lift_grid(std::size_t m);

// |gamma| above which the spectrum is negligible (1e-8 of its peak).
double mother_band(const GeneratorSpec& g);

// Working grid of one scale s: nodes at multiples of b s / step, with step
// the smallest power of two resolving the dilated band, and a period long
// enough for the atom tails.
struct ScaleGrid {
    Grid1D grid;
    long step = 1;
    double scale = 1.0;
};
ScaleGrid scale_grid(double scale, double b, int n, double band, double essential_radius,
                     double min_span);

struct ScaleCoefficients {
    std::vector<std::pair<long, Complex>> kept;
    double dropped = 0.0;
};

// c_l = int |gamma|^alpha R^(gamma) conj(s^{1/2} ghat(s gamma)) exp(2 pi i gamma l b s)
// for the translations in [l_min, l_max] whose atoms reach the ridge range;
// the energy of the other translations in one period is returned as dropped.
ScaleCoefficients scale_coefficients(const SampledSignal& R, const GeneratorSpec& g,
                                     const ScaleGrid& sg, double b, int n, double alpha,
                                     long l_min, long l_max, double essential_radius,
                                     double nyquist);

// Sum of term(0..count) with a fixed block partition and pairwise reduction,
// independent of the thread count.
GridField deterministic_sum(std::size_t count, int n, std::size_t m,
                            const std::function<GridField(std::size_t)>& term);
// Same for scalars.
double deterministic_sum(std::span<const double> v);

}  // namespace ridgeframe::detail

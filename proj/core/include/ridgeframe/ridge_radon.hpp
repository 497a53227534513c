#pragma once

#include "ridgeframe/generators.hpp"
#include "ridgeframe/grid_field.hpp"
#include "ridgeframe/spectral.hpp"

namespace ridgeframe {

/// Default span of the 1-D working grid used for inner products against
/// generators; the generator is periodized with this period.
inline constexpr double kDefaultSpan = 64.0;

/// s-grid [-2, 2) at the field spacing; covers the ridge range [-sqrt n, sqrt n].
Grid1D radon_grid(const GridField& f);

/// [-span/2, span/2) at the field spacing, aligned with radon_grid.
Grid1D long_grid(const GridField& f, double span = kDefaultSpan);

/// Copies s onto a larger grid with the same spacing and aligned nodes,
/// zero elsewhere.
SampledSignal embed(const SampledSignal& s, const Grid1D& target);

/// 6-point Lagrange interpolation of a sampled signal. Throws DomainError
/// outside the sampled interval.
Complex interpolate(const SampledSignal& g, double t);

/// g_u(x) = g(u . x) on the m^n grid of Q.
GridField ridge_lift(const SampledSignal& g, const Direction& u, std::size_t m);
/// Generator variant: samples (|.|^alpha ghat)^v on a grid oversampled 8x
/// relative to the field spacing, then interpolates.
GridField ridge_lift(const GeneratorSpec& g, const Direction& u, std::size_t m,
                     double alpha = 0.0);

/// G = D^{(n-1)/2} g. Requires n >= 2.
SampledSignal weighted_generator(const GeneratorSpec& g, int n, const Grid1D& grid);
SampledSignal weighted_generator(const SampledSignal& g, int n);

/// Line (n = 2) or plane (n = 3) integrals of the multilinear interpolant of
/// f, sampled at the field spacing. Slow reference path.
SampledSignal radon_direct(const GridField& f, const Direction& u, const Grid1D& s_grid);
SampledSignal radon_direct(const GridField& f, const Direction& u);

/// fhat(eta u) = h^n sum_x f(x) exp(-2 pi i eta u.x) on the frequency grid
/// dual to s_grid, zero beyond the field's Nyquist band.
Spectrum ray_spectrum(const GridField& f, const Direction& u, const Grid1D& s_grid);

/// R_u f through the Fourier slice theorem.
SampledSignal radon_slice(const GridField& f, const Direction& u, const Grid1D& s_grid);
SampledSignal radon_slice(const GridField& f, const Direction& u);

/// <R_u f, g> evaluated in 1-D. With verify set, also computes <f, g_u> on
/// the grid and throws ConsistencyError if the relative gap exceeds 1e-6.
Complex ridge_inner(const GridField& f, const GeneratorSpec& g, const Direction& u,
                    bool verify = false);
Complex ridge_inner(const GridField& f, const SampledSignal& g, const Direction& u,
                    bool verify = false);

/// <f, g_u> computed on the n-dimensional grid.
Complex ridge_inner_direct(const GridField& f, const GeneratorSpec& g, const Direction& u);
Complex ridge_inner_direct(const GridField& f, const SampledSignal& g, const Direction& u);

/// <f, G_u> as <D^{(n-1)/2} R_u f, g> with n = f.dim().
Complex ridge_coefficient(const GridField& f, const GeneratorSpec& g, const Direction& u);
/// Same with the weight moved onto the generator: <R_u f, D^{(n-1)/2} g>.
Complex ridge_coefficient_weighted(const GridField& f, const GeneratorSpec& g,
                                   const Direction& u);

}  // namespace ridgeframe

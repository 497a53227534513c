#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ridgeframe/grid_field.hpp"
#include "ridgeframe/spectral.hpp"

namespace ridgeframe {

/// Deterministic uniform and normal draws from a 64-bit seed. The mapping to
/// doubles is done here so results do not depend on the standard library's
/// distribution classes.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();                      // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    double normal();

private:
    std::mt19937_64 engine_;
};

/// Independent child seed for draw `tag` of a run seeded with `seed`
/// (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// a exp(-pi |x - c|^2 / s^2)
struct Bump {
    std::vector<double> centre;
    double width = 1.0;
    Complex amplitude{1.0, 0.0};
};

/// s in [width_lo, width_hi], c in [-0.25, 0.25]^n, complex normal amplitudes.
std::vector<Bump> random_bumps(int n, std::uint64_t seed, std::size_t count = 4, double width_lo = 0.2,
                               double width_hi = 0.26);

GridField bump_field(std::size_t m, std::span<const Bump> bumps);

/// Closed-form Fourier transform of the bump sum at xi.
Complex bump_spectrum(std::span<const Bump> bumps, std::span<const double> xi);

/// bump_field of random_bumps. Smooth and effectively band-limited on grids
/// with m >= 64.
GridField random_bump_field(int n, std::size_t m, std::uint64_t seed, std::size_t bumps = 4);

/// exp(-pi |x|^2 / sigma^2), scaled to unit L2 norm when requested.
GridField gaussian_field(int n, std::size_t m, double sigma = 0.35, bool unit_norm = true);

/// Uniformly distributed directions on S^{n-1}.
std::vector<Direction> random_directions(int n, std::size_t count, std::uint64_t seed);

struct PacketFamily {
    std::size_t packets = 3;
    double center_spread = 1.0;  // centers in [-spread, spread]
    double width_lo = 0.6;
    double width_hi = 1.0;
    double freq_lo = 0.0;        // |frequency| in [freq_lo, freq_hi], random sign
    double freq_hi = 1.0;
};

/// Sums of modulated Gaussian packets with complex amplitudes.
std::vector<SampledSignal> random_test_signals(const Grid1D& grid, std::size_t count,
                                               std::uint64_t seed, const PacketFamily& family = {});

/// Unit-norm signal whose spectrum is the smooth bump
/// exp(-1 / ((|g| - lo)(hi - |g|))) on lo < |g| < hi, delayed by shift.
SampledSignal band_bump_signal(const Grid1D& grid, double lo, double hi, double shift = 0.0);

}  // namespace ridgeframe

#include <cmath>

#include "doctest.h"
#include "ridgeframe/errors.hpp"
#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/frames.hpp"

using namespace ridgeframe;

namespace {

SampledSignal gauss(const Grid1D& grid, double c = 0.0, double w = 1.0) {
    return SampledSignal::from_function(grid, [=](double x) { return Complex(std::exp(-kPi * (x - c) * (x - c) / (w * w))); });
}

}  // namespace

TEST_CASE("gabor atom") {
    const Grid1D grid = Grid1D::centered(32.0, 1024);
    const auto g = gauss(grid);
    const auto atom = gabor_atom(g, 1.5, 0.75);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size; ++i) {
        const double x = grid.x(i);
        const Complex e = std::polar(1.0, 2.0 * kPi * 0.75 * x) * std::exp(-kPi * (x - 1.5) * (x - 1.5));
        worst = std::max(worst, std::abs(atom[i] - e));
    }
    CHECK(worst < 1e-12);
    CHECK(atom.norm2() == doctest::Approx(g.norm2()).epsilon(1e-12));
    CHECK_THROWS_AS(gabor_atom(g, 15.5, 0.0), DomainError);
}

TEST_CASE("wavelet atom") {
    const Grid1D grid = Grid1D::centered(32.0, 2048);
    const auto g = gauss(grid);
    const auto atom = wavelet_atom(g, 2.0, 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size; ++i) {
        const double t = 2.0 * grid.x(i) - 1.0;
        worst = std::max(worst, std::abs(atom[i] - std::sqrt(2.0) * std::exp(-kPi * t * t)));
    }
    CHECK(worst < 1e-9);
    CHECK(atom.norm2() == doctest::Approx(g.norm2()).epsilon(1e-9));
    CHECK_THROWS_AS(wavelet_atom(g, 0.0, 1.0), InvalidParameter);
}

TEST_CASE("gabor resolution identity") {
    const Grid1D grid = Grid1D::centered(32.0, 1024);
    const auto f1 = gauss(grid, 0.3, 0.8), f2 = gauss(grid, -0.2, 1.1);
    const auto r = gabor_resolution_check(f1, f2, GeneratorSpec::gaussian(), GeneratorSpec::gaussian(0.5, 1.0));
    CHECK(std::abs(r.lhs - r.rhs) < 1e-3 * std::abs(r.rhs));
    CHECK_THROWS_AS(gabor_resolution_check(f1, f2, GeneratorSpec::gaussian(), GeneratorSpec::gaussian(),
                                           GaborQuadrature{1.0, 1.0, 8, 8}),
                    CoverageError);
    CHECK_THROWS_AS(gabor_resolution_check(f1, gauss(Grid1D::centered(16.0, 512)), GeneratorSpec::gaussian(),
                                           GeneratorSpec::gaussian()),
                    InvalidInput);
}

TEST_CASE("wavelet resolution identity") {
    const Grid1D grid = Grid1D::centered(64.0, 2048);
    const auto f = band_bump_signal(grid, 0.4, 1.6);
    const auto g = band_bump_signal(grid, 0.5, 2.0, 0.25);
    const auto r = wavelet_resolution_check(f, g, GeneratorSpec::band(1.0, 2.0));
    CHECK(std::abs(r.lhs / r.rhs - 1.0) < 0.02);
    CHECK_THROWS_AS(wavelet_resolution_check(f, g, GeneratorSpec::gaussian()), NotAdmissible);
}

TEST_CASE("dual gabor pair") {
    const auto g1 = GeneratorSpec::gaussian();
    const auto g2 = GeneratorSpec::gaussian(0.7, 0.2);
    const auto pair = make_dual_gabor_pair(g1, g2);
    CHECK(std::abs(pair.overlap - spectral_inner(g1, g2)) < 1e-12);
    const auto& dual = std::get<ContinuousGabor>(pair.dual.kind());
    // <g_dual, g1> = 1 makes the pair reproducing
    CHECK(std::abs(spectral_inner(dual.window, g1) * dual.scale - 1.0) < 1e-10);
    CHECK_THROWS_AS(make_dual_gabor_pair(GeneratorSpec::band(1.0, 2.0), GeneratorSpec::band(3.0, 4.0)),
                    PerpendicularWindows);
    CHECK(spectral_inner(g1, g1).real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("continuous gabor bounds") {
    const Grid1D grid = Grid1D::centered(32.0, 1024);
    const auto tests = random_test_signals(grid, 30, 99);
    const FrameSystem sys(ContinuousGabor{GeneratorSpec::gaussian(), Complex(1.0), GaborQuadrature{}});
    const auto b = estimate_frame_bounds(sys, tests, 99, "packets");
    CHECK(b.trials == 30);
    CHECK(std::abs(b.lower - 1.0) < 0.03);
    CHECK(std::abs(b.upper - 1.0) < 0.03);
    CHECK(b.lower <= b.upper);
}

TEST_CASE("orthonormal meyer grid is a Parseval frame") {
    const Grid1D grid = Grid1D::centered(64.0, 2048);
    PacketFamily fam;
    fam.freq_lo = 0.6;
    fam.freq_hi = 1.0;
    fam.width_lo = 1.0;
    fam.width_hi = 2.0;
    const auto tests = random_test_signals(grid, 30, 4, fam);
    const FrameSystem sys(DiscreteWaveletGrid{GeneratorSpec::meyer(), 2.0, -4, 6, 1.0, -64, 64});
    const auto b = estimate_frame_bounds(sys, tests, 4, "packets");
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("bounds estimation input checks") {
    const Grid1D grid = Grid1D::centered(32.0, 512);
    const FrameSystem sys(ContinuousGabor{GeneratorSpec::gaussian(), Complex(1.0), GaborQuadrature{6.0, 6.0, 16, 16}});
    auto tests = random_test_signals(grid, 29, 1);
    CHECK_THROWS_AS(estimate_frame_bounds(sys, tests, 1, "packets"), InvalidInput);
    tests.push_back(SampledSignal::zeros(grid));
    CHECK_THROWS_AS(estimate_frame_bounds(sys, tests, 1, "packets"), InvalidInput);
    tests.push_back(random_test_signals(grid, 1, 2)[0]);
    const auto b = estimate_frame_bounds(sys, tests, 1, "packets");
    CHECK(b.trials == 30);
    CHECK(b.warnings.size() == 1);
    const std::vector<SampledSignal> zeros(30, SampledSignal::zeros(grid));
    CHECK_THROWS_AS(estimate_frame_bounds(sys, zeros, 1, "zero"), InvalidInput);
}

TEST_CASE("frame manifests") {
    const std::vector<FrameSystem> systems{
        FrameSystem(ContinuousGabor{GeneratorSpec::gaussian(0.5), Complex(0.5, -0.25), GaborQuadrature{4.0, 5.0, 32, 40}}),
        FrameSystem(ContinuousWavelet{GeneratorSpec::meyer(), WaveletQuadrature{}}),
        FrameSystem(DiscreteWaveletGrid{GeneratorSpec::band(1.0, 2.0), 2.0, -2, 4, 0.5, -9, 9}),
    };
    for (const auto& s : systems) {
        CHECK(FrameSystem::from_manifest(s.manifest()).manifest() == s.manifest());
        CHECK_FALSE(s.measure().empty());
    }
    const FrameSystem custom(DiscreteCustom{{gauss(Grid1D::centered(8.0, 64))}});
    CHECK_THROWS_AS(FrameSystem::from_manifest(custom.manifest()), FormatError);
    CHECK_THROWS_AS(FrameSystem::from_manifest(nlohmann::json::object()), FormatError);
    CHECK_THROWS_AS(FrameSystem(DiscreteWaveletGrid{GeneratorSpec::meyer(), 1.0}), InvalidParameter);
    CHECK_THROWS_AS(FrameSystem(DiscreteCustom{}), InvalidParameter);
}

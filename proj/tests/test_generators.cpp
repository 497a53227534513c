#include <cmath>

#include "doctest.h"
#include "ridgeframe/errors.hpp"
#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/generators.hpp"

using namespace ridgeframe;

namespace {

// |Omega(g)^z|^2 through |Omega|^{2 Re z} exp(-2 Im z arg Omega), summed over
// a fixed wide window: an independent route to A_z.
double brute_autocorrelation(Complex z, double gamma, long K) {
    double s = 0.0;
    for (long k = -K; k <= K; ++k) s += std::norm(complex_bspline_hat(z, gamma + static_cast<double>(k)));
    return s;
}

}  // namespace

TEST_CASE("meyer sigmoid") {
    CHECK(meyer_nu(0.0) == 0.0);
    CHECK(meyer_nu(1.0) == 1.0);
    CHECK(meyer_nu(-3.0) == 0.0);
    CHECK(meyer_nu(7.0) == 1.0);
    CHECK(meyer_nu(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    for (double y = 0.0; y <= 1.0; y += 0.0625) CHECK(meyer_nu(y) + meyer_nu(1.0 - y) == doctest::Approx(1.0));
    // flat ends: one-sided slopes vanish
    CHECK(meyer_nu(1e-4) / 1e-4 < 1e-10);
    CHECK((1.0 - meyer_nu(1.0 - 1e-4)) / 1e-4 < 1e-10);
    CHECK_THROWS_AS(smooth_step_by_name("nope"), InvalidParameter);
}

TEST_CASE("meyer window") {
    CHECK(meyer_window(2.0 * kPi / 3.0) == doctest::Approx(0.0));
    CHECK(meyer_window(4.0 * kPi / 3.0) == doctest::Approx(1.0));
    CHECK(meyer_window(4.0 * kPi / 3.0 - 1e-9) == doctest::Approx(1.0));
    CHECK(meyer_window(4.0 * kPi / 3.0 + 1e-9) == doctest::Approx(1.0));
    CHECK(meyer_window(8.0 * kPi / 3.0) == doctest::Approx(0.0));
    CHECK(meyer_window(-1.0) == 0.0);
    CHECK(meyer_window(10.0) == 0.0);
}

TEST_CASE("meyer spectrum") {
    CHECK(std::abs(meyer_psi_hat(0.0)) == 0.0);
    CHECK(std::abs(meyer_psi_hat(0.5)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const double g = rng.uniform(-3.0, 3.0);
        CHECK(std::abs(meyer_psi_hat(g)) == doctest::Approx(std::abs(meyer_psi_hat(-g))).epsilon(1e-14));
        if (std::abs(g) < 1.0 / 3.0 || std::abs(g) > 4.0 / 3.0) CHECK(std::abs(meyer_psi_hat(g)) == 0.0);
    }
}

TEST_CASE("meyer partition of unity") {
    const int M = 6;
    Rng rng(17);
    const double lo = std::log(std::ldexp(1.0 / 3.0, -M + 2)), hi = std::log(std::ldexp(1.0, M - 2));
    for (int i = 0; i < 1000; ++i) {
        const double g = std::exp(rng.uniform(lo, hi)) * (i % 2 ? 1.0 : -1.0);
        double s = 0.0;
        for (int m = -M; m <= M; ++m) s += std::norm(meyer_psi_hat(std::ldexp(g, m)));
        CHECK(std::abs(s - 1.0) < 1e-10);
    }
}

TEST_CASE("meyer basis") {
    const Grid1D grid = Grid1D::centered(128.0, 16384);
    SUBCASE("(0,0) is psi") {
        const auto e = meyer_basis_element(0, 0, grid);
        const auto psi = GeneratorSpec::meyer().sample(grid);
        CHECK(relative_l2(e, psi) < 1e-12);
    }
    SUBCASE("gram matrix") {
        std::vector<SampledSignal> b;
        for (int m = -2; m <= 2; ++m)
            for (int k = -2; k <= 2; ++k) b.push_back(meyer_basis_element(k, m, grid));
        double worst = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                worst = std::max(worst, std::abs(inner(b[i], b[j]) - Complex(i == j ? 1.0 : 0.0)));
        CHECK(worst < 1e-5);
    }
    SUBCASE("too coarse") {
        CHECK_THROWS_AS(meyer_basis_element(0, -3, Grid1D::centered(64.0, 512)), ResolutionError);
    }
}

TEST_CASE("complex b-spline") {
    const Complex z(3.5, 1.0);
    CHECK(complex_bspline_hat(z, 0.0) == Complex(1.0, 0.0));
    CHECK(std::abs(complex_bspline_hat(2.0, 1.0)) == 0.0);
    CHECK_THROWS_AS(complex_bspline_hat(Complex(1.0, 2.0), 0.3), InvalidParameter);

    // mpmath, 30 digits
    const Complex b05 = complex_bspline_hat(z, 0.5);
    CHECK(b05.real() == doctest::Approx(0.935638475457867467).epsilon(1e-14));
    CHECK(b05.imag() == doctest::Approx(0.324473404465468110).epsilon(1e-14));

    Rng rng(5);
    for (Complex zz : {Complex(2.5, 0.0), Complex(3.5, 1.0), Complex(3.5, -1.0)}) {
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double g = rng.uniform(-8.0, 8.0);
            worst = std::max(worst, std::abs(complex_bspline_hat(zz, g) - complex_bspline_hat_factored(zz, g)));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("spectral shift asymmetry") {
    auto side = [](Complex z, double sign) {
        double s = 0.0;
        for (int i = 0; i < 40000; ++i) s += std::norm(complex_bspline_hat(z, sign * (i + 0.5) * 0.001));
        return s;
    };
    CHECK(side({3.5, 1.0}, 1.0) > side({3.5, 1.0}, -1.0));
    CHECK(side({3.5, -1.0}, 1.0) < side({3.5, -1.0}, -1.0));
}

TEST_CASE("autocorrelation filter") {
    const Complex z(3.5, 1.0);
    CHECK(autocorrelation_filter(2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(autocorrelation_filter(z, 0.1, 0.0), InvalidParameter);
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        const double g = rng.uniform(-2.0, 2.0);
        CHECK(std::abs(autocorrelation_filter(z, g + 1.0) - autocorrelation_filter(z, g)) < 1e-12);
    }
    // mpmath sum with K = 800
    const double frozen = 0.98299706489921182;
    CHECK(std::abs(brute_autocorrelation(z, 0.5, 2000) - frozen) < 1e-13);
    CHECK(std::abs(autocorrelation_filter(z, 0.5) - frozen) < 1e-12);
}

TEST_CASE("orthonormal scaling function") {
    const Complex z(3.5, 1.0);
    CHECK(std::abs(orthonormal_scaling_hat(z, 0.0) - 1.0) < 1e-14);
    CHECK(std::abs(orthonormal_scaling_hat(2.0, 1.0)) == 0.0);
    const Complex v = orthonormal_scaling_hat(z, 0.3);
    CHECK(v.real() == doctest::Approx(-0.952383778606305001).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.304835385810433744).epsilon(1e-12));
    for (int j = 0; j < 40; ++j) {
        const double g = (j + 0.5) / 40.0;
        double s = 0.0;
        for (int k = -600; k <= 600; ++k) s += std::norm(orthonormal_scaling_hat(z, g + k));
        CHECK(std::abs(s - 1.0) < 1e-8);
    }
}

TEST_CASE("two-scale filter") {
    const Complex z(3.5, 1.0);
    CHECK(std::abs(scaling_filter(z, 0.0) - 1.0) < 1e-14);
    CHECK(std::abs(scaling_filter(2.0, 0.5)) < 1e-14);
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        const double g = rng.uniform(-0.5, 0.5);
        const double s = std::norm(scaling_filter(z, g)) + std::norm(scaling_filter(z, g + 0.5));
        CHECK(std::abs(s - 1.0) < 1e-8);
    }
    SUBCASE("vanishing denominator") {
        // beta_perp(1) = 0 for z = 2, so H_2(1) needs 0/0
        CHECK_THROWS_AS(scaling_filter(2.0, 1.0 + 1e-300), SingularEvaluation);
    }
}

TEST_CASE("b-spline wavelet") {
    const Complex z(3.5, 1.0);
    CHECK(std::abs(bspline_wavelet_hat(z, 0.0)) < 1e-10);
    const GeneratorSpec psi = GeneratorSpec::cbspline_wavelet(z);
    const Grid1D grid = Grid1D::centered(256.0, 32768);
    const Spectrum sp = psi.spectrum_on(grid);
    CHECK(std::abs(sp.norm2() - 1.0) < 1e-6);
    const auto s = psi.sample(grid);
    auto shifted = apply_multiplier(s, [](double g) { return std::polar(1.0, -2.0 * kPi * g); });
    CHECK(std::abs(inner(s, shifted)) < 1e-6);
}

TEST_CASE("admissibility constant") {
    CHECK(admissibility_constant(GeneratorSpec::band(1.0, 2.0)) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
    // the dyadic partition of unity makes C_psi = 2 ln 2 for Meyer
    CHECK(admissibility_constant(GeneratorSpec::meyer()) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(admissibility_constant(GeneratorSpec::gaussian()), NotAdmissible);
}

TEST_CASE("general setup") {
    const auto meyer = check_general_setup(GeneratorSpec::meyer(), 2.0, 2);
    CHECK(meyer.all_hold());
    CHECK(meyer.condition_iii.alpha > 0.5);
    CHECK(meyer.condition_iii.beta > meyer.condition_iii.alpha + 2.5);

    const auto gauss = check_general_setup(GeneratorSpec::gaussian(), 2.0, 2);
    CHECK_FALSE(gauss.condition_i.holds);
    CHECK_FALSE(gauss.all_hold());

    const auto band = check_general_setup(GeneratorSpec::band(1.0, 2.0), 2.0, 2);
    CHECK(band.condition_ii.holds);
    CHECK(band.condition_ii.value >= 0.25);
}

TEST_CASE("manifest round trip and purity") {
    for (const auto& g : {GeneratorSpec::meyer(), GeneratorSpec::cbspline({3.5, 1.0}, true),
                          GeneratorSpec::cbspline_wavelet({3.5, -1.0}), GeneratorSpec::gaussian(0.5, 0.25),
                          GeneratorSpec::band(0.5, 1.5)}) {
        const auto back = GeneratorSpec::from_manifest(g.manifest());
        CHECK(back.manifest() == g.manifest());
        for (double gm : {-1.3, -0.2, 0.0, 0.41, 0.9, 2.2}) {
            CHECK(back.spectrum(gm) == g.spectrum(gm));
            CHECK(g.spectrum(gm) == g.spectrum(gm));
        }
    }
    CHECK_THROWS_AS(GeneratorSpec::from_manifest({{"kind", "cbspline"}}), InvalidInput);
    CHECK_THROWS_AS(GeneratorSpec::from_manifest({{"kind", "wat"}}), InvalidInput);
}

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "ridgeframe/errors.hpp"
#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/spectral.hpp"

using namespace ridgeframe;

namespace {

SampledSignal gauss(const Grid1D& g) {
    return SampledSignal::from_function(g, [](double x) { return Complex(std::exp(-kPi * x * x)); });
}

SampledSignal random_signal(const Grid1D& g, std::uint64_t seed) {
    Rng rng(seed);
    return SampledSignal::from_function(g, [&](double) { return Complex(rng.normal(), rng.normal()); });
}

}  // namespace

TEST_CASE("grid conventions") {
    const Grid1D g = Grid1D::centered(16.0, 1024);
    CHECK(g.x0 == doctest::Approx(-8.0));
    CHECK(g.dgamma() == doctest::Approx(1.0 / 16.0));
    CHECK(g.first_bin() == -511);
    // even sizes put the Nyquist bin on the positive side
    CHECK(g.gamma(1023) == doctest::Approx(512.0 / 16.0));
    CHECK(Grid1D::centered(4.0, 5).first_bin() == -2);
}

TEST_CASE("gaussian is its own transform") {
    const auto sp = forward_ft(gauss(Grid1D::centered(16.0, 1024)));
    double worst = 0.0;
    for (std::size_t k = 0; k < sp.size(); ++k) {
        const double gm = sp.gamma(k);
        worst = std::max(worst, std::abs(sp[k] - std::exp(-kPi * gm * gm)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("point mass has a flat spectrum") {
    const Grid1D g = Grid1D::centered(8.0, 256);
    auto s = SampledSignal::zeros(g);
    s[128] = 1.0 / g.dx;  // x = 0
    REQUIRE(g.x(128) == doctest::Approx(0.0));
    const auto sp = forward_ft(s);
    for (std::size_t k = 0; k < sp.size(); ++k) CHECK(std::abs(sp[k] - 1.0) < 1e-12);
}

TEST_CASE("zero in, zero out") {
    const Grid1D g = Grid1D::centered(8.0, 64);
    const auto sp = forward_ft(SampledSignal::zeros(g));
    for (const auto& v : sp.values()) CHECK(v == Complex{});
}

TEST_CASE("empty inputs are rejected") {
    CHECK_THROWS_AS(forward_ft(SampledSignal{}), InvalidInput);
    CHECK_THROWS_AS(inverse_ft(Spectrum{}), InvalidInput);
}

TEST_CASE("inverse undoes forward") {
    for (double x0 : {-3.0, 0.0, 1.25}) {
        const Grid1D g{x0, 0.05, 300};
        const auto s = random_signal(g, 11);
        CHECK(relative_l2(inverse_ft(forward_ft(s)), s) < 1e-10);
    }
}

TEST_CASE("inverse of the gaussian spectrum") {
    const Grid1D g = Grid1D::centered(16.0, 1024);
    const auto sp = Spectrum::from_function(g, [](double gm) { return Complex(std::exp(-kPi * gm * gm)); });
    CHECK(relative_l2(inverse_ft(sp), gauss(g)) < 1e-8);
}

TEST_CASE("single bin gives a complex exponential") {
    const Grid1D g = Grid1D::centered(8.0, 64);
    auto sp = Spectrum::from_function(g, [](double) { return Complex{}; });
    const std::size_t k = 40;
    sp[k] = 1.0;
    const auto s = inverse_ft(sp);
    const double gm = sp.gamma(k);
    for (std::size_t j = 0; j < s.size(); ++j) {
        const Complex expect = sp.dgamma() * std::polar(1.0, 2.0 * kPi * gm * s.x(j));
        CHECK(std::abs(s[j] - expect) < 1e-12);
    }
}

TEST_CASE("parseval") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto s = random_signal(Grid1D{-2.0, 0.01, 777}, seed);
        const auto sp = forward_ft(s);
        CHECK(std::abs(sp.norm2() - s.norm2()) / s.norm2() < 1e-10);
    }
}

TEST_CASE("linearity") {
    const Grid1D g = Grid1D::centered(10.0, 200);
    const auto a = random_signal(g, 5), b = random_signal(g, 6);
    const Complex c(0.3, -1.7);
    const auto lhs = forward_ft(c * a + b);
    const auto fa = forward_ft(a), fb = forward_ft(b);
    for (std::size_t k = 0; k < lhs.size(); ++k) CHECK(std::abs(lhs[k] - (c * fa[k] + fb[k])) < 1e-12 * 200);
    CHECK(relative_l2(frac_diff(c * a + b, 0.7), c * frac_diff(a, 0.7) + frac_diff(b, 0.7)) < 1e-12);
}

TEST_CASE("abs_power at zero") {
    CHECK(abs_power(0.0, 0.0) == 1.0);
    CHECK(abs_power(0.0, 0.5) == 0.0);
    CHECK(abs_power(-4.0, 0.5) == doctest::Approx(2.0));
}

TEST_CASE("frac_diff") {
    const Grid1D g = Grid1D::centered(16.0, 1024);
    const auto s = gauss(g);
    CHECK(relative_l2(frac_diff(s, 0.0), s) == 0.0);
    CHECK_THROWS_AS(frac_diff(s, -0.5), InvalidParameter);

    SUBCASE("second order at the origin") {
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        const double oracle =
            2.0 * GK::integrate([](double y) { return y * y * std::exp(-kPi * y * y); }, 0.0, 12.0, 15);
        CHECK(oracle == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
        const auto d = frac_diff(s, 2.0);
        CHECK(std::abs(d[512] - oracle) < 1e-10);
    }
    SUBCASE("multiplier acts pointwise") {
        const auto band = inverse_ft(
            Spectrum::from_function(g, [](double gm) { return Complex(gm >= 1.0 && gm <= 2.0 ? 1.0 : 0.0); }));
        const auto sp = forward_ft(frac_diff(band, 1.0));
        for (std::size_t k = 0; k < sp.size(); ++k) {
            const double gm = sp.gamma(k);
            CHECK(std::abs(sp[k] - (gm >= 1.0 && gm <= 2.0 ? gm : 0.0)) < 1e-10);
        }
    }
    SUBCASE("composition") {
        const auto r = random_signal(Grid1D::centered(8.0, 512), 9);
        CHECK(relative_l2(frac_diff(frac_diff(r, 0.5), 1.5), frac_diff(r, 2.0)) < 1e-10);
        CHECK(relative_l2(frac_diff(frac_diff(r, 1.0), 1.0), frac_diff(r, 2.0)) < 1e-10);
    }
}

TEST_CASE("signal csv round trip") {
    const auto s = random_signal(Grid1D{-1.5, 0.125, 24}, 4);
    std::stringstream ss;
    write_signal_csv(ss, s);
    const std::string text = ss.str();
    CHECK(text.rfind("x,re,im\n", 0) == 0);
    const auto back = read_signal_csv(ss);
    CHECK(back.size() == s.size());
    CHECK(back.x0() == s.x0());
    CHECK(back.dx() == doctest::Approx(s.dx()).epsilon(1e-15));
    CHECK(relative_l2(back, s) == 0.0);

    std::stringstream with_abs;
    write_signal_csv(with_abs, s, true);
    CHECK(with_abs.str().rfind("x,re,im,abs\n", 0) == 0);
}

TEST_CASE("format_double keeps 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-2.0) == "-2");
}

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ridgeframe/errors.hpp"
#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/generators.hpp"
#include "ridgeframe/ridge_radon.hpp"

using namespace ridgeframe;

TEST_CASE("direction") {
    CHECK(Direction({0.6, 0.8 + 1e-8})[1] == doctest::Approx(0.8).epsilon(1e-7));
    CHECK_THROWS_AS(Direction({1.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(Direction({1.0}), InvalidParameter);
    const Direction u({1.0 / std::sqrt(3.0), -1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)});
    const auto c = u.complement();
    REQUIRE(c.size() == 2);
    for (const auto& v : c) {
        CHECK(std::abs(u.dot(v)) < 1e-14);
        CHECK(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] == doctest::Approx(1.0));
    }
    CHECK(std::abs(c[0][0] * c[1][0] + c[0][1] * c[1][1] + c[0][2] * c[1][2]) < 1e-14);
}

TEST_CASE("gaussian projection") {
    // R_u exp(-pi |x|^2 / s^2) = s^{n-1} exp(-pi t^2 / s^2)
    const double s = 0.3;
    for (int n : {2, 3}) {
        const std::size_t m = n == 2 ? 128 : 48;
        const GridField f = gaussian_field(n, m, s, false);
        for (const auto& u : random_directions(n, 5, 11)) {
            const auto r = radon_slice(f, u);
            double err = 0.0, ref = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                const double t = r.x(i);
                const double e = std::pow(s, n - 1) * std::exp(-kPi * t * t / (s * s));
                err = std::max(err, std::abs(r[i] - e));
                ref = std::max(ref, e);
            }
            CHECK(err / ref < 1e-8);
        }
    }
}

TEST_CASE("slice and direct projections agree") {
    for (int n : {2, 3}) {
        const std::size_t m = n == 2 ? 256 : 64;
        const auto bumps = random_bumps(n, 21, 4, 0.32, 0.38);
        const GridField f = bump_field(m, bumps);
        for (const auto& u : random_directions(n, n == 2 ? 8 : 3, 4)) {
            CHECK(relative_l2(radon_slice(f, u), radon_direct(f, u)) < (n == 2 ? 1e-3 : 1e-2));
        }
    }
}

TEST_CASE("ray spectrum matches closed form") {
    const auto bumps = random_bumps(2, 8, 3, 0.2, 0.26);
    const GridField f = bump_field(128, bumps);
    const Direction u = Direction::from_angle(0.7);
    const Spectrum sp = ray_spectrum(f, u, radon_grid(f));
    double worst = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const double eta = sp.gamma(i);
        if (std::abs(eta) > 20.0) continue;
        const double xi[2] = {eta * u[0], eta * u[1]};
        worst = std::max(worst, std::abs(sp[i] - bump_spectrum(bumps, xi)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("rotation equivariance") {
    const auto bumps = random_bumps(2, 31, 4, 0.32, 0.38);
    const GridField f = bump_field(256, bumps);
    const double theta = 0.4;
    const GridField g = rotate(f, theta);
    for (double phi : {0.0, 1.1, 2.5}) {
        const auto a = radon_slice(f, Direction::from_angle(phi));
        const auto b = radon_slice(g, Direction::from_angle(phi + theta));
        CHECK(relative_l2(a, b) < 2e-3);
    }
}

TEST_CASE("linearity and zero field") {
    const GridField a = random_bump_field(2, 64, 1), b = random_bump_field(2, 64, 2);
    const Direction u = Direction::from_angle(2.0);
    const Complex c(0.3, -1.2);
    const auto lhs = radon_slice(c * a + b, u);
    const auto ra = radon_slice(a, u), rb = radon_slice(b, u);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        worst = std::max(worst, std::abs(lhs[i] - (c * ra[i] + rb[i])));
        scale = std::max(scale, std::abs(lhs[i]));
    }
    CHECK(worst <= 1e-12 * scale);
    const auto z = radon_slice(GridField(2, 64), u);
    for (const auto& v : z.samples()) CHECK(v == Complex(0.0, 0.0));
}

TEST_CASE("ridge lift") {
    const Grid1D grid = Grid1D::centered(8.0, 1024);
    const auto g = SampledSignal::from_function(grid, [](double x) { return Complex(std::exp(-kPi * x * x)); });
    const Direction u({0.6, 0.8});
    const GridField lift = ridge_lift(g, u, 64);
    double worst = 0.0;
    for (std::size_t k = 0; k < lift.size(); ++k) {
        const auto x = lift.point(k);
        const double t = u.dot(x);
        worst = std::max(worst, std::abs(lift[k] - std::exp(-kPi * t * t)));
    }
    CHECK(worst < 1e-9);
    CHECK_THROWS_AS(interpolate(g, 10.0), DomainError);
}

TEST_CASE("ridge duality") {
    const auto bumps = random_bumps(2, 77, 4, 0.32, 0.38);
    const GridField f = bump_field(256, bumps);
    const GeneratorSpec psi = GeneratorSpec::meyer();
    for (const auto& u : random_directions(2, 4, 9)) {
        const Complex a = ridge_inner(f, psi, u);
        const Complex b = ridge_inner_direct(f, psi, u);
        CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
        CHECK_NOTHROW(ridge_inner(f, psi, u, true));
    }
}

TEST_CASE("weight placement") {
    const GridField f = random_bump_field(2, 128, 5);
    for (const auto& psi : {GeneratorSpec::meyer(), GeneratorSpec::band(0.5, 2.0)}) {
        for (const auto& u : random_directions(2, 3, 6)) {
            const Complex a = ridge_coefficient(f, psi, u);
            const Complex b = ridge_coefficient_weighted(f, psi, u);
            CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("RFGRID") {
    const GridField f = random_bump_field(3, 16, 3);
    std::stringstream ss;
    write_field(ss, f);
    const std::string bytes = ss.str();
    CHECK(bytes.size() == 8 + 4 + 4 + 3 * 4 + 8 + f.size() * 16);

    std::istringstream in(bytes);
    const GridField back = read_field(in);
    REQUIRE(back.same_shape(f));
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);

    auto corrupt = [&](std::size_t pos, char c) {
        std::string b = bytes;
        b[pos] = c;
        std::istringstream is(b);
        return read_field(is);
    };
    CHECK_THROWS_AS(corrupt(0, 'X'), FormatError);
    CHECK_THROWS_AS(corrupt(8, 2), FormatError);     // version
    CHECK_THROWS_AS(corrupt(12, 4), FormatError);    // dimension
    CHECK_THROWS_AS(corrupt(20, 17), FormatError);   // axis counts differ
    CHECK_THROWS_AS(corrupt(35, 0x40), FormatError); // spacing
    std::istringstream cut(bytes.substr(0, bytes.size() - 5));
    CHECK_THROWS_AS(read_field(cut), FormatError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_field(empty), FormatError);
}

TEST_CASE("field CSV") {
    const GridField f = random_bump_field(2, 16, 4);
    std::stringstream ss;
    write_field_csv(ss, f);
    std::istringstream in(ss.str());
    const GridField back = read_field_csv(in);
    CHECK(relative_l2(back, f) < 1e-15);
    std::istringstream bad("x,y,re,im\n");
    CHECK_THROWS_AS(read_field_csv(bad), FormatError);
    CHECK_THROWS_AS(write_field_csv(ss, GridField(3, 16)), InvalidInput);
}

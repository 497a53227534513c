#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ridgeframe/decomposition.hpp"
#include "ridgeframe/errors.hpp"
#include "ridgeframe/fixtures.hpp"

using namespace ridgeframe;

namespace {

GridField offset_bump(std::size_t m, double x, double y, double width) {
    const Bump b{{x, y}, width, Complex(1.0)};
    GridField f = bump_field(m, std::span<const Bump>(&b, 1));
    f *= 1.0 / f.norm();
    return f;
}

}  // namespace

TEST_CASE("direction sets") {
    for (int n : {2, 3}) {
        const auto d = DirectionSet::uniform(n, 37);
        CHECK_NOTHROW(d.validate());
        double s = 0.0;
        for (double w : d.weights) s += w;
        CHECK(s == doctest::Approx(sphere_measure(n)).epsilon(1e-13));
        CHECK(d.same_as(DirectionSet::uniform(n, 37)));
        CHECK_FALSE(d.same_as(DirectionSet::uniform(n, 38)));
    }
    auto d = DirectionSet::uniform(2, 8);
    d.weights[0] *= 2.0;
    CHECK_THROWS_AS(d.validate(), InvalidInput);
    CHECK_THROWS_AS(DirectionSet::uniform(2, 0), InvalidInput);
    CHECK_THROWS_AS(sphere_measure(4), InvalidParameter);
}

TEST_CASE("norm identity") {
    const auto f2 = gaussian_field(2, 128, 0.35);
    CHECK(norm_identity_check(f2, DirectionSet::uniform(2, 64)).value == doctest::Approx(2.0).epsilon(2e-3));
    const auto f3 = gaussian_field(3, 48, 0.35);
    CHECK(norm_identity_check(f3, DirectionSet::uniform(3, 200)).value == doctest::Approx(2.0).epsilon(2e-2));
}

TEST_CASE("semi-discrete round trip") {
    const auto f = gaussian_field(2, 64, 0.35);
    const auto dirs = DirectionSet::uniform(2, 32);
    const FrameSystem sys(plan_semidiscrete(f, dirs));
    const auto t = analyze(f, sys, dirs);
    CHECK(t.grid_m == 64);
    CHECK(t.truncation_defect < 1e-3);
    CHECK(relative_l2(synthesize(t, sys, dirs, 64), f) < 0.05);

    SUBCASE("zero field") {
        const auto z = analyze(GridField(2, 64), sys, dirs);
        for (const auto& e : z.entries) CHECK(e.value == Complex(0.0, 0.0));
        CHECK(synthesize(z, sys, dirs, 64).norm() == 0.0);
    }
    SUBCASE("mismatched directions") {
        CHECK_THROWS_AS(synthesize(t, sys, DirectionSet::uniform(2, 16), 64), InvalidInput);
        CHECK_THROWS_AS(analyze(gaussian_field(3, 32), sys, dirs), InvalidInput);
    }
}

TEST_CASE("coefficients match direct inner products") {
    const auto f = offset_bump(64, 0.2, -0.1, 0.3);
    const auto dirs = DirectionSet::uniform(2, 16);
    const FrameSystem sys(plan_semidiscrete(f, dirs));
    const auto t = analyze(f, sys, dirs);
    double peak = 0.0;
    for (const auto& e : t.entries) peak = std::max(peak, std::abs(e.value));
    Rng rng(2);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 6; ++i) {
        const auto& e = t.entries[static_cast<std::size_t>(rng.uniform(0.0, 1.0) * static_cast<double>(t.entries.size()))];
        if (std::abs(e.value) < 1e-3 * peak) continue;
        const Complex direct = inner(f, ridge_atom(sys, e, dirs.directions[e.u], 64));
        CHECK(std::abs(direct - e.value) < 1e-3 * std::abs(e.value));
        ++checked;
    }
    CHECK(checked == 6);
}

TEST_CASE("direction refinement") {
    const auto f = offset_bump(128, 0.4, 0.3, 0.2);
    const auto d64 = DirectionSet::uniform(2, 64);
    const FrameSystem sys(plan_semidiscrete(f, d64, GeneratorSpec::meyer(), 1e-8));
    double prev = 0.0;
    for (std::size_t N : {64, 128, 256}) {
        const auto d = DirectionSet::uniform(2, N);
        const double e = relative_l2(synthesize(analyze(f, sys, d), sys, d, 128), f);
        if (N == 128) CHECK(e < prev);
        if (N == 256) CHECK(e <= prev * (1.0 + 1e-6));
        prev = e;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("frame inequality") {
    const auto f = gaussian_field(2, 128, 0.35);
    const auto dirs = DirectionSet::uniform(2, 64);
    const FrameSystem sys(plan_semidiscrete(f, dirs));
    const auto r = frame_inequality_check(f, sys, dirs, 1.0, 1.0);
    CHECK(r.value / (2.0 * r.norm2) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r.lower == doctest::Approx(2.0 * r.norm2));
    CHECK(r.per_direction.size() == 64);
    CHECK(r.sandwich_holds);
    CHECK_THROWS_AS(frame_inequality_check(f, sys, dirs, 2.0, 1.0), InvalidParameter);
}

TEST_CASE("continuous gabor reconstruction") {
    const auto f = gaussian_field(2, 64, 0.35);
    const auto dirs = DirectionSet::uniform(2, 64);
    const auto pair = make_dual_gabor_pair(GeneratorSpec::gaussian(), GeneratorSpec::gaussian());
    const double a = std::sqrt(2.0) + 3.0;
    const auto coarse = continuous_reconstruct(f, pair, dirs, GaborQuadrature{a, 8.0, 24, 24});
    const auto fine = continuous_reconstruct(f, pair, dirs, GaborQuadrature{a, 8.0, 48, 48});
    const double ec = relative_l2(coarse.field, f), ef = relative_l2(fine.field, f);
    CHECK(ef < ec);
    CHECK(ef < 5e-3);
    CHECK_THROWS_AS(continuous_reconstruct(f, pair, dirs, GaborQuadrature{1.0, 1.0, 8, 8}), CoverageError);
}

TEST_CASE("coefficient table files") {
    const auto f = gaussian_field(2, 32, 0.35);
    const auto dirs = DirectionSet::uniform(2, 8);
    const FrameSystem sys(DiscreteWaveletGrid{GeneratorSpec::meyer(), 2.0, -1, 1, 1.0, -2, 2});
    const auto t = analyze(f, sys, dirs);
    std::stringstream csv;
    write_table_csv(csv, t);
    const std::string text = csv.str();
    CHECK(text.rfind("k,m,l,u_index,u1,u2,re,im\n", 0) == 0);

    std::istringstream in(text);
    const auto back = read_table(in, t.sidecar());
    REQUIRE(back.entries.size() == t.entries.size());
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        CHECK(back.entries[i].value == t.entries[i].value);
        CHECK(back.entries[i].u == t.entries[i].u);
    }
    CHECK(back.directions.same_as(dirs));

    auto with_line = [&](const std::string& row) {
        std::istringstream is(text + row + "\n");
        return read_table(is, t.sidecar());
    };
    CHECK_THROWS_AS(with_line("0,0,0,1,0.5"), FormatError);
    CHECK_THROWS_AS(with_line("0,0,0,1,0.70710678118654757,0.70710678118654757,abc,0"), FormatError);
    CHECK_THROWS_AS(with_line("0,0,0,9,1,0,0,0"), ConsistencyError);
    CHECK_THROWS_AS(with_line("0,0,0,1,1,0,0,0"), ConsistencyError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_table(empty, t.sidecar()), FormatError);
    std::istringstream ok(text);
    CHECK_THROWS_AS(read_table(ok, nlohmann::json{{"frame", 1}}), FormatError);
}

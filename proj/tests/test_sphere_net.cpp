#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ridgeframe/errors.hpp"
#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/sphere_net.hpp"

using namespace ridgeframe;

namespace {

EpsilonNet circle_net(std::vector<double> angles, double eps) {
    EpsilonNet net;
    net.epsilon = eps;
    net.dim = 2;
    for (double t : angles) net.points.push_back(Direction::from_angle(t));
    return net;
}

}  // namespace

TEST_CASE("level epsilon") {
    CHECK(level_epsilon(0, 2.0, 0) == 0.5);
    CHECK(level_epsilon(3, 2.0, 0) == 0.0625);
    CHECK(level_epsilon(2, 2.0, 1) == 0.25);
    CHECK_THROWS_AS(level_epsilon(0, 1.0, 0), InvalidParameter);
    CHECK_THROWS_AS(level_epsilon(0, 2.0, 1), InvalidParameter);
}

TEST_CASE("circle nets") {
    const std::size_t expected[] = {7, 13, 26, 51};
    for (int k = 0; k < 4; ++k) {
        const auto net = build_net(2, k, 2.0);
        CHECK(net.size() == expected[k]);
        CHECK(verify_net(net).ok());
    }
    CHECK(circle_net_sizes(2.0) == std::pair<std::size_t, std::size_t>{2, 2});
    CHECK(build_net_at(2, 2.0).size() == 2);
    CHECK(circle_net_sizes(1.0) == std::pair<std::size_t, std::size_t>{3, 6});

    const auto [lo, hi] = circle_net_sizes(0.5);
    CHECK(build_net(2, 0, 2.0, 0, hi).size() == hi);
    CHECK(verify_net(build_net(2, 0, 2.0, 0, hi)).ok());
    CHECK_THROWS_AS(build_net(2, 0, 2.0, 0, hi + 1), InvalidParameter);
    CHECK_THROWS_AS(build_net(2, 0, 2.0, 0, lo - 1), InvalidParameter);
    CHECK_THROWS_AS(build_net_at(2, 0.0), InvalidParameter);
    CHECK_THROWS_AS(build_net_at(4, 0.5), InvalidParameter);
}

TEST_CASE("sphere nets") {
    for (int k = 0; k < 3; ++k) {
        const auto net = build_net(3, k, 2.0);
        const auto r = verify_net(net);
        CHECK(r.ok());
        CHECK(r.min_separation >= net.epsilon);
        CHECK(r.covering_radius <= net.epsilon);
        const auto s = default_card_samples(net);
        const auto c = verify_card_bounds(net, s.radii, s.centres);
        CHECK(c.pass);
        CHECK(c.nk_bound_ok);
        CHECK(c.C_hat <= 16.0);
    }
    CHECK_THROWS_AS(build_net_at(3, 0.5, 10), InvalidParameter);
}

TEST_CASE("verify net") {
    const double q = kPi / 2.0;
    CHECK(verify_net(circle_net({0.0, q, 2 * q, 3 * q}, 1.0)).ok());

    const auto dup = verify_net(circle_net({0.0, 0.0, q, 2 * q, 3 * q}, 1.0));
    CHECK_FALSE(dup.separation_ok);
    CHECK(dup.min_separation == 0.0);
    CHECK(dup.covering_ok);

    const auto one = verify_net(circle_net({0.3}, 1.0));
    CHECK(std::isinf(one.min_separation));
    CHECK(one.separation_ok);
    CHECK_FALSE(one.covering_ok);
    CHECK(one.covering_radius == doctest::Approx(2.0).epsilon(1e-4));

    CHECK_THROWS_AS(verify_net(EpsilonNet{}), InvalidInput);
}

TEST_CASE("card bounds") {
    const double q = kPi / 2.0;
    const auto net = circle_net({0.0, q, 2 * q, 3 * q}, 1.0);
    const double r1[] = {1.0};
    const std::vector<Direction> centre{Direction::from_angle(0.0)};
    const auto c = verify_card_bounds(net, r1, centre);
    CHECK(c.min_card == 1);
    CHECK(c.max_card == 1);
    const double r2[] = {std::sqrt(2.0) + 1e-12};
    CHECK(verify_card_bounds(net, r2, centre).max_card == 3);
    const double r3[] = {2.0};
    CHECK(verify_card_bounds(net, r3, centre).max_card == 4);
    const double bad[] = {0.5};
    CHECK_THROWS_AS(verify_card_bounds(net, bad, centre), InvalidInput);
    CHECK_THROWS_AS(verify_card_bounds(net, {}, centre), InvalidInput);
}

TEST_CASE("nets CSV") {
    const std::vector<EpsilonNet> nets{build_net(2, 0, 2.0)};
    std::ostringstream os;
    write_nets_csv(os, nets);
    const std::string s = os.str();
    CHECK(s.rfind("k,u_index,u1,u2\n0,0,", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 8);
}

TEST_CASE("discrete ridge system") {
    CHECK_THROWS_AS(build_discrete_system(GeneratorSpec::gaussian(), 2, 2.0, 0, 1, 0.5, 64), SetupError);
    CHECK_NOTHROW(build_discrete_system(GeneratorSpec::gaussian(), 2, 2.0, 0, 1, 0.5, 64, true));
    CHECK_THROWS_AS(build_discrete_system(GeneratorSpec::meyer(), 2, 2.0, 0, 1, -0.5, 64), InvalidParameter);

    const auto sys = build_discrete_system(GeneratorSpec::meyer(), 2, 2.0, 0, 2, 0.5, 64);
    CHECK(sys.nets.size() == 3);
    CHECK(sys.l_ranges.size() == 3);
    CHECK(sys.prune_defect < 1e-8);
    CHECK(sys.atom_count() > 0);

    const auto f = random_bump_field(2, 64, 12);
    const auto e1 = discrete_frame_energy(f, sys);
    const auto e2 = discrete_frame_energy(Complex(0.0, 2.0) * f, sys);
    CHECK(e2.energy == doctest::Approx(4.0 * e1.energy).epsilon(1e-12));
    CHECK(discrete_frame_energy(GridField(2, 64), sys).energy == 0.0);
    CHECK_THROWS_AS(discrete_frame_energy(random_bump_field(3, 32, 1), sys), InvalidInput);
}

TEST_CASE("translation step sweep") {
    std::vector<GridField> tests;
    for (std::uint64_t i = 0; i < 30; ++i) tests.push_back(random_bump_field(2, 64, derive_seed(7, i)));
    const double bs[] = {0.25, 0.5, 1.0};
    const auto rows = b_sweep(GeneratorSpec::meyer(), 2, 2.0, 0, 1, bs, tests, 7, "bumps");
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].bounds.lower > 0.0);
        CHECK(rows[i].bounds.lower <= rows[i].bounds.upper);
        if (i > 0) CHECK(rows[i].bounds.lower <= rows[i - 1].bounds.lower);
    }
}

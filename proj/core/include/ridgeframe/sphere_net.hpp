#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ridgeframe/frames.hpp"
#include "ridgeframe/generators.hpp"
#include "ridgeframe/grid_field.hpp"

namespace ridgeframe {

/// Points on S^{n-1} with chord-distance separation >= epsilon and covering
/// radius <= epsilon.
struct EpsilonNet {
    std::vector<Direction> points;
    double epsilon = 1.0;
    int dim = 2;
    int level = 0;
    double a0 = 2.0;
    int k0 = 0;

    std::size_t size() const { return points.size(); }
};

/// (1/2) a0^{k0 - k}.
double level_epsilon(int k, double a0, int k0);

/// Admissible sizes [N_min, N_max] of a uniform circle net at epsilon:
/// 2 sin(pi/(2N)) <= epsilon <= 2 sin(pi/N), with N >= 2.
std::pair<std::size_t, std::size_t> circle_net_sizes(double epsilon);

/// Net at an arbitrary epsilon in (0, 2]. Circle: N_min uniformly spaced
/// points (or `size` when given and admissible). Sphere: greedy packing over
/// the verification probe set, which makes the net maximal on the probes.
EpsilonNet build_net_at(int n, double epsilon, std::optional<std::size_t> size = std::nullopt);

/// Net of level k with epsilon = level_epsilon(k, a0, k0).
EpsilonNet build_net(int n, int k, double a0, int k0 = 0,
                     std::optional<std::size_t> size = std::nullopt);

/// Probe points for covering checks, spaced about epsilon/10.
std::vector<Direction> net_probes(int n, double epsilon);

struct NetReport {
    double min_separation = 0.0;  // +inf for a single point
    double covering_radius = 0.0;
    std::size_t probes = 0;
    bool separation_ok = false;
    bool covering_ok = false;

    bool ok() const { return separation_ok && covering_ok; }
    nlohmann::json to_json() const;
};

NetReport verify_net(const EpsilonNet& net);

struct CardBounds {
    double c_hat = 0.0;
    double C_hat = 0.0;
    std::size_t min_card = 0;
    std::size_t max_card = 0;
    bool nk_bound_ok = false;  // c_hat (2/eps)^{n-1} <= N
    bool pass = false;

    nlohmann::json to_json() const;
};

/// card(closed ball B_r(u) ∩ net) / (r/eps)^{n-1} over all sample pairs.
/// Throws InvalidInput for r outside [eps, 2].
CardBounds verify_card_bounds(const EpsilonNet& net, std::span<const double> r_samples,
                              std::span<const Direction> u_samples, double max_ratio = 16.0);

struct CardSamples {
    std::vector<double> radii;
    std::vector<Direction> centres;
};

/// Geometric radii from eps to 2 and centres taken from the probe set.
CardSamples default_card_samples(const EpsilonNet& net, std::size_t radii = 12,
                                 std::size_t centres = 256);

/// CSV `k,u_index,u1,...,un`.
void write_nets_csv(std::ostream& os, std::span<const EpsilonNet> nets);

/// Atoms D_{a_k} T_{l b} G (u . x) = a_k^{1/2} G(a_k u.x - l b), a_k = a0^k,
/// G = D^{(n-1)/2} g, u in the level-k net.
struct DiscreteRidgeSystem {
    GeneratorSpec generator;
    int n = 2;
    double a0 = 2.0;
    int k0 = 0;
    int k_max = 0;
    double b = 0.5;
    double essential_radius = 40.0;
    std::size_t grid_m = 0;
    std::vector<EpsilonNet> nets;                  // levels k0..k_max
    std::vector<std::pair<long, long>> l_ranges;   // per level
    double prune_defect = 0.0;                     // on the reference Gaussian

    std::size_t atom_count() const;
    nlohmann::json manifest() const;
};

/// Throws SetupError when the setup conditions fail and override_setup is
/// not set.
DiscreteRidgeSystem build_discrete_system(const GeneratorSpec& g, int n, double a0, int k0,
                                          int k_max, double b, std::size_t m,
                                          bool override_setup = false,
                                          double essential_radius = 40.0);

struct DiscreteEnergy {
    double energy = 0.0;
    double prune_defect = 0.0;  // pruned / (kept + pruned)
};

/// sum_k sum_{u in S_k} sum_l |<f, D_{a_k} T_{l b} G_u>|^2.
DiscreteEnergy discrete_frame_energy(const GridField& f, const DiscreteRidgeSystem& sys);

/// Frame-ratio bounds over the given test fields (at least 30).
BoundsEstimate discrete_frame_bounds(const DiscreteRidgeSystem& sys, std::span<const GridField> tests,
                                     std::uint64_t seed, const std::string& family);

struct BSweepRow {
    double b = 0.0;
    BoundsEstimate bounds;
};

/// Bounds for each translation step b, all else fixed.
std::vector<BSweepRow> b_sweep(const GeneratorSpec& g, int n, double a0, int k0, int k_max,
                               std::span<const double> bs, std::span<const GridField> tests,
                               std::uint64_t seed, const std::string& family,
                               bool override_setup = false);

}  // namespace ridgeframe

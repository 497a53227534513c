#include "ridgeframe/sphere_net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "ridgeframe/errors.hpp"
#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/parallel.hpp"
#include "ridgeframe/ridge_radon.hpp"
#include "scales.hpp"

namespace ridgeframe {
namespace {

constexpr double kTol = 1e-12;

double chord(const Direction& a, const Direction& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(a.dim()); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Uniform hash of points on the sphere into cubes of side `cell`.
class CellIndex {
public:
    CellIndex(double cell) : cell_(cell) {}

    void insert(const Direction& p, std::size_t id) { cells_[key(p, 0, 0, 0)].push_back(id); }

    template <class F>
    void neighbours(const Direction& p, F&& visit) const {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    const auto it = cells_.find(key(p, dx, dy, dz));
                    if (it == cells_.end()) continue;
                    for (std::size_t id : it->second) visit(id);
                }
    }

private:
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;

    std::uint64_t key(const Direction& p, int dx, int dy, int dz) const {
        auto c = [&](std::size_t a, int d) -> std::uint64_t {
            const double v = a < static_cast<std::size_t>(p.dim()) ? p[a] : 0.0;
            const auto i = static_cast<long>(std::floor((v + 1.0) / cell_)) + d + 1;
            return static_cast<std::uint64_t>(i) & 0x1FFFFF;
        };
        return (c(0, dx) << 42) | (c(1, dy) << 21) | c(2, dz);
    }
};

std::vector<Direction> fibonacci_points(std::size_t count) {
    std::vector<Direction> out;
    out.reserve(count);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * static_cast<double>(i);
        out.emplace_back(std::vector<double>{r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
}

void check_epsilon(double eps) {
    if (!(eps > 0.0) || eps > 2.0) throw InvalidParameter("epsilon must lie in (0, 2]");
}

}  // namespace

double level_epsilon(int k, double a0, int k0) {
    if (!(a0 > 1.0)) throw InvalidParameter("a0 must be > 1");
    if (k < k0) throw InvalidParameter("net level k must be >= k0");
    return 0.5 * std::pow(a0, k0 - k);
}

std::pair<std::size_t, std::size_t> circle_net_sizes(double eps) {
    check_epsilon(eps);
    std::size_t lo = 2;
    while (2.0 * std::sin(kPi / (2.0 * static_cast<double>(lo))) > eps * (1.0 + kTol)) ++lo;
    std::size_t hi = 2;
    while (2.0 * std::sin(kPi / static_cast<double>(hi + 1)) >= eps * (1.0 - kTol)) ++hi;
    if (lo > hi) throw Error("no admissible circle net size");
    return {lo, hi};
}

std::vector<Direction> net_probes(int n, double eps) {
    check_epsilon(eps);
    if (n == 2) {
        const auto count = std::max<std::size_t>(720, static_cast<std::size_t>(std::ceil(20.0 * kPi / eps)));
        std::vector<Direction> out;
        out.reserve(count);
        for (std::size_t j = 0; j < count; ++j)
            out.push_back(Direction::from_angle(2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(count)));
        return out;
    }
    if (n == 3) {
        const auto count = std::max<std::size_t>(2000, static_cast<std::size_t>(std::ceil(400.0 * kPi / (eps * eps))));
        return fibonacci_points(count);
    }
    throw InvalidParameter("nets are available for n = 2 and n = 3");
}

EpsilonNet build_net_at(int n, double eps, std::optional<std::size_t> size) {
    check_epsilon(eps);
    EpsilonNet net;
    net.epsilon = eps;
    net.dim = n;
    if (n == 2) {
        const auto [lo, hi] = circle_net_sizes(eps);
        std::size_t count = lo;
        if (size) {
            if (*size < lo || *size > hi)
                throw InvalidParameter("circle net size " + std::to_string(*size) + " outside the admissible window [" +
                                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
            count = *size;
        }
        for (std::size_t j = 0; j < count; ++j)
            net.points.push_back(Direction::from_angle(2.0 * kPi * static_cast<double>(j) / static_cast<double>(count)));
        return net;
    }
    if (n != 3) throw InvalidParameter("nets are available for n = 2 and n = 3");
    if (size) throw InvalidParameter("size override is only available on the circle");
    // Accept probes in order when they keep the separation; every rejected
    // probe then lies within epsilon of the net.
    const auto probes = net_probes(3, eps);
    CellIndex index(eps);
    for (const auto& p : probes) {
        bool free = true;
        index.neighbours(p, [&](std::size_t id) {
            if (free && chord(p, net.points[id]) < eps) free = false;
        });
        if (!free) continue;
        index.insert(p, net.points.size());
        net.points.push_back(p);
    }
    return net;
}

EpsilonNet build_net(int n, int k, double a0, int k0, std::optional<std::size_t> size) {
    EpsilonNet net = build_net_at(n, level_epsilon(k, a0, k0), size);
    net.level = k;
    net.a0 = a0;
    net.k0 = k0;
    return net;
}

nlohmann::json NetReport::to_json() const {
    nlohmann::json j{{"covering_radius", covering_radius},
                     {"probes", probes},
                     {"separation_ok", separation_ok},
                     {"covering_ok", covering_ok}};
    if (std::isinf(min_separation)) j["min_separation"] = "inf";
    else j["min_separation"] = min_separation;
    return j;
}

NetReport verify_net(const EpsilonNet& net) {
    if (net.points.empty()) throw InvalidInput("verify_net: empty net");
    const double eps = net.epsilon;
    const std::size_t count = net.points.size();
    NetReport r;
    r.min_separation = std::numeric_limits<double>::infinity();
    if (count <= 2000) {
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j)
                r.min_separation = std::min(r.min_separation, chord(net.points[i], net.points[j]));
    } else {
        CellIndex index(2.0 * eps);
        for (std::size_t i = 0; i < count; ++i) index.insert(net.points[i], i);
        for (std::size_t i = 0; i < count; ++i)
            index.neighbours(net.points[i], [&](std::size_t j) {
                if (j != i) r.min_separation = std::min(r.min_separation, chord(net.points[i], net.points[j]));
            });
        if (r.min_separation > 2.0 * eps) {
            for (std::size_t i = 0; i < count; ++i)
                for (std::size_t j = i + 1; j < count; ++j)
                    r.min_separation = std::min(r.min_separation, chord(net.points[i], net.points[j]));
        }
    }

    const auto probes = net_probes(net.dim, eps);
    r.probes = probes.size();
    CellIndex index(eps);
    for (std::size_t i = 0; i < count; ++i) index.insert(net.points[i], i);
    std::vector<double> nearest(probes.size());
    parallel_for(probes.size(), [&](std::size_t p) {
        double best = std::numeric_limits<double>::infinity();
        index.neighbours(probes[p], [&](std::size_t id) { best = std::min(best, chord(probes[p], net.points[id])); });
        if (best > eps)
            for (const auto& q : net.points) best = std::min(best, chord(probes[p], q));
        nearest[p] = best;
    });
    r.covering_radius = *std::max_element(nearest.begin(), nearest.end());
    r.separation_ok = r.min_separation >= eps * (1.0 - kTol);
    r.covering_ok = r.covering_radius <= eps * (1.0 + kTol);
    return r;
}

nlohmann::json CardBounds::to_json() const {
    return {{"c_hat", c_hat},         {"C_hat", C_hat},           {"min_card", min_card},
            {"max_card", max_card},   {"nk_bound_ok", nk_bound_ok}, {"pass", pass}};
}

CardBounds verify_card_bounds(const EpsilonNet& net, std::span<const double> radii,
                              std::span<const Direction> centres, double max_ratio) {
    if (net.points.empty()) throw InvalidInput("verify_card_bounds: empty net");
    if (radii.empty() || centres.empty()) throw InvalidInput("verify_card_bounds: no samples");
    const double eps = net.epsilon;
    for (double r : radii)
        if (r < eps * (1.0 - kTol) || r > 2.0 * (1.0 + kTol))
            throw InvalidInput("verify_card_bounds: radius " + format_double(r) + " outside [epsilon, 2]");
    const double power = net.dim - 1;
    std::vector<double> lo(centres.size()), hi(centres.size());
    std::vector<std::size_t> cmin(centres.size()), cmax(centres.size());
    parallel_for(centres.size(), [&](std::size_t c) {
        std::vector<double> d;
        d.reserve(net.points.size());
        for (const auto& p : net.points) d.push_back(chord(centres[c], p));
        std::sort(d.begin(), d.end());
        lo[c] = std::numeric_limits<double>::infinity();
        hi[c] = 0.0;
        cmin[c] = net.points.size();
        cmax[c] = 0;
        for (double r : radii) {
            const auto card = static_cast<std::size_t>(
                std::upper_bound(d.begin(), d.end(), r * (1.0 + kTol)) - d.begin());
            const double ratio = static_cast<double>(card) / std::pow(r / eps, power);
            lo[c] = std::min(lo[c], ratio);
            hi[c] = std::max(hi[c], ratio);
            cmin[c] = std::min(cmin[c], card);
            cmax[c] = std::max(cmax[c], card);
        }
    });
    CardBounds b;
    b.c_hat = *std::min_element(lo.begin(), lo.end());
    b.C_hat = *std::max_element(hi.begin(), hi.end());
    b.min_card = *std::min_element(cmin.begin(), cmin.end());
    b.max_card = *std::max_element(cmax.begin(), cmax.end());
    b.nk_bound_ok = b.c_hat * std::pow(2.0 / eps, power) <= static_cast<double>(net.points.size()) * (1.0 + kTol);
    b.pass = b.c_hat > 0.0 && std::isfinite(b.C_hat) && b.C_hat <= max_ratio * b.c_hat && b.nk_bound_ok;
    return b;
}

CardSamples default_card_samples(const EpsilonNet& net, std::size_t radii, std::size_t centres) {
    CardSamples s;
    const double eps = net.epsilon;
    if (radii < 2 || eps >= 2.0) {
        s.radii.push_back(std::min(2.0, eps));
    } else {
        for (std::size_t i = 0; i < radii; ++i)
            s.radii.push_back(eps * std::pow(2.0 / eps, static_cast<double>(i) / static_cast<double>(radii - 1)));
        s.radii.back() = 2.0;
    }
    const auto probes = net_probes(net.dim, eps);
    const std::size_t stride = std::max<std::size_t>(1, probes.size() / std::max<std::size_t>(1, centres));
    for (std::size_t i = 0; i < probes.size() && s.centres.size() < centres; i += stride)
        s.centres.push_back(probes[i]);
    return s;
}

void write_nets_csv(std::ostream& os, std::span<const EpsilonNet> nets) {
    const int n = nets.empty() ? 2 : nets.front().dim;
    os << "k,u_index";
    for (int a = 1; a <= n; ++a) os << ",u" << a;
    os << '\n';
    for (const auto& net : nets)
        for (std::size_t i = 0; i < net.points.size(); ++i) {
            os << net.level << ',' << i;
            for (double x : net.points[i].coords()) os << ',' << format_double(x);
            os << '\n';
        }
}

// ---------------------------------------------------------------------------

std::size_t DiscreteRidgeSystem::atom_count() const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < nets.size(); ++i)
        total += nets[i].size() * static_cast<std::size_t>(l_ranges[i].second - l_ranges[i].first + 1);
    return total;
}

nlohmann::json DiscreteRidgeSystem::manifest() const {
    nlohmann::json sizes = nlohmann::json::array(), ranges = nlohmann::json::array();
    for (const auto& net : nets) sizes.push_back(net.size());
    for (const auto& [lo, hi] : l_ranges) ranges.push_back({lo, hi});
    return {{"generator", generator.manifest()},
            {"n", n},
            {"a0", a0},
            {"k0", k0},
            {"k_max", k_max},
            {"b", b},
            {"net_sizes", sizes},
            {"l_ranges", ranges},
            {"essential_radius", essential_radius},
            {"grid_m", grid_m},
            {"prune_defect", prune_defect}};
}

DiscreteRidgeSystem build_discrete_system(const GeneratorSpec& g, int n, double a0, int k0, int k_max,
                                          double b, std::size_t m, bool override_setup,
                                          double essential_radius) {
    if (n != 2 && n != 3) throw InvalidParameter("discrete ridge system: n must be 2 or 3");
    if (!(a0 > 1.0)) throw InvalidParameter("discrete ridge system: a0 must be > 1");
    if (!(b > 0.0)) throw InvalidParameter("discrete ridge system: b must be > 0");
    if (k_max < k0) throw InvalidParameter("discrete ridge system: k_max must be >= k0");
    if (!(essential_radius > 0.0)) throw InvalidParameter("discrete ridge system: essential radius must be > 0");
    if (!override_setup) {
        const SetupReport rep = check_general_setup(g, a0, n);
        if (!rep.all_hold()) {
            std::string failed;
            if (!rep.condition_i.holds) failed += " (i)";
            if (!rep.condition_ii.holds) failed += " (ii)";
            if (!rep.condition_iii.holds) failed += " (iii)";
            throw SetupError("setup conditions fail for " + g.kind_name() + ":" + failed);
        }
    }
    DiscreteRidgeSystem sys{g, n, a0, k0, k_max, b, essential_radius, m, {}, {}, 0.0};
    for (int k = k0; k <= k_max; ++k) {
        sys.nets.push_back(build_net(n, k, a0, k0));
        // Atom centre l b / a_k must lie within the ridge range plus the
        // essential radius at scale 1/a_k.
        const double s = std::pow(a0, -k);
        const auto reach = static_cast<long>(std::ceil((detail::ridge_reach(n) / s + essential_radius) / b));
        sys.l_ranges.emplace_back(-reach, reach);
    }
    sys.prune_defect = discrete_frame_energy(gaussian_field(n, m), sys).prune_defect;
    return sys;
}

DiscreteEnergy discrete_frame_energy(const GridField& f, const DiscreteRidgeSystem& sys) {
    if (f.dim() != sys.n) throw InvalidInput("discrete_frame_energy: dimension mismatch");
    struct Pair {
        std::size_t level;
        std::size_t u;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < sys.nets.size(); ++i)
        for (std::size_t u = 0; u < sys.nets[i].size(); ++u) pairs.push_back({i, u});
    const double band = detail::mother_band(sys.generator);
    const double alpha = detail::alpha_of(sys.n);
    const double nyquist = 0.5 / f.spacing();
    std::vector<double> kept(pairs.size()), dropped(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t p) {
        const auto [level, u] = pairs[p];
        const int k = sys.k0 + static_cast<int>(level);
        const double s = std::pow(sys.a0, -k);
        const SampledSignal R = radon_slice(f, sys.nets[level].points[u]);
        const auto sg = detail::scale_grid(s, sys.b, sys.n, band, sys.essential_radius, 64.0);
        const auto [lo, hi] = sys.l_ranges[level];
        const auto sc = detail::scale_coefficients(R, sys.generator, sg, sys.b, sys.n, alpha, lo, hi,
                                                   sys.essential_radius, nyquist);
        // The atoms carry |s gamma|^alpha rather than |gamma|^alpha.
        const double w = std::pow(s, 2.0 * alpha);
        double e = 0.0;
        for (const auto& [l, c] : sc.kept) e += std::norm(c);
        kept[p] = w * e;
        dropped[p] = w * sc.dropped;
    });
    DiscreteEnergy out;
    out.energy = detail::deterministic_sum(kept);
    const double d = detail::deterministic_sum(dropped);
    out.prune_defect = out.energy + d > 0.0 ? d / (out.energy + d) : 0.0;
    return out;
}

BoundsEstimate discrete_frame_bounds(const DiscreteRidgeSystem& sys, std::span<const GridField> tests,
                                     std::uint64_t seed, const std::string& family) {
    return estimate_bounds(
        tests.size(),
        [&](std::size_t i) {
            const auto e = discrete_frame_energy(tests[i], sys);
            return TrialEnergy{e.energy, tests[i].norm2(), e.prune_defect};
        },
        seed, family);
}

std::vector<BSweepRow> b_sweep(const GeneratorSpec& g, int n, double a0, int k0, int k_max,
                               std::span<const double> bs, std::span<const GridField> tests,
                               std::uint64_t seed, const std::string& family, bool override_setup) {
    if (tests.empty()) throw InvalidInput("b_sweep: no test fields");
    std::vector<BSweepRow> rows;
    for (double b : bs) {
        const auto sys = build_discrete_system(g, n, a0, k0, k_max, b, tests.front().per_axis(), override_setup);
        rows.push_back({b, discrete_frame_bounds(sys, tests, seed, family)});
    }
    return rows;
}

}  // namespace ridgeframe

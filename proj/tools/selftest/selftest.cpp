#include "selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ridgeframe/decomposition.hpp"
#include "ridgeframe/errors.hpp"
#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/frames.hpp"
#include "ridgeframe/generators.hpp"
#include "ridgeframe/parallel.hpp"
#include "ridgeframe/ridge_radon.hpp"
#include "ridgeframe/sphere_net.hpp"

namespace ridgeframe::selftest {
namespace {

struct Spec {
    int id;
    const char* name;
    double budget;
};

constexpr Spec kSpecs[] = {
    {1, "fourier slice", 60.0},
    {2, "ridge duality", 30.0},
    {3, "norm identity", 10.0},
    {4, "meyer orthonormality", 30.0},
    {5, "complex b-spline suite", 60.0},
    {6, "continuous gabor tight bound", 60.0},
    {7, "continuous wavelet resolution", 90.0},
    {8, "semi-discrete round trip", 300.0},
    {9, "frame inequality", 60.0},
    {10, "epsilon nets", 30.0},
    {11, "discrete ridge system", 600.0},
    {12, "determinism", 1200.0},
};

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) { return derive_seed(seed, tag); }

GeneratorSpec meyer(const Config& cfg) { return GeneratorSpec(MeyerWavelet{cfg.meyer_nu}); }

using Metrics = std::vector<std::pair<std::string, double>>;

struct Outcome {
    bool pass = false;
    Metrics metrics;
    std::string note;
};

// 1 and 2 share their fixtures. Bilinear interpolation in radon_direct costs
// about h^2 |f''| / 8, so the bumps are kept wider than the default.
struct SliceFixture {
    std::vector<std::vector<Bump>> bumps;
    std::vector<std::vector<Direction>> dirs;
};

SliceFixture slice_fixture(const Config& cfg, std::uint64_t tag) {
    SliceFixture fx;
    const std::size_t cases = cfg.quick ? 5 : 20;
    const std::size_t dirs = cfg.quick ? 4 : 16;
    for (std::size_t i = 0; i < cases; ++i) {
        fx.bumps.push_back(random_bumps(2, sub_seed(cfg.seed, tag * 100 + i), 4, 0.32, 0.38));
        fx.dirs.push_back(random_directions(2, dirs, sub_seed(cfg.seed, tag * 100 + 50 + i)));
    }
    return fx;
}

Outcome fourier_slice(const Config& cfg) {
    const auto fx = slice_fixture(cfg, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < fx.bumps.size(); ++i) {
        const GridField f = bump_field(256, fx.bumps[i]);
        for (const auto& u : fx.dirs[i]) {
            const Spectrum s = forward_ft(radon_direct(f, u));
            std::vector<Complex> exact(s.size());
            for (std::size_t k = 0; k < s.size(); ++k) {
                const double eta = s.gamma(k);
                const double xi[2] = {eta * u[0], eta * u[1]};
                exact[k] = bump_spectrum(fx.bumps[i], xi);
            }
            worst = std::max(worst, relative_l2(s.values(), exact));
        }
    }
    return {worst < 1e-3, {{"max_relative_l2", worst}}, {}};
}

Outcome ridge_duality(const Config& cfg) {
    const auto fx = slice_fixture(cfg, 1);
    const GeneratorSpec g = meyer(cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < fx.bumps.size(); ++i) {
        const GridField f = bump_field(256, fx.bumps[i]);
        for (const auto& u : fx.dirs[i]) {
            const Complex one_d = ridge_inner(f, g, u);
            const Complex n_d = ridge_inner_direct(f, g, u);
            worst = std::max(worst, std::abs(one_d - n_d) / std::abs(n_d));
        }
    }
    return {worst < 1e-6, {{"max_relative_gap", worst}}, {}};
}

Outcome norm_identity(const Config&) {
    const GridField f = gaussian_field(2, 128, 0.35);
    const auto r = norm_identity_check(f, DirectionSet::uniform(2, 64));
    return {r.value >= 1.98 && r.value <= 2.02, {{"value", r.value}}, {}};
}

Outcome meyer_orthonormality(const Config& cfg) {
    const SmoothStep nu = smooth_step_by_name(cfg.meyer_nu);
    const Grid1D grid = Grid1D::centered(128.0, 16384);
    std::vector<SampledSignal> basis;
    for (int m = -2; m <= 2; ++m)
        for (int k = -2; k <= 2; ++k) basis.push_back(meyer_basis_element(k, m, grid, nu));
    std::vector<double> rows(basis.size());
    parallel_for(basis.size(), [&](std::size_t i) {
        double w = 0.0;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Complex g = inner(basis[i], basis[j]);
            w = std::max(w, std::abs(g - Complex(i == j ? 1.0 : 0.0)));
        }
        rows[i] = w;
    });
    const double gram = *std::max_element(rows.begin(), rows.end());

    Rng rng(sub_seed(cfg.seed, 4));
    double pou = 0.0;
    for (int s = 0; s < 1000; ++s) {
        const double mag = std::pow(10.0, rng.uniform(-3.0, 3.0));
        const double gamma = rng.uniform() < 0.5 ? -mag : mag;
        double sum = 0.0;
        for (int m = -60; m <= 60; ++m) sum += std::norm(meyer_psi_hat(std::ldexp(gamma, m), nu));
        pou = std::max(pou, std::abs(sum - 1.0));
    }
    return {gram < 1e-5 && pou < 1e-10, {{"gram_max_error", gram}, {"partition_max_error", pou}}, {}};
}

Outcome bspline_suite(const Config&) {
    const Complex z(3.5, 1.0);
    double fact = 0.0;
    for (int j = 0; j < 2000; ++j) {
        const double g = -10.0 + 0.01 * (j + 0.5);
        fact = std::max(fact, std::abs(complex_bspline_hat(z, g) - complex_bspline_hat_factored(z, g)));
    }
    double periodic = 0.0;
    for (int j = 0; j < 200; ++j) {
        const double g = (j + 0.5) / 200.0;
        double sum = 0.0;
        for (int k = -1000; k <= 1000; ++k) sum += std::norm(orthonormal_scaling_hat(z, g + k));
        periodic = std::max(periodic, std::abs(sum - 1.0));
    }
    const double at_zero = std::abs(bspline_wavelet_hat(z, 0.0));

    // <psi, psi(. - 1)> = int |psihat|^2 exp(2 pi i gamma), unit pieces.
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    std::vector<double> re(800), im(800), nn(800);
    parallel_for(800, [&](std::size_t i) {
        const double lo = static_cast<double>(i) - 400.0;
        auto p = [&](double g) { return std::norm(bspline_wavelet_hat(z, g)); };
        re[i] = GK::integrate([&](double g) { return p(g) * std::cos(2.0 * kPi * g); }, lo, lo + 1.0, 0);
        im[i] = GK::integrate([&](double g) { return p(g) * std::sin(2.0 * kPi * g); }, lo, lo + 1.0, 0);
        nn[i] = GK::integrate(p, lo, lo + 1.0, 0);
    });
    double sr = 0.0, si = 0.0, sn = 0.0;
    for (std::size_t i = 0; i < 800; ++i) {
        sr += re[i];
        si += im[i];
        sn += nn[i];
    }
    const double shift = std::hypot(sr, si) / sn;
    return {fact < 1e-12 && periodic < 1e-8 && at_zero < 1e-10 && shift < 1e-6,
            {{"factorization_max_error", fact},
             {"translate_partition_max_error", periodic},
             {"wavelet_hat_at_zero", at_zero},
             {"shift_inner_relative", shift}},
            {}};
}

Outcome gabor_tight(const Config& cfg) {
    const Grid1D grid = Grid1D::centered(32.0, 1024);
    const auto tests = random_test_signals(grid, 30, sub_seed(cfg.seed, 6));
    const FrameSystem sys(ContinuousGabor{GeneratorSpec::gaussian(), Complex(1.0), GaborQuadrature{}});
    const auto b = estimate_frame_bounds(sys, tests, sub_seed(cfg.seed, 6), "packets");
    const bool ok = std::abs(b.lower - 1.0) <= 0.03 && std::abs(b.upper - 1.0) <= 0.03;
    return {ok, {{"lower", b.lower}, {"upper", b.upper}, {"coverage_defect", b.coverage_defect}}, {}};
}

Outcome wavelet_resolution(const Config& cfg) {
    const Grid1D grid = Grid1D::centered(64.0, 2048);
    const auto f = band_bump_signal(grid, 0.4, 1.6);
    const auto g = band_bump_signal(grid, 0.5, 2.0, 0.25);
    const auto r = wavelet_resolution_check(f, g, meyer(cfg));
    const Complex q = r.lhs / r.rhs;
    const double err = std::abs(q - 1.0);
    return {err < 0.02, {{"ratio_re", q.real()}, {"ratio_im", q.imag()}, {"deviation", err}}, {}};
}

Outcome semi_discrete(const Config& cfg) {
    const Bump bump{{0.3, -0.2}, 0.25, Complex(1.0)};
    GridField f = bump_field(128, std::span<const Bump>(&bump, 1));
    f *= 1.0 / f.norm();
    const auto d64 = DirectionSet::uniform(2, 64);
    const auto d128 = DirectionSet::uniform(2, 128);
    const FrameSystem sys(plan_semidiscrete(f, d64, meyer(cfg), 1e-4));
    const auto t64 = analyze(f, sys, d64);
    const double e64 = relative_l2(synthesize(t64, sys, d64, 128), f);
    const auto t128 = analyze(f, sys, d128);
    const double e128 = relative_l2(synthesize(t128, sys, d128, 128), f);
    return {e64 < 0.05 && e128 < e64,
            {{"error_64", e64}, {"error_128", e128}, {"truncation_defect", t64.truncation_defect}},
            {}};
}

Outcome frame_inequality(const Config& cfg) {
    const GridField f = gaussian_field(2, 128, 0.35);
    const auto dirs = DirectionSet::uniform(2, 64);
    const FrameSystem sys(plan_semidiscrete(f, dirs, meyer(cfg), 1e-4));
    const auto r = frame_inequality_check(f, sys, dirs, 1.0, 1.0);
    const double ratio = r.value / (2.0 * r.norm2);
    return {ratio >= 0.95 && ratio <= 1.05, {{"ratio", ratio}, {"truncation_defect", r.truncation_defect}}, {}};
}

Outcome epsilon_nets(const Config&) {
    bool ok = true;
    double worst_ratio = 0.0, worst_sep = std::numeric_limits<double>::infinity(), worst_cov = 0.0;
    Metrics m;
    for (int n : {2, 3})
        for (int k = 0; k <= 4; ++k) {
            const auto net = build_net(n, k, 2.0, 0);
            const auto r = verify_net(net);
            const auto s = default_card_samples(net);
            const auto c = verify_card_bounds(net, s.radii, s.centres);
            ok = ok && r.ok() && c.pass;
            worst_ratio = std::max(worst_ratio, c.C_hat / c.c_hat);
            worst_sep = std::min(worst_sep, r.min_separation / net.epsilon);
            worst_cov = std::max(worst_cov, r.covering_radius / net.epsilon);
            m.emplace_back("size_n" + std::to_string(n) + "_k" + std::to_string(k), static_cast<double>(net.size()));
        }
    m.emplace_back("max_card_ratio", worst_ratio);
    m.emplace_back("min_separation_over_eps", worst_sep);
    m.emplace_back("max_covering_over_eps", worst_cov);
    return {ok && worst_ratio <= 16.0, m, {}};
}

Outcome discrete_system(const Config& cfg) {
    const auto sys = build_discrete_system(meyer(cfg), 2, 2.0, 0, 3, 0.5, 128);
    BoundsEstimate est[2];
    for (int s = 0; s < 2; ++s) {
        const std::uint64_t seed = sub_seed(cfg.seed, 110 + static_cast<std::uint64_t>(s));
        std::vector<GridField> tests;
        for (std::uint64_t i = 0; i < 30; ++i) tests.push_back(random_bump_field(2, 128, sub_seed(seed, i)));
        est[s] = discrete_frame_bounds(sys, tests, seed, "bumps");
    }
    auto stable = [](double a, double b) { return std::abs(a - b) <= 0.1 * std::min(a, b); };
    bool ok = true;
    for (const auto& e : est) ok = ok && std::isfinite(e.upper) && e.lower > 1e-3 * e.upper;
    ok = ok && stable(est[0].lower, est[1].lower) && stable(est[0].upper, est[1].upper);
    return {ok,
            {{"lower_a", est[0].lower},
             {"upper_a", est[0].upper},
             {"lower_b", est[1].lower},
             {"upper_b", est[1].upper},
             {"prune_defect", sys.prune_defect},
             {"atoms", static_cast<double>(sys.atom_count())}},
            {}};
}

Outcome dispatch(int id, const Config& cfg) {
    switch (id) {
        case 1: return fourier_slice(cfg);
        case 2: return ridge_duality(cfg);
        case 3: return norm_identity(cfg);
        case 4: return meyer_orthonormality(cfg);
        case 5: return bspline_suite(cfg);
        case 6: return gabor_tight(cfg);
        case 7: return wavelet_resolution(cfg);
        case 8: return semi_discrete(cfg);
        case 9: return frame_inequality(cfg);
        case 10: return epsilon_nets(cfg);
        case 11: return discrete_system(cfg);
        default: throw InvalidParameter("no criterion " + std::to_string(id));
    }
}

double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

bool selected(const Config& cfg, int id) {
    return cfg.only.empty() || std::find(cfg.only.begin(), cfg.only.end(), id) != cfg.only.end();
}

}  // namespace

std::string Result::report() const {
    std::ostringstream os;
    os << "criterion " << id << " [" << name << "]: " << (numeric_pass ? "PASS" : "FAIL");
    for (const auto& [k, v] : metrics) os << ' ' << k << '=' << format_double(v);
    if (!note.empty()) os << " note=\"" << note << '"';
    return os.str();
}

Result run_one(int id, const Config& cfg) {
    const auto& spec = kSpecs[id - 1];
    Result r;
    r.id = id;
    r.name = spec.name;
    r.budget = spec.budget;
    const double t0 = now();
    try {
        auto o = dispatch(id, cfg);
        r.numeric_pass = o.pass;
        r.metrics = std::move(o.metrics);
        r.note = std::move(o.note);
    } catch (const std::exception& e) {
        r.numeric_pass = false;
        r.note = e.what();
    }
    r.seconds = now() - t0;
    return r;
}

std::vector<Result> run(const Config& cfg, const std::function<void(const Result&)>& progress) {
    std::vector<Result> out;
    for (int id = 1; id <= 11; ++id) {
        if (!selected(cfg, id)) continue;
        out.push_back(run_one(id, cfg));
        if (progress) progress(out.back());
    }
    if (selected(cfg, 12)) {
        Result r;
        r.id = 12;
        r.name = kSpecs[11].name;
        r.budget = kSpecs[11].budget;
        const double t0 = now();
        const std::size_t base = thread_count();
        const std::size_t other = base == 1 ? 4 : 1;
        std::vector<int> ids;
        for (const auto& x : out) ids.push_back(x.id);
        if (ids.empty())
            for (int id = 1; id <= 11; ++id) ids.push_back(id);
        std::vector<std::string> first;
        for (int id : ids) {
            const auto it = std::find_if(out.begin(), out.end(), [&](const Result& x) { return x.id == id; });
            first.push_back(it != out.end() ? it->report() : run_one(id, cfg).report());
        }
        set_thread_count(other);
        std::size_t mismatches = 0;
        std::string which;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (run_one(ids[i], cfg).report() != first[i]) {
                ++mismatches;
                which += (which.empty() ? "" : ",") + std::to_string(ids[i]);
            }
        }
        set_thread_count(base);
        r.numeric_pass = mismatches == 0;
        r.metrics = {{"criteria_compared", static_cast<double>(ids.size())},
                     {"thread_counts_a", static_cast<double>(base)},
                     {"thread_counts_b", static_cast<double>(other)},
                     {"mismatches", static_cast<double>(mismatches)}};
        if (!which.empty()) r.note = "differs: " + which;
        r.seconds = now() - t0;
        out.push_back(r);
        if (progress) progress(out.back());
    }
    return out;
}

bool all_pass(const std::vector<Result>& results) {
    return std::all_of(results.begin(), results.end(), [](const Result& r) { return r.pass(); });
}

std::string junit_xml(const std::vector<Result>& results) {
    std::size_t failures = 0;
    double total = 0.0;
    for (const auto& r : results) {
        failures += r.pass() ? 0 : 1;
        total += r.seconds;
    }
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<testsuite name=\"ridgeframe.acceptance\" tests=\"" << results.size() << "\" failures=\"" << failures
       << "\" errors=\"0\" time=\"" << format_double(total) << "\">\n";
    for (const auto& r : results) {
        os << "  <testcase classname=\"acceptance\" name=\"criterion_" << r.id << "\" time=\""
           << format_double(r.seconds) << "\">\n";
        if (!r.numeric_pass)
            os << "    <failure message=\"" << xml_escape(r.name) << " outside tolerance\">"
               << xml_escape(r.report()) << "</failure>\n";
        else if (!r.within_budget())
            os << "    <failure message=\"runtime budget exceeded\">" << format_double(r.seconds) << " s over "
               << format_double(r.budget) << " s</failure>\n";
        os << "    <system-out>" << xml_escape(r.report()) << "</system-out>\n";
        os << "  </testcase>\n";
    }
    os << "</testsuite>\n";
    return os.str();
}

}  // namespace ridgeframe::selftest

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <regex>

#include <nlohmann/json.hpp>

#include "ridgeframe/decomposition.hpp"
#include "ridgeframe/errors.hpp"
#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/frames.hpp"
#include "ridgeframe/generators.hpp"
#include "ridgeframe/grid_field.hpp"
#include "ridgeframe/ridge_radon.hpp"
#include "ridgeframe/sphere_net.hpp"
#include "selftest.hpp"

namespace ridgeframe::cli {
namespace {

using nlohmann::json;

Complex parse_complex(const std::string& text) {
    static const std::regex re(
        R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$)");
    std::smatch mt;
    if (!std::regex_match(text, mt, re)) throw UsageError("cannot parse complex number '" + text + "'");
    const double real = std::stod(mt[1].str());
    double imag = 0.0;
    if (mt[2].matched) {
        imag = mt[3].matched ? std::stod(mt[3].str()) : 1.0;
        if (mt[2].str() == "-") imag = -imag;
    }
    return {real, imag};
}

GeneratorSpec make_generator(const std::string& kind, const std::string& z, const std::string& nu,
                             bool orthonormal, double scale, double shift, double lo, double hi) {
    auto need_z = [&]() {
        if (z.empty()) throw UsageError("--z is required for --kind " + kind);
        return parse_complex(z);
    };
    if (kind == "meyer") return GeneratorSpec(MeyerWavelet{nu});
    if (kind == "cbspline") return GeneratorSpec::cbspline(need_z(), orthonormal);
    if (kind == "cbspline_wavelet") return GeneratorSpec::cbspline_wavelet(need_z());
    if (kind == "gaussian") return GeneratorSpec::gaussian(scale, shift);
    if (kind == "band") return GeneratorSpec::band(lo, hi);
    throw UsageError("unknown generator kind '" + kind + "'");
}

void write_json(const std::string& path, const json& j) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidInput("cannot open '" + path + "' for writing");
    os << j.dump(2) << '\n';
}

bool ends_with(const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

GridField read_any_field(const std::string& path) {
    return ends_with(path, ".csv") ? read_field_csv(path) : read_field(path);
}

double weighted_energy(const CoefficientTable& t) {
    const auto e = t.direction_energy();
    double v = 0.0;
    for (std::size_t u = 0; u < e.size(); ++u) v += t.directions.weights[u] * e[u];
    return v;
}

}  // namespace

int cmd_generator(const GeneratorArgs& a, std::uint64_t seed) {
    const GeneratorSpec g = make_generator(a.kind, a.z, a.nu, a.orthonormal, a.scale, a.shift, a.lo, a.hi);
    if (a.grid < 16) throw InvalidParameter("--grid must be at least 16");
    if (!(a.span > 0.0)) throw InvalidParameter("--span must be positive");
    const Grid1D grid = Grid1D::centered(a.span, a.grid);
    const SampledSignal sig = g.sample(grid, a.alpha);
    const Spectrum sp = g.spectrum_on(grid, a.alpha);
    write_signal_csv(a.out + "_time.csv", sig, true);
    write_spectrum_csv(a.out + "_spectrum.csv", sp, true);

    double peak = 0.0;
    for (const auto& v : sp.values()) peak = std::max(peak, std::abs(v));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, pos = 0.0, neg = 0.0;
    for (std::size_t k = 0; k < sp.size(); ++k) {
        const double p = std::norm(sp[k]);
        const double gamma = sp.gamma(k);
        if (std::abs(sp[k]) > 1e-12 * peak) {
            lo = std::min(lo, std::abs(gamma));
            hi = std::max(hi, std::abs(gamma));
        }
        (gamma > 0.0 ? pos : neg) += gamma == 0.0 ? 0.0 : p;
    }
    json summary{{"generator", g.manifest()},
                 {"grid", {{"size", a.grid}, {"span", a.span}, {"dx", grid.dx}}},
                 {"alpha", a.alpha},
                 {"seed", seed},
                 {"support_abs_gamma", {peak > 0.0 ? lo : 0.0, hi}},
                 {"spectral_asymmetry", pos + neg > 0.0 ? (pos - neg) / (pos + neg) : 0.0},
                 {"files", {a.out + "_time.csv", a.out + "_spectrum.csv"}}};
    if (a.ridge_n != 0) {
        if (a.ridge_n != 2 && a.ridge_n != 3) throw InvalidParameter("--ridge-n must be 2 or 3");
        std::vector<double> d = a.direction;
        if (d.empty()) {
            d.assign(static_cast<std::size_t>(a.ridge_n), 0.0);
            d[0] = 1.0;
        }
        if (d.size() != static_cast<std::size_t>(a.ridge_n))
            throw UsageError("--direction needs " + std::to_string(a.ridge_n) + " components");
        const Direction u(d);
        const GridField ridge = ridge_lift(g, u, a.m, 0.5 * (a.ridge_n - 1));
        write_field(a.out + "_ridge.rfgrid", ridge);
        write_field_ppm(a.out + "_ridge.ppm", ridge);
        summary["ridge"] = {{"n", a.ridge_n}, {"direction", u.coords()}, {"m", a.m}};
        summary["files"].push_back(a.out + "_ridge.rfgrid");
        summary["files"].push_back(a.out + "_ridge.ppm");
    }
    write_json(a.out + ".json", summary);
    std::cout << summary.dump(2) << '\n';
    return kOk;
}

int cmd_decompose(const DecomposeArgs& a, std::uint64_t seed) {
    const GridField f = read_any_field(a.input);
    const GeneratorSpec g = make_generator(a.kind, {}, a.nu, false, 1.0, 0.0, 1.0, 2.0);
    const DirectionSet dirs = DirectionSet::uniform(f.dim(), a.directions);
    AnalysisOptions opt;
    opt.essential_radius = a.essential_radius;
    const FrameSystem sys(plan_semidiscrete(f, dirs, g, a.tol, opt));
    CoefficientTable table = analyze(f, sys, dirs, opt);
    table.seed = seed;
    const FrameInequality fi = frame_inequality_check(f, sys, dirs, 1.0, 1.0, 1e-3, opt);

    json side = table.sidecar();
    side["essential_radius"] = a.essential_radius;
    side["energy_tol"] = a.tol;
    side["coefficient_energy"] = weighted_energy(table);
    side["frame_inequality"] = {{"value", fi.value},
                                {"lower", fi.lower},
                                {"upper", fi.upper},
                                {"norm2", fi.norm2},
                                {"truncation_defect", fi.truncation_defect},
                                {"sandwich_holds", fi.sandwich_holds}};
    {
        std::ofstream os(a.table, std::ios::binary);
        if (!os) throw InvalidInput("cannot open '" + a.table + "' for writing");
        write_table_csv(os, table);
    }
    write_json(a.sidecar, side);
    std::cout << json{{"entries", table.entries.size()},
                      {"coefficient_energy", side["coefficient_energy"]},
                      {"frame_inequality_value", fi.value},
                      {"truncation_defect", table.truncation_defect},
                      {"seed", seed}}
                     .dump(2)
              << '\n';
    return kOk;
}

int cmd_reconstruct(const ReconstructArgs& a, std::uint64_t seed) {
    std::ifstream side_is(a.sidecar, std::ios::binary);
    if (!side_is) throw InvalidInput("cannot open '" + a.sidecar + "'");
    json side;
    try {
        side_is >> side;
    } catch (const json::exception& e) {
        throw FormatError(std::string("coefficient sidecar: ") + e.what());
    }
    std::ifstream csv(a.table, std::ios::binary);
    if (!csv) throw InvalidInput("cannot open '" + a.table + "'");
    const CoefficientTable table = read_table(csv, side);
    const FrameSystem sys = FrameSystem::from_manifest(table.frame);
    AnalysisOptions opt;
    opt.essential_radius = side.value("essential_radius", a.essential_radius);
    const std::size_t m = a.m != 0 ? a.m : table.grid_m;
    if (m == 0) throw UsageError("grid size unknown: pass --m");
    const GridField out = synthesize(table, sys, table.directions, m, opt);
    write_field(a.out, out);

    json report{{"output", a.out},
                {"grid_m", m},
                {"entries", table.entries.size()},
                {"truncation_defect", table.truncation_defect},
                {"seed", seed},
                {"table_seed", table.seed}};
    if (!a.reference.empty()) {
        const GridField ref = read_any_field(a.reference);
        if (!ref.same_shape(out)) throw ConsistencyError("reference field shape differs from the reconstruction");
        report["relative_l2_error"] = relative_l2(out, ref);
    }
    write_json(a.report, report);
    std::cout << report.dump(2) << '\n';
    return kOk;
}

int cmd_framebounds(const FrameBoundsArgs& a, std::uint64_t seed) {
    if (a.tests == 0) throw InvalidParameter("--tests must be positive");
    json out{{"system", a.system}, {"seed", seed}};
    double lower = 0.0;
    if (a.system == "gabor" || a.system == "wavelet") {
        const auto tests = random_test_signals(Grid1D::centered(a.span, a.grid), a.tests, derive_seed(seed, 0));
        const FrameSystem sys =
            a.system == "gabor"
                ? FrameSystem(ContinuousGabor{GeneratorSpec::gaussian(a.scale), Complex(1.0), GaborQuadrature{}})
                : FrameSystem(ContinuousWavelet{make_generator(a.kind, {}, a.nu, false, a.scale, 0.0, a.lo, a.hi)});
        const auto est = estimate_frame_bounds(sys, tests, seed, "packets");
        out["frame"] = sys.manifest();
        out["bounds"] = est.to_json();
        if (a.system == "gabor") out["expected_tight_bound"] = 1.0;
        else out["admissibility_constant"] = admissibility_constant(std::get<ContinuousWavelet>(sys.kind()).mother);
        lower = est.lower;
    } else if (a.system == "discrete-ridge") {
        const GeneratorSpec g = make_generator(a.kind, {}, a.nu, false, a.scale, 0.0, a.lo, a.hi);
        std::vector<GridField> tests;
        for (std::size_t i = 0; i < a.tests; ++i) tests.push_back(random_bump_field(a.n, a.m, derive_seed(seed, i)));
        if (a.sweep.empty()) {
            const auto sys = build_discrete_system(g, a.n, a.a0, a.k0, a.k_max, a.b, a.m, a.override_setup);
            const auto est = discrete_frame_bounds(sys, tests, seed, "bumps");
            out["frame"] = sys.manifest();
            out["bounds"] = est.to_json();
            out["ratio"] = est.lower > 0.0 ? est.upper / est.lower : std::numeric_limits<double>::infinity();
            lower = est.lower;
        } else {
            std::vector<double> bs = a.sweep;
            std::sort(bs.begin(), bs.end());
            const auto rows = b_sweep(g, a.n, a.a0, a.k0, a.k_max, bs, tests, seed, "bumps", a.override_setup);
            json table = json::array();
            bool monotone = true;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                table.push_back({{"b", rows[i].b}, {"lower", rows[i].bounds.lower}, {"upper", rows[i].bounds.upper}});
                if (i > 0 && rows[i].bounds.lower > rows[i - 1].bounds.lower) monotone = false;
                lower = std::max(lower, rows[i].bounds.lower);
            }
            out["sweep"] = table;
            out["lower_nonincreasing_in_b"] = monotone;
        }
    } else {
        throw UsageError("unknown --system '" + a.system + "'");
    }
    if (!a.out.empty()) write_json(a.out, out);
    std::cout << out.dump(2) << '\n';
    if (lower <= 1e-12) {
        std::cerr << "degenerate system: lower frame bound estimate is zero\n";
        return kDegenerate;
    }
    return kOk;
}

int cmd_spherenet(const SphereNetArgs& a, std::uint64_t seed) {
    if (a.k < a.k0) throw InvalidParameter("--k must be >= --k0");
    std::vector<EpsilonNet> nets;
    json levels = json::array();
    bool ok = true;
    for (int k = a.k0; k <= a.k; ++k) {
        nets.push_back(build_net(a.n, k, a.a0, a.k0, a.size));
        const auto& net = nets.back();
        const NetReport r = verify_net(net);
        const CardSamples s = default_card_samples(net);
        const CardBounds c = verify_card_bounds(net, s.radii, s.centres, a.max_ratio);
        ok = ok && r.ok() && c.pass;
        levels.push_back({{"k", k}, {"epsilon", net.epsilon}, {"size", net.size()}, {"verify", r.to_json()},
                          {"card_bounds", c.to_json()}});
    }
    {
        std::ofstream os(a.out, std::ios::binary);
        if (!os) throw InvalidInput("cannot open '" + a.out + "' for writing");
        write_nets_csv(os, nets);
    }
    const json report{{"n", a.n}, {"a0", a.a0}, {"k0", a.k0}, {"k_max", a.k}, {"seed", seed},
                      {"levels", levels}, {"all_pass", ok}};
    write_json(a.report, report);
    std::cout << report.dump(2) << '\n';
    return ok ? kOk : kDegenerate;
}

int cmd_selftest(const SelftestArgs& a, std::uint64_t seed) {
    selftest::Config cfg;
    cfg.seed = seed;
    cfg.quick = a.quick;
    cfg.only = a.only;
    cfg.meyer_nu = a.meyer_nu;
    const auto results = selftest::run(cfg, [](const selftest::Result& r) {
        std::cout << (r.pass() ? "ok    " : "FAIL  ") << r.report() << '\n' << std::flush;
    });
    if (!a.junit.empty()) {
        std::ofstream os(a.junit, std::ios::binary);
        if (!os) throw InvalidInput("cannot open '" + a.junit + "' for writing");
        os << selftest::junit_xml(results);
    }
    const bool pass = selftest::all_pass(results);
    std::cout << (pass ? "selftest passed" : "selftest FAILED") << '\n';
    return pass ? kOk : kAcceptance;
}

}  // namespace ridgeframe::cli

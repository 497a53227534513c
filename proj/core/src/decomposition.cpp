#include "ridgeframe/decomposition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ridgeframe/errors.hpp"
#include "ridgeframe/parallel.hpp"
#include "ridgeframe/ridge_radon.hpp"
#include "scales.hpp"

namespace ridgeframe {
namespace {

using namespace detail;

// D^{alpha} R_u f on `grid` as a spectrum (aligned embedding of the short slice).
Spectrum weighted_radon_spectrum(const GridField& f, const Direction& u, const Grid1D& grid) {
    Spectrum F = forward_ft(embed(radon_slice(f, u), grid));
    const double alpha = alpha_of(f.dim());
    for (std::size_t k = 0; k < F.size(); ++k) F[k] *= abs_power(F.gamma(k), alpha);
    return F;
}

void check_mother(const GeneratorSpec& g, double a0, int n, const AnalysisOptions& opt) {
    const auto* w = std::get_if<ComplexBSplineWavelet>(&g.kind());
    const auto* s = std::get_if<ComplexBSplineScaling>(&g.kind());
    if (w || s) {
        const Complex z = w ? w->z : s->z;
        if (!opt.allow_bspline)
            throw SetupError("complex B-spline generators need the explicit B-spline override");
        if (!(z.real() > 0.5 * n))
            throw InvalidParameter("complex B-spline generator needs Re z > n/2");
        return;
    }
    if (!check_general_setup(g, a0, n).condition_iii.holds)
        throw SetupError("generator " + g.kind_name() + ": spectral decay fit failed");
}

struct DirectionResult {
    std::vector<CoefficientEntry> entries;
    double radon_energy = 0.0;
    double dropped = -1.0;  // energy of pruned translations and missing scales
};

ScaleGrid scale_grid(const DiscreteWaveletGrid& d, int m, int n, double band,
                     const AnalysisOptions& opt) {
    return detail::scale_grid(std::pow(d.a0, m), d.b, n, band, opt.essential_radius,
                              opt.span > 0.0 ? opt.span : 64.0);
}

DirectionResult analyze_grid(const GridField& f, const DiscreteWaveletGrid& d, double band,
                             const Direction& u, std::size_t ui, const AnalysisOptions& opt) {
    const int n = f.dim();
    const SampledSignal R = radon_slice(f, u);
    DirectionResult r;
    const Spectrum F64 = weighted_radon_spectrum(f, u, long_grid(f, kDefaultSpan));
    r.radon_energy = F64.norm2();
    std::vector<double> cover(F64.size(), 0.0);
    r.dropped = 0.0;
    for (int m = d.m_min; m <= d.m_max; ++m) {
        const ScaleGrid sg = scale_grid(d, m, n, band, opt);
        const auto sc = scale_coefficients(R, d.mother, sg, d.b, n, alpha_of(n), d.l_min, d.l_max,
                                           opt.essential_radius, 0.5 / f.spacing());
        for (const auto& [l, c] : sc.kept) r.entries.push_back({l, m, 0, ui, c});
        r.dropped += sc.dropped;
        for (std::size_t k = 0; k < F64.size(); ++k)
            cover[k] += std::norm(d.mother.spectrum(sg.scale * F64.gamma(k))) / d.b;
    }
    for (std::size_t k = 0; k < F64.size(); ++k)
        r.dropped += F64.dgamma() * std::norm(F64[k]) * std::max(0.0, 1.0 - cover[k]);
    return r;
}

// sum_m |gamma|^alpha a0^{m/2} psihat(a0^m gamma) sum_l c exp(-2 pi i gamma t)
// evaluated on the lift grid.
SampledSignal synthesize_grid(const DiscreteWaveletGrid& d, double band, int n,
                              const std::vector<const CoefficientEntry*>& list, const Grid1D& out,
                              const AnalysisOptions& opt) {
    const double alpha = alpha_of(n);
    std::map<long, std::vector<const CoefficientEntry*>> by_scale;
    for (const auto* c : list) by_scale[c->m].push_back(c);
    SampledSignal acc = SampledSignal::zeros(out);
    for (const auto& [m, entries] : by_scale) {
        const ScaleGrid sg = scale_grid(d, static_cast<int>(m), n, band, opt);
        const Grid1D& g = sg.grid;
        SampledSignal imp = SampledSignal::zeros(g);
        const long centre = static_cast<long>(g.size / 2);
        for (const auto* c : entries) {
            const long j = centre + c->k * sg.step;
            if (j < 0 || j >= static_cast<long>(g.size))
                throw InvalidInput("synthesize: translation outside the working grid of its scale");
            imp[static_cast<std::size_t>(j)] += c->value / g.dx;
        }
        Spectrum S = forward_ft(imp);
        const double amp = std::sqrt(sg.scale);
        for (std::size_t k = 0; k < g.size; ++k) {
            const double gam = g.gamma(k);
            S[k] *= amp * d.mother.spectrum(sg.scale * gam) * abs_power(gam, alpha);
        }
        acc += evaluate_on(S, out);
    }
    return acc;
}

DirectionResult analyze_custom(const GridField& f, const DiscreteCustom& d, const Direction& u,
                               std::size_t ui) {
    DirectionResult r;
    std::vector<std::pair<Grid1D, Spectrum>> cache;
    for (std::size_t k = 0; k < d.generators.size(); ++k) {
        const SampledSignal& g = d.generators[k];
        const Spectrum* F = nullptr;
        for (const auto& [grid, sp] : cache)
            if (grid.same_as(g.grid())) F = &sp;
        if (!F) {
            Spectrum sp = ray_spectrum(f, u, g.grid());
            const double alpha = alpha_of(f.dim());
            for (std::size_t b = 0; b < sp.size(); ++b) sp[b] *= abs_power(sp.gamma(b), alpha);
            if (cache.empty()) r.radon_energy = sp.norm2();
            cache.emplace_back(g.grid(), std::move(sp));
            F = &cache.back().second;
        }
        const Spectrum G = forward_ft(g);
        Complex acc{};
        for (std::size_t b = 0; b < G.size(); ++b) acc += (*F)[b] * std::conj(G[b]);
        r.entries.push_back({static_cast<long>(k), 0, 0, ui, acc * G.dgamma()});
    }
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------

double sphere_measure(int n) {
    if (n == 2) return 2.0 * kPi;
    if (n == 3) return 4.0 * kPi;
    throw InvalidParameter("sphere_measure: n must be 2 or 3");
}

DirectionSet DirectionSet::uniform(int n, std::size_t count) {
    if (count == 0) throw InvalidInput("direction set must not be empty");
    DirectionSet s;
    const double w = sphere_measure(n) / static_cast<double>(count);
    if (n == 2) {
        s.rule = "uniform";
        for (std::size_t j = 0; j < count; ++j)
            s.directions.push_back(Direction::from_angle(2.0 * kPi * static_cast<double>(j) / static_cast<double>(count)));
    } else {
        s.rule = "fibonacci";
        const double golden = kPi * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < count; ++i) {
            const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden * static_cast<double>(i);
            s.directions.emplace_back(std::vector<double>{r * std::cos(phi), r * std::sin(phi), z});
        }
    }
    s.weights.assign(count, w);
    return s;
}

int DirectionSet::dim() const { return directions.empty() ? 0 : directions.front().dim(); }

void DirectionSet::validate() const {
    if (directions.empty()) throw InvalidInput("direction set must not be empty");
    if (weights.size() != directions.size()) throw InvalidInput("direction set: one weight per direction");
    const int n = dim();
    double total = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (directions[i].dim() != n) throw InvalidInput("direction set: mixed dimensions");
        if (!(weights[i] > 0.0)) throw InvalidInput("direction set: weights must be positive");
        total += weights[i];
    }
    const double want = sphere_measure(n);
    if (std::abs(total - want) > 1e-12 * want)
        throw InvalidInput("direction set: weights do not sum to the sphere measure");
}

bool DirectionSet::same_as(const DirectionSet& o, double tol) const {
    if (size() != o.size() || dim() != o.dim()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
        if (std::abs(weights[i] - o.weights[i]) > tol * std::max(1.0, weights[i])) return false;
        for (std::size_t a = 0; a < static_cast<std::size_t>(dim()); ++a)
            if (std::abs(directions[i][a] - o.directions[i][a]) > tol) return false;
    }
    return true;
}

std::vector<double> CoefficientTable::direction_energy() const {
    std::vector<double> e(directions.size(), 0.0);
    for (const auto& c : entries) e.at(c.u) += std::norm(c.value);
    return e;
}

nlohmann::json CoefficientTable::sidecar() const {
    return {{"frame", frame},
            {"directions", directions.size()},
            {"dimension", directions.dim()},
            {"rule", directions.rule},
            {"weights", "uniform"},
            {"truncation_defect", truncation_defect},
            {"grid_m", grid_m},
            {"seed", seed}};
}

void write_table_csv(std::ostream& os, const CoefficientTable& t) {
    const int n = t.directions.dim();
    os << "k,m,l,u_index";
    for (int a = 1; a <= n; ++a) os << ",u" << a;
    os << ",re,im\n";
    for (const auto& c : t.entries) {
        os << c.k << ',' << c.m << ',' << c.l << ',' << c.u;
        for (double x : t.directions.directions.at(c.u).coords()) os << ',' << format_double(x);
        os << ',' << format_double(c.value.real()) << ',' << format_double(c.value.imag()) << '\n';
    }
}

void write_table(const std::string& csv_path, const std::string& sidecar_path,
                 const CoefficientTable& t) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw InvalidInput("cannot write " + csv_path);
    write_table_csv(csv, t);
    std::ofstream side(sidecar_path, std::ios::binary);
    if (!side) throw InvalidInput("cannot write " + sidecar_path);
    side << t.sidecar().dump(2) << '\n';
}

namespace {

template <class T>
T parse_number(const std::string& s, std::size_t line) {
    T v{};
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end)
        throw FormatError("coefficient table line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

}  // namespace

CoefficientTable read_table(std::istream& csv, const nlohmann::json& side) {
    CoefficientTable t;
    try {
        const int n = side.at("dimension").get<int>();
        const auto count = side.at("directions").get<std::size_t>();
        t.directions = DirectionSet::uniform(n, count);
        t.frame = side.at("frame");
        t.truncation_defect = side.value("truncation_defect", 0.0);
        t.grid_m = side.value("grid_m", std::size_t{0});
        t.seed = side.value("seed", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("coefficient sidecar: ") + e.what());
    } catch (const InvalidParameter& e) {
        throw FormatError(std::string("coefficient sidecar: ") + e.what());
    } catch (const InvalidInput& e) {
        throw FormatError(std::string("coefficient sidecar: ") + e.what());
    }
    const auto n = static_cast<std::size_t>(t.directions.dim());
    std::string line;
    if (!std::getline(csv, line)) throw FormatError("coefficient table is empty");
    std::size_t lineno = 1;
    while (std::getline(csv, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6 + n)
            throw FormatError("coefficient table line " + std::to_string(lineno) + ": expected " +
                              std::to_string(6 + n) + " fields");
        CoefficientEntry e;
        e.k = parse_number<long>(cells[0], lineno);
        e.m = parse_number<long>(cells[1], lineno);
        e.l = parse_number<long>(cells[2], lineno);
        e.u = parse_number<std::size_t>(cells[3], lineno);
        if (e.u >= t.directions.size())
            throw ConsistencyError("coefficient table line " + std::to_string(lineno) +
                                   ": direction index outside the sidecar's direction set");
        for (std::size_t a = 0; a < n; ++a) {
            const double x = parse_number<double>(cells[4 + a], lineno);
            if (std::abs(x - t.directions.directions[e.u][a]) > 1e-9)
                throw ConsistencyError("coefficient table line " + std::to_string(lineno) +
                                       ": direction coordinates disagree with the sidecar");
        }
        e.value = {parse_number<double>(cells[4 + n], lineno), parse_number<double>(cells[5 + n], lineno)};
        t.entries.push_back(e);
    }
    return t;
}

CoefficientTable read_table(const std::string& csv_path, const std::string& sidecar_path) {
    std::ifstream csv(csv_path, std::ios::binary);
    if (!csv) throw InvalidInput("cannot open " + csv_path);
    std::ifstream side(sidecar_path, std::ios::binary);
    if (!side) throw InvalidInput("cannot open " + sidecar_path);
    nlohmann::json j;
    try {
        side >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("coefficient sidecar: ") + e.what());
    }
    return read_table(csv, j);
}

// ---------------------------------------------------------------------------

DiscreteWaveletGrid plan_semidiscrete(const GridField& f, const DirectionSet& dirs,
                                      const GeneratorSpec& mother, double energy_tol,
                                      const AnalysisOptions& opt) {
    dirs.validate();
    if (dirs.dim() != f.dim()) throw InvalidInput("plan_semidiscrete: dimension mismatch");
    if (!(energy_tol > 0.0 && energy_tol < 1.0)) throw InvalidParameter("energy_tol must be in (0, 1)");
    const double a0 = 2.0;

    // Essential band of the mother: where |psihat| >= 1e-6 max on a log grid.
    double peak = 0.0;
    std::vector<std::pair<double, double>> probe;
    for (int i = 0; i <= 800; ++i) {
        const double g = std::pow(10.0, -4.0 + 8.0 * i / 800.0);
        const double v = std::max(std::abs(mother.spectrum(g)), std::abs(mother.spectrum(-g)));
        probe.emplace_back(g, v);
        peak = std::max(peak, v);
    }
    if (!(peak > 0.0)) throw InvalidParameter("plan_semidiscrete: mother spectrum vanishes");
    double band_lo = 0.0, band_hi = 0.0;
    for (const auto& [g, v] : probe)
        if (v >= 1e-6 * peak) {
            if (band_lo == 0.0) band_lo = g;
            band_hi = g;
        }

    const Grid1D grid = long_grid(f, opt.span > 0.0 ? opt.span : 256.0);
    const double nyquist = 0.5 / f.spacing();
    const double gmin = grid.dgamma();
    const int m_lo = static_cast<int>(std::floor(std::log(band_lo / nyquist) / std::log(a0)));
    const int m_hi = static_cast<int>(std::ceil(std::log(band_hi / gmin) / std::log(a0)));
    const auto scales = static_cast<std::size_t>(m_hi - m_lo + 1);

    std::vector<std::vector<double>> per_dir(dirs.size(), std::vector<double>(scales, 0.0));
    parallel_for(dirs.size(), [&](std::size_t ui) {
        const Spectrum F = weighted_radon_spectrum(f, dirs.directions[ui], grid);
        for (std::size_t s = 0; s < scales; ++s) {
            const double scale = std::pow(a0, m_lo + static_cast<int>(s));
            double e = 0.0;
            for (std::size_t k = 0; k < F.size(); ++k)
                e += std::norm(F[k]) * std::norm(mother.spectrum(scale * F.gamma(k)));
            per_dir[ui][s] = e * F.dgamma() * dirs.weights[ui];
        }
    });
    std::vector<double> energy(scales, 0.0);
    double total = 0.0;
    for (const auto& row : per_dir)
        for (std::size_t s = 0; s < scales; ++s) energy[s] += row[s];
    for (double e : energy) total += e;

    DiscreteWaveletGrid d{mother};
    d.a0 = a0;
    d.b = 1.0;
    if (!(total > 0.0)) {
        d.m_min = d.m_max = 0;
        d.l_min = d.l_max = 0;
        return d;
    }
    std::size_t lo = static_cast<std::size_t>(std::max_element(energy.begin(), energy.end()) - energy.begin());
    std::size_t hi = lo;
    double kept = energy[lo];
    while (kept < (1.0 - energy_tol) * total) {
        const double left = lo > 0 ? energy[lo - 1] : -1.0;
        const double right = hi + 1 < scales ? energy[hi + 1] : -1.0;
        if (left < 0.0 && right < 0.0) break;
        if (left >= right) kept += energy[--lo];
        else kept += energy[++hi];
    }
    d.m_min = m_lo + static_cast<int>(lo);
    d.m_max = m_lo + static_cast<int>(hi);
    const auto reach = static_cast<long>(
        std::ceil((ridge_reach(f.dim()) * std::pow(a0, -d.m_min) + opt.essential_radius) / d.b));
    d.l_min = -reach;
    d.l_max = reach;
    return d;
}

CoefficientTable analyze(const GridField& f, const FrameSystem& sys, const DirectionSet& dirs,
                         const AnalysisOptions& opt) {
    dirs.validate();
    if (dirs.dim() != f.dim()) throw InvalidInput("analyze: field and direction set dimensions differ");
    std::vector<DirectionResult> results(dirs.size());
    if (const auto* d = std::get_if<DiscreteWaveletGrid>(&sys.kind())) {
        check_mother(d->mother, d->a0, f.dim(), opt);
        const double band = mother_band(d->mother);
        parallel_for(dirs.size(), [&](std::size_t ui) {
            results[ui] = analyze_grid(f, *d, band, dirs.directions[ui], ui, opt);
        });
    } else if (const auto* c = std::get_if<DiscreteCustom>(&sys.kind())) {
        parallel_for(dirs.size(), [&](std::size_t ui) {
            results[ui] = analyze_custom(f, *c, dirs.directions[ui], ui);
        });
    } else {
        throw InvalidInput("analyze: continuous systems are handled by continuous_reconstruct");
    }

    CoefficientTable t;
    t.directions = dirs;
    t.frame = sys.manifest();
    t.grid_m = f.per_axis();
    double kept = 0.0, dropped = 0.0;
    for (std::size_t ui = 0; ui < dirs.size(); ++ui) {
        double e = 0.0;
        for (const auto& c : results[ui].entries) e += std::norm(c.value);
        kept += dirs.weights[ui] * e;
        dropped += dirs.weights[ui] * std::max(0.0, results[ui].dropped);
        t.radon_energy.push_back(results[ui].radon_energy);
        t.entries.insert(t.entries.end(), results[ui].entries.begin(), results[ui].entries.end());
    }
    t.truncation_defect = kept + dropped > 0.0 ? dropped / (kept + dropped) : 0.0;
    return t;
}

GridField synthesize(const CoefficientTable& table, const FrameSystem& dual, const DirectionSet& dirs,
                     std::size_t m, const AnalysisOptions& opt) {
    dirs.validate();
    if (!table.directions.same_as(dirs))
        throw InvalidInput("synthesize: table and call use different direction sets");
    const int n = dirs.dim();
    const double alpha = alpha_of(n);
    const Grid1D out = lift_grid(m);

    std::vector<std::vector<const CoefficientEntry*>> by_dir(dirs.size());
    for (const auto& c : table.entries) {
        if (c.u >= dirs.size()) throw InvalidInput("synthesize: direction index out of range");
        by_dir[c.u].push_back(&c);
    }

    std::function<SampledSignal(std::size_t)> profile;
    if (const auto* d = std::get_if<DiscreteWaveletGrid>(&dual.kind())) {
        const double band = mother_band(d->mother);
        profile = [d, band, n, out, &by_dir, &opt](std::size_t ui) {
            return synthesize_grid(*d, band, n, by_dir[ui], out, opt);
        };
    } else if (const auto* c = std::get_if<DiscreteCustom>(&dual.kind())) {
        const Grid1D grid = c->generators.front().grid();
        std::vector<Spectrum> G;
        for (const auto& g : c->generators) {
            if (!g.grid().same_as(grid)) throw InvalidInput("synthesize: dual generators must share one grid");
            G.push_back(forward_ft(g));
        }
        profile = [G = std::move(G), grid, alpha, out, &by_dir](std::size_t ui) {
            std::vector<Complex> acc(grid.size);
            for (const auto* e : by_dir[ui]) {
                if (e->k < 0 || static_cast<std::size_t>(e->k) >= G.size())
                    throw InvalidInput("synthesize: generator index out of range");
                const Spectrum& s = G[static_cast<std::size_t>(e->k)];
                for (std::size_t k = 0; k < grid.size; ++k) acc[k] += e->value * s[k];
            }
            for (std::size_t k = 0; k < grid.size; ++k) acc[k] *= abs_power(grid.gamma(k), alpha);
            return evaluate_on(Spectrum(grid, std::move(acc)), out);
        };
    } else {
        throw InvalidInput("synthesize: continuous systems are handled by continuous_reconstruct");
    }

    return deterministic_sum(dirs.size(), n, m, [&](std::size_t ui) {
        if (by_dir[ui].empty()) return GridField(n, m);
        GridField g = ridge_lift(profile(ui), dirs.directions[ui], m);
        g *= 0.5 * dirs.weights[ui];
        return g;
    });
}

GridField ridge_atom(const FrameSystem& sys, const CoefficientEntry& idx, const Direction& u,
                     std::size_t m) {
    const int n = u.dim();
    const double alpha = alpha_of(n);
    if (const auto* d = std::get_if<DiscreteWaveletGrid>(&sys.kind())) {
        // Evaluated exactly on a grid four times finer than the lift grid.
        Grid1D out = lift_grid(m);
        out.dx /= 4.0;
        out.size *= 4;
        AnalysisOptions opt;
        const double scale = std::pow(d->a0, static_cast<double>(idx.m));
        const double t = static_cast<double>(idx.k) * d->b * scale;
        opt.span = 4.0 * std::abs(t) + 64.0;
        const ScaleGrid sg = scale_grid(*d, static_cast<int>(idx.m), n, mother_band(d->mother), opt);
        const double amp = std::sqrt(scale);
        const Spectrum S = Spectrum::from_function(sg.grid, [&](double g) {
            return amp * d->mother.spectrum(scale * g) * abs_power(g, alpha) * std::conj(cis(g * t));
        });
        return ridge_lift(evaluate_on(S, out), u, m);
    }
    if (const auto* c = std::get_if<DiscreteCustom>(&sys.kind())) {
        if (idx.k < 0 || static_cast<std::size_t>(idx.k) >= c->generators.size())
            throw InvalidInput("ridge_atom: generator index out of range");
        return ridge_lift(weighted_generator(c->generators[static_cast<std::size_t>(idx.k)], n), u, m);
    }
    throw InvalidInput("ridge_atom: discrete systems only");
}

FrameInequality frame_inequality_check(const GridField& f, const FrameSystem& sys,
                                       const DirectionSet& dirs, double A, double B, double slack,
                                       const AnalysisOptions& opt) {
    if (!(A > 0.0) || B < A) throw InvalidParameter("frame bounds need 0 < A <= B");
    const CoefficientTable t = analyze(f, sys, dirs, opt);
    const auto e = t.direction_energy();
    FrameInequality r;
    r.norm2 = f.norm2();
    r.lower = 2.0 * A * r.norm2;
    r.upper = 2.0 * B * r.norm2;
    r.truncation_defect = t.truncation_defect;
    r.sandwich_holds = true;
    for (std::size_t ui = 0; ui < dirs.size(); ++ui) {
        r.value += dirs.weights[ui] * e[ui];
        DirectionSandwich s{e[ui], t.radon_energy[ui], false};
        s.holds = A * s.radon_energy * (1.0 - slack) <= s.coefficient_energy &&
                  s.coefficient_energy <= B * s.radon_energy * (1.0 + slack);
        r.sandwich_holds = r.sandwich_holds && s.holds;
        r.per_direction.push_back(s);
    }
    return r;
}

NormIdentity norm_identity_check(const GridField& f, const DirectionSet& dirs) {
    dirs.validate();
    if (dirs.dim() != f.dim()) throw InvalidInput("norm_identity_check: dimension mismatch");
    const Grid1D grid = long_grid(f, kDefaultSpan);
    std::vector<double> e(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t ui) {
        e[ui] = weighted_radon_spectrum(f, dirs.directions[ui], grid).norm2();
    });
    NormIdentity r;
    for (std::size_t ui = 0; ui < dirs.size(); ++ui) r.value += dirs.weights[ui] * e[ui];
    const double peak = f.max_abs();
    if (peak > 0.0 && f.boundary_max_abs() > 1e-10 * peak)
        r.warnings.push_back("field does not decay at the boundary of Q (boundary max " +
                             format_double(f.boundary_max_abs() / peak) + " of peak)");
    return r;
}

// ---------------------------------------------------------------------------

namespace {

struct ShiftedWindow {
    std::size_t lo = 0, hi = 0;  // support indices [lo, hi)
    std::vector<Complex> values;
};

ShiftedWindow shifted_window(const GeneratorSpec& g, double a, const Grid1D& grid, Complex scale) {
    const SampledSignal s = inverse_ft(
        Spectrum::from_function(grid, [&](double gamma) { return g.spectrum(gamma) * std::conj(cis(a * gamma)); }));
    double peak = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) peak = std::max(peak, std::abs(s[j]));
    ShiftedWindow w;
    w.lo = s.size();
    for (std::size_t j = 0; j < s.size(); ++j)
        if (std::abs(s[j]) > 1e-14 * peak) {
            w.lo = std::min(w.lo, j);
            w.hi = j + 1;
        }
    if (w.lo >= w.hi) w.lo = w.hi = 0;
    for (std::size_t j = w.lo; j < w.hi; ++j) w.values.push_back(scale * s[j]);
    return w;
}

ContinuousReconstruction finish(const GridField& f, const DirectionSet& dirs,
                                std::vector<SampledSignal>& r_u, const std::vector<double>& mass,
                                double defect, const ContinuousOptions& opt) {
    (void)mass;
    if (defect > opt.max_defect)
        throw CoverageError("continuous quadrature misses " + format_double(defect) +
                                " of the coefficient mass on its boundary cells",
                            defect);
    const double alpha = alpha_of(f.dim());
    ContinuousReconstruction out;
    out.coverage_defect = defect;
    out.field = deterministic_sum(dirs.size(), f.dim(), f.per_axis(), [&](std::size_t ui) {
        Spectrum S = forward_ft(r_u[ui]);
        for (std::size_t k = 0; k < S.size(); ++k) S[k] *= abs_power(S.gamma(k), alpha);
        GridField g = ridge_lift(evaluate_on(S, lift_grid(f.per_axis())), dirs.directions[ui], f.per_axis());
        g *= 0.5 * dirs.weights[ui];
        return g;
    });
    return out;
}

}  // namespace

ContinuousReconstruction continuous_reconstruct(const GridField& f, const DualGaborPair& pair,
                                                const DirectionSet& dirs, const GaborQuadrature& q,
                                                const ContinuousOptions& opt) {
    dirs.validate();
    if (dirs.dim() != f.dim()) throw InvalidInput("continuous_reconstruct: dimension mismatch");
    const auto* p1 = std::get_if<ContinuousGabor>(&pair.primary.kind());
    const auto* p2 = std::get_if<ContinuousGabor>(&pair.dual.kind());
    if (!p1 || !p2) throw InvalidInput("continuous_reconstruct: pair must consist of Gabor systems");
    if (q.na == 0 || q.nb == 0 || !(q.a_max > 0.0) || !(q.b_max > 0.0))
        throw InvalidParameter("continuous_reconstruct: empty quadrature");
    const Grid1D grid = long_grid(f, opt.span);
    if (q.a_max + 4.0 > 0.5 * grid.length())
        throw InvalidParameter("continuous_reconstruct: translation window exceeds the working grid");

    std::vector<ShiftedWindow> w1(q.na), w2(q.na);
    parallel_for(q.na, [&](std::size_t i) {
        w1[i] = shifted_window(p1->window, q.a(i), grid, p1->scale);
        w2[i] = shifted_window(p2->window, q.a(i), grid, p2->scale);
    });
    // exp(-2 pi i b x) for every modulation and sample.
    std::vector<Complex> phase(q.nb * grid.size);
    for (std::size_t j = 0; j < q.nb; ++j)
        for (std::size_t x = 0; x < grid.size; ++x) phase[j * grid.size + x] = std::conj(cis(q.b(j) * grid.x(x)));

    const double cell = q.da() * q.db();
    std::vector<SampledSignal> r_u(dirs.size());
    std::vector<std::vector<double>> mass_u(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t ui) {
        const SampledSignal p = inverse_ft(weighted_radon_spectrum(f, dirs.directions[ui], grid));
        SampledSignal r = SampledSignal::zeros(grid);
        std::vector<double> mass(q.na * q.nb);
        std::vector<Complex> V(q.nb);
        for (std::size_t i = 0; i < q.na; ++i) {
            const ShiftedWindow& a1 = w1[i];
            for (std::size_t j = 0; j < q.nb; ++j) {
                const Complex* e = phase.data() + j * grid.size;
                Complex acc{};
                for (std::size_t x = a1.lo; x < a1.hi; ++x) acc += p[x] * std::conj(a1.values[x - a1.lo]) * e[x];
                V[j] = acc * grid.dx;
                mass[i * q.nb + j] = std::norm(V[j]);
            }
            const ShiftedWindow& a2 = w2[i];
            for (std::size_t x = a2.lo; x < a2.hi; ++x) {
                Complex acc{};
                for (std::size_t j = 0; j < q.nb; ++j) acc += V[j] * std::conj(phase[j * grid.size + x]);
                r[x] += acc * a2.values[x - a2.lo] * cell;
            }
        }
        r_u[ui] = std::move(r);
        mass_u[ui] = std::move(mass);
    });

    std::vector<double> mass(q.na * q.nb, 0.0);
    for (std::size_t ui = 0; ui < dirs.size(); ++ui)
        for (std::size_t c = 0; c < mass.size(); ++c) mass[c] += dirs.weights[ui] * mass_u[ui][c];
    double total = 0.0, ring = 0.0;
    for (std::size_t i = 0; i < q.na; ++i)
        for (std::size_t j = 0; j < q.nb; ++j) {
            const double v = mass[i * q.nb + j];
            total += v;
            if (i == 0 || j == 0 || i + 1 == q.na || j + 1 == q.nb) ring += v;
        }
    return finish(f, dirs, r_u, mass, total > 0.0 ? ring / total : 0.0, opt);
}

ContinuousReconstruction continuous_reconstruct(const GridField& f, const ContinuousWavelet& w,
                                                const DirectionSet& dirs, const ContinuousOptions& opt) {
    dirs.validate();
    if (dirs.dim() != f.dim()) throw InvalidInput("continuous_reconstruct: dimension mismatch");
    const WaveletQuadrature& q = w.quadrature;
    const double c_psi = admissibility_constant(w.mother);
    const Grid1D grid = long_grid(f, opt.span);
    const std::size_t rows = 2 * q.na;

    // Per row: frequency bins where the dilated mother is not negligible.
    struct Row {
        std::vector<std::size_t> bins;
        std::vector<Complex> psi;  // |a|^{1/2} psihat(a gamma)
    };
    std::vector<Row> table(rows);
    parallel_for(rows, [&](std::size_t i) {
        const double a = q.a(i);
        const double amp = std::sqrt(std::abs(a));
        std::vector<Complex> v(grid.size);
        double peak = 0.0;
        for (std::size_t k = 0; k < grid.size; ++k) {
            v[k] = amp * w.mother.spectrum(a * grid.gamma(k));
            peak = std::max(peak, std::abs(v[k]));
        }
        for (std::size_t k = 0; k < grid.size; ++k)
            if (std::abs(v[k]) > 1e-14 * peak) {
                table[i].bins.push_back(k);
                table[i].psi.push_back(v[k]);
            }
    });
    // exp(2 pi i gamma_k b_j)
    std::vector<Complex> phase(grid.size * q.nb);
    for (std::size_t k = 0; k < grid.size; ++k)
        for (std::size_t j = 0; j < q.nb; ++j) phase[k * q.nb + j] = cis(grid.gamma(k) * q.b(j));

    const double dg = grid.dgamma();
    std::vector<SampledSignal> r_u(dirs.size());
    std::vector<std::vector<double>> mass_u(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t ui) {
        const Spectrum F = weighted_radon_spectrum(f, dirs.directions[ui], grid);
        std::vector<Complex> R(grid.size);
        std::vector<double> mass(rows * q.nb);
        std::vector<Complex> V(q.nb);
        for (std::size_t i = 0; i < rows; ++i) {
            const Row& row = table[i];
            std::fill(V.begin(), V.end(), Complex{});
            for (std::size_t r = 0; r < row.bins.size(); ++r) {
                const std::size_t k = row.bins[r];
                const Complex c = F[k] * std::conj(row.psi[r]) * dg;
                const Complex* e = phase.data() + k * q.nb;
                for (std::size_t j = 0; j < q.nb; ++j) V[j] += c * e[j];
            }
            const double wt = q.weight(i) * q.db();
            for (std::size_t j = 0; j < q.nb; ++j) mass[i * q.nb + j] = std::norm(V[j]) * wt;
            for (std::size_t r = 0; r < row.bins.size(); ++r) {
                const std::size_t k = row.bins[r];
                const Complex* e = phase.data() + k * q.nb;
                Complex acc{};
                for (std::size_t j = 0; j < q.nb; ++j) acc += V[j] * std::conj(e[j]);
                R[k] += acc * row.psi[r] * wt / c_psi;
            }
        }
        r_u[ui] = inverse_ft(Spectrum(grid, std::move(R)));
        mass_u[ui] = std::move(mass);
    });

    std::vector<double> mass(rows * q.nb, 0.0);
    for (std::size_t ui = 0; ui < dirs.size(); ++ui)
        for (std::size_t c = 0; c < mass.size(); ++c) mass[c] += dirs.weights[ui] * mass_u[ui][c];
    double total = 0.0, ring = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < q.nb; ++j) {
            const double v = mass[i * q.nb + j];
            total += v;
            const bool edge_a = i == 0 || i + 1 == rows || i + 1 == q.na || i == q.na;
            if (edge_a || j == 0 || j + 1 == q.nb) ring += v;
        }
    return finish(f, dirs, r_u, mass, total > 0.0 ? ring / total : 0.0, opt);
}

}  // namespace ridgeframe

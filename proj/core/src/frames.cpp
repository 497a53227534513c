#include "ridgeframe/frames.hpp"

#include <algorithm>
#include <cmath>

#include "ridgeframe/errors.hpp"
#include "ridgeframe/parallel.hpp"
#include "ridgeframe/ridge_radon.hpp"

namespace ridgeframe {
namespace {

// exp(-2 pi i t), argument reduced mod 1.
Complex cis_neg(double t) {
    t -= std::round(t);
    return {std::cos(2.0 * kPi * t), -std::sin(2.0 * kPi * t)};
}

void check_escape(const SampledSignal& s, const char* what) {
    const std::size_t n = s.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 64);
    double total = 0.0, rim = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double e = std::norm(s[j]);
        total += e;
        if (j < edge || j + edge >= n) rim += e;
    }
    if (rim > 1e-10 * total)
        throw DomainError(std::string(what) + ": atom reaches the ends of the grid");
}

// Mass on the outer ring of an (na x nb) cell table relative to the total.
double ring_fraction(const std::vector<double>& mass, std::size_t na, std::size_t nb) {
    double total = 0.0, ring = 0.0;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const double v = mass[i * nb + j];
            total += v;
            if (i == 0 || j == 0 || i + 1 == na || j + 1 == nb) ring += v;
        }
    return total > 0.0 ? ring / total : 0.0;
}

// Ring of a wavelet table: smallest and largest |a| on both signs, and b ends.
double wavelet_ring_fraction(const std::vector<double>& mass, const WaveletQuadrature& q) {
    const std::size_t na = 2 * q.na, nb = q.nb;
    double total = 0.0, ring = 0.0;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const double v = mass[i * nb + j];
            total += v;
            const bool edge_a = i == 0 || i + 1 == na || i + 1 == q.na || i == q.na;
            if (edge_a || j == 0 || j + 1 == nb) ring += v;
        }
    return total > 0.0 ? ring / total : 0.0;
}

}  // namespace

double WaveletQuadrature::a(std::size_t i) const {
    if (i < na) return -std::exp(std::log(a_max) - (static_cast<double>(i) + 0.5) * dlog());
    return std::exp(std::log(a_min) + (static_cast<double>(i - na) + 0.5) * dlog());
}

double WaveletQuadrature::weight(std::size_t i) const { return dlog() / std::abs(a(i)); }

// ---------------------------------------------------------------------------

FrameSystem::FrameSystem(Kind kind) : kind_(std::move(kind)) {
    if (const auto* d = std::get_if<DiscreteWaveletGrid>(&kind_)) {
        if (!(d->a0 > 1.0) || !(d->b > 0.0) || d->m_min > d->m_max || d->l_min > d->l_max)
            throw InvalidParameter("discrete wavelet grid: need a0 > 1, b > 0 and nonempty ranges");
    }
    if (const auto* c = std::get_if<DiscreteCustom>(&kind_)) {
        if (c->generators.empty()) throw InvalidParameter("discrete frame needs at least one generator");
    }
}

std::string FrameSystem::kind_name() const {
    static const char* names[] = {"continuous_gabor", "continuous_wavelet", "discrete_wavelet_grid",
                                  "discrete_custom"};
    return names[kind_.index()];
}

std::string FrameSystem::measure() const {
    switch (kind_.index()) {
        case 0: return "lebesgue da db on R^2";
        case 1: return "da db / a^2 on (R\\{0}) x R";
        default: return "counting";
    }
}

nlohmann::json FrameSystem::manifest() const {
    nlohmann::json j{{"kind", kind_name()}, {"measure", measure()}};
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ContinuousGabor>) {
                j["window"] = k.window.manifest();
                j["scale"] = {k.scale.real(), k.scale.imag()};
                j["quadrature"] = {{"a_max", k.quadrature.a_max}, {"b_max", k.quadrature.b_max},
                                   {"na", k.quadrature.na}, {"nb", k.quadrature.nb}};
            } else if constexpr (std::is_same_v<T, ContinuousWavelet>) {
                j["mother"] = k.mother.manifest();
                j["quadrature"] = {{"a_min", k.quadrature.a_min}, {"a_max", k.quadrature.a_max},
                                   {"na", k.quadrature.na}, {"b_max", k.quadrature.b_max},
                                   {"nb", k.quadrature.nb}};
            } else if constexpr (std::is_same_v<T, DiscreteWaveletGrid>) {
                j["mother"] = k.mother.manifest();
                j["a0"] = k.a0;
                j["m_range"] = {k.m_min, k.m_max};
                j["b"] = k.b;
                j["l_range"] = {k.l_min, k.l_max};
            } else {
                j["generators"] = k.generators.size();
            }
        },
        kind_);
    return j;
}

FrameSystem FrameSystem::from_manifest(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw FormatError("frame manifest: missing \"kind\"");
    const std::string kind = j["kind"];
    try {
        if (kind == "discrete_wavelet_grid") {
            DiscreteWaveletGrid d{GeneratorSpec::from_manifest(j.at("mother"))};
            d.a0 = j.at("a0").get<double>();
            d.m_min = j.at("m_range").at(0).get<int>();
            d.m_max = j.at("m_range").at(1).get<int>();
            d.b = j.at("b").get<double>();
            d.l_min = j.at("l_range").at(0).get<long>();
            d.l_max = j.at("l_range").at(1).get<long>();
            return FrameSystem(d);
        }
        if (kind == "continuous_gabor") {
            const auto& q = j.at("quadrature");
            return FrameSystem(ContinuousGabor{
                GeneratorSpec::from_manifest(j.at("window")),
                {j.at("scale").at(0).get<double>(), j.at("scale").at(1).get<double>()},
                GaborQuadrature{q.at("a_max").get<double>(), q.at("b_max").get<double>(),
                                q.at("na").get<std::size_t>(), q.at("nb").get<std::size_t>()}});
        }
        if (kind == "continuous_wavelet") {
            const auto& q = j.at("quadrature");
            return FrameSystem(ContinuousWavelet{
                GeneratorSpec::from_manifest(j.at("mother")),
                WaveletQuadrature{q.at("a_min").get<double>(), q.at("a_max").get<double>(),
                                  q.at("na").get<std::size_t>(), q.at("b_max").get<double>(),
                                  q.at("nb").get<std::size_t>()}});
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("frame manifest: ") + e.what());
    } catch (const InvalidInput& e) {
        throw FormatError(std::string("frame manifest: ") + e.what());
    }
    throw FormatError("frame manifest: kind '" + kind + "' cannot be rebuilt from a manifest");
}

nlohmann::json BoundsEstimate::to_json() const {
    return {{"lower", lower},
            {"upper", upper},
            {"trials", trials},
            {"seed", seed},
            {"test_family", test_family},
            {"coverage_defect", coverage_defect},
            {"warnings", warnings}};
}

// ---------------------------------------------------------------------------

SampledSignal gabor_atom(const SampledSignal& g, double a, double b) {
    // Translation as an exact multiplier on the periodic grid, then modulation.
    SampledSignal shifted = apply_multiplier(g, [a](double gamma) { return cis_neg(a * gamma); });
    check_escape(shifted, "gabor_atom");
    for (std::size_t j = 0; j < shifted.size(); ++j) shifted[j] *= std::conj(cis_neg(b * shifted.x(j)));
    return shifted;
}

SampledSignal gabor_atom(const GeneratorSpec& g, double a, double b, const Grid1D& grid) {
    auto sp = Spectrum::from_function(grid, [&](double gamma) {
        return g.spectrum(gamma - b) * cis_neg(a * (gamma - b));
    });
    SampledSignal s = inverse_ft(sp);
    check_escape(s, "gabor_atom");
    return s;
}

SampledSignal wavelet_atom(const SampledSignal& psi, double a, double b) {
    if (a == 0.0) throw InvalidParameter("wavelet_atom: a must be nonzero");
    const double amp = std::sqrt(std::abs(a));
    const double lo = psi.x0(), hi = psi.x(psi.size() - 1);
    return SampledSignal::from_function(psi.grid(), [&](double x) -> Complex {
        const double t = a * x - b;
        if (t < lo || t > hi) return {};
        return amp * interpolate(psi, t);
    });
}

SampledSignal wavelet_atom(const GeneratorSpec& psi, double a, double b, const Grid1D& grid) {
    if (a == 0.0) throw InvalidParameter("wavelet_atom: a must be nonzero");
    const double amp = 1.0 / std::sqrt(std::abs(a));
    auto sp = Spectrum::from_function(grid, [&](double gamma) {
        const Complex v = psi.spectrum(gamma / a);
        if (v == Complex{}) return Complex{};
        return amp * v * cis_neg(gamma * b / a);
    });
    SampledSignal s = inverse_ft(sp);
    check_escape(s, "wavelet_atom");
    return s;
}

// ---------------------------------------------------------------------------

std::vector<Complex> gabor_coefficients(const SampledSignal& f, const GeneratorSpec& g,
                                        const GaborQuadrature& q) {
    const Grid1D& grid = f.grid();
    const std::size_t n = f.size();
    std::vector<Complex> table(q.nb * n);
    for (std::size_t j = 0; j < q.nb; ++j)
        for (std::size_t x = 0; x < n; ++x) table[j * n + x] = cis_neg(q.b(j) * grid.x(x));
    std::vector<Complex> out(q.na * q.nb);
    parallel_for(q.na, [&](std::size_t i) {
        const double a = q.a(i);
        const SampledSignal ta = inverse_ft(
            Spectrum::from_function(grid, [&](double gamma) { return g.spectrum(gamma) * cis_neg(a * gamma); }));
        std::vector<Complex> p(n);
        for (std::size_t x = 0; x < n; ++x) p[x] = f[x] * std::conj(ta[x]) * grid.dx;
        for (std::size_t j = 0; j < q.nb; ++j) {
            const Complex* e = table.data() + j * n;
            Complex acc{};
            for (std::size_t x = 0; x < n; ++x) acc += p[x] * e[x];
            out[i * q.nb + j] = acc;
        }
    });
    return out;
}

std::vector<Complex> wavelet_coefficients(const SampledSignal& f, const GeneratorSpec& psi,
                                          const WaveletQuadrature& q) {
    const Spectrum F = forward_ft(f);
    const std::size_t n = F.size();
    const double dg = F.dgamma();
    const std::size_t rows = 2 * q.na;
    std::vector<Complex> out(rows * q.nb);
    parallel_for(rows, [&](std::size_t i) {
        const double a = q.a(i);
        const double amp = std::sqrt(std::abs(a));
        std::vector<std::size_t> bins;
        std::vector<Complex> weights;
        for (std::size_t k = 0; k < n; ++k) {
            if (F[k] == Complex{}) continue;
            const Complex p = psi.spectrum(a * F.gamma(k));
            if (p == Complex{}) continue;
            bins.push_back(k);
            weights.push_back(F[k] * std::conj(amp * p) * dg);
        }
        for (std::size_t j = 0; j < q.nb; ++j) {
            const double b = q.b(j);
            Complex acc{};
            for (std::size_t r = 0; r < bins.size(); ++r)
                acc += weights[r] * std::conj(cis_neg(F.gamma(bins[r]) * b));
            out[i * q.nb + j] = acc;
        }
    });
    return out;
}

ResolutionCheck gabor_resolution_check(const SampledSignal& f1, const SampledSignal& f2,
                                       const GeneratorSpec& g1, const GeneratorSpec& g2,
                                       const GaborQuadrature& q) {
    if (!f1.grid().same_as(f2.grid())) throw InvalidInput("gabor_resolution_check: grids differ");
    const auto v1 = gabor_coefficients(f1, g1, q);
    const auto v2 = gabor_coefficients(f2, g2, q);
    const double cell = q.da() * q.db();
    ResolutionCheck r;
    std::vector<double> mass(v1.size());
    for (std::size_t c = 0; c < v1.size(); ++c) {
        r.lhs += v1[c] * std::conj(v2[c]) * cell;
        mass[c] = 0.5 * (std::norm(v1[c]) + std::norm(v2[c]));
    }
    r.rhs = inner(f1, f2) * spectral_inner(g2, g1);
    r.coverage_defect = ring_fraction(mass, q.na, q.nb);
    if (r.coverage_defect > 1e-6)
        throw CoverageError("gabor quadrature window too small: boundary mass fraction " +
                                format_double(r.coverage_defect),
                            r.coverage_defect);
    return r;
}

ResolutionCheck wavelet_resolution_check(const SampledSignal& f, const SampledSignal& g,
                                         const GeneratorSpec& psi, const WaveletQuadrature& q) {
    if (!f.grid().same_as(g.grid())) throw InvalidInput("wavelet_resolution_check: grids differ");
    const double c_psi = admissibility_constant(psi);
    const auto wf = wavelet_coefficients(f, psi, q);
    const auto wg = wavelet_coefficients(g, psi, q);
    ResolutionCheck r;
    std::vector<double> mass(wf.size());
    for (std::size_t i = 0; i < 2 * q.na; ++i) {
        const double w = q.weight(i) * q.db();
        for (std::size_t j = 0; j < q.nb; ++j) {
            const std::size_t c = i * q.nb + j;
            r.lhs += wf[c] * std::conj(wg[c]) * w;
            mass[c] = 0.5 * (std::norm(wf[c]) + std::norm(wg[c])) * w;
        }
    }
    r.rhs = c_psi * inner(f, g);
    r.coverage_defect = wavelet_ring_fraction(mass, q);
    return r;
}

Complex spectral_inner(const GeneratorSpec& g1, const GeneratorSpec& g2) {
    // Fine trapezoidal sum; both spectra are smooth or piecewise linear.
    constexpr double span = 64.0;
    constexpr std::size_t n = 1 << 16;
    const double dg = span / static_cast<double>(n);
    Complex acc{};
    for (std::size_t k = 0; k <= n; ++k) {
        const double gamma = -0.5 * span + static_cast<double>(k) * dg;
        const Complex a = g1.spectrum(gamma);
        if (a == Complex{}) continue;
        const double w = (k == 0 || k == n) ? 0.5 : 1.0;
        acc += w * a * std::conj(g2.spectrum(gamma));
    }
    return acc * dg;
}

DualGaborPair make_dual_gabor_pair(const GeneratorSpec& g1, const GeneratorSpec& g2,
                                   const GaborQuadrature& q) {
    const Complex overlap = spectral_inner(g1, g2);
    if (std::abs(overlap) <= 1e-10)
        throw PerpendicularWindows("make_dual_gabor_pair: windows are perpendicular (|<g1,g2>| = " +
                                   format_double(std::abs(overlap)) + ")");
    // <f, h> = int int <f, E_b T_a g1> <E_b T_a (c g2), h> requires c <g2, g1> = 1.
    const Complex scale = 1.0 / std::conj(overlap);
    return {FrameSystem(ContinuousGabor{g1, Complex(1.0), q}),
            FrameSystem(ContinuousGabor{g2, scale, q}), overlap};
}

// ---------------------------------------------------------------------------

FrameEnergy frame_energy(const FrameSystem& sys, const SampledSignal& f) {
    FrameEnergy out;
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ContinuousGabor>) {
                const auto v = gabor_coefficients(f, k.window, k.quadrature);
                const double cell = k.quadrature.da() * k.quadrature.db() * std::norm(k.scale);
                std::vector<double> mass(v.size());
                for (std::size_t c = 0; c < v.size(); ++c) mass[c] = std::norm(v[c]) * cell;
                for (double m : mass) out.energy += m;
                out.coverage_defect = ring_fraction(mass, k.quadrature.na, k.quadrature.nb);
            } else if constexpr (std::is_same_v<T, ContinuousWavelet>) {
                const auto& q = k.quadrature;
                const auto w = wavelet_coefficients(f, k.mother, q);
                std::vector<double> mass(w.size());
                for (std::size_t i = 0; i < 2 * q.na; ++i)
                    for (std::size_t j = 0; j < q.nb; ++j)
                        mass[i * q.nb + j] = std::norm(w[i * q.nb + j]) * q.weight(i) * q.db();
                for (double m : mass) out.energy += m;
                out.coverage_defect = wavelet_ring_fraction(mass, q);
            } else if constexpr (std::is_same_v<T, DiscreteWaveletGrid>) {
                const Spectrum F = forward_ft(f);
                const double dg = F.dgamma();
                const double lo = f.x0(), hi = f.x0() + f.grid().length();
                const auto scales = static_cast<std::size_t>(k.m_max - k.m_min + 1);
                std::vector<double> per_scale(scales, 0.0);
                parallel_for(scales, [&](std::size_t s) {
                    const int m = k.m_min + static_cast<int>(s);
                    const double scale = std::pow(k.a0, m);
                    const double amp = std::sqrt(scale);
                    std::vector<double> gam;
                    std::vector<Complex> wts;
                    for (std::size_t b = 0; b < F.size(); ++b) {
                        if (F[b] == Complex{}) continue;
                        const Complex p = k.mother.spectrum(scale * F.gamma(b));
                        if (p == Complex{}) continue;
                        gam.push_back(F.gamma(b));
                        wts.push_back(F[b] * std::conj(amp * p) * dg);
                    }
                    double e = 0.0;
                    for (long l = k.l_min; l <= k.l_max; ++l) {
                        const double t = static_cast<double>(l) * k.b * scale;
                        // Coefficients are periodic in t with the grid length; only one
                        // period is counted.
                        if (t < lo || t >= hi) continue;
                        Complex acc{};
                        for (std::size_t r = 0; r < gam.size(); ++r) acc += wts[r] * std::conj(cis_neg(gam[r] * t));
                        e += std::norm(acc);
                    }
                    per_scale[s] = e;
                });
                for (double e : per_scale) out.energy += e;
            } else {
                for (const auto& g : k.generators) out.energy += std::norm(inner(f, g));
            }
        },
        sys.kind());
    return out;
}

BoundsEstimate estimate_bounds(std::size_t trials, const std::function<TrialEnergy(std::size_t)>& trial,
                               std::uint64_t seed, const std::string& family) {
    std::vector<TrialEnergy> results(trials);
    parallel_for(trials, [&](std::size_t i) { results[i] = trial(i); });
    BoundsEstimate est;
    est.seed = seed;
    est.test_family = family;
    bool first = true;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto& r = results[i];
        if (!(r.norm2 > 0.0)) {
            est.warnings.push_back("test " + std::to_string(i) + " has zero norm; skipped");
            continue;
        }
        const double ratio = r.energy / r.norm2;
        est.lower = first ? ratio : std::min(est.lower, ratio);
        est.upper = first ? ratio : std::max(est.upper, ratio);
        est.coverage_defect = std::max(est.coverage_defect, r.coverage_defect);
        first = false;
        ++est.trials;
    }
    if (est.trials == 0) throw InvalidInput("estimate_frame_bounds: every test function has zero norm");
    if (est.trials < 30)
        throw InvalidInput("estimate_frame_bounds: need at least 30 usable test functions, got " +
                           std::to_string(est.trials));
    return est;
}

BoundsEstimate estimate_frame_bounds(const FrameSystem& sys, std::span<const SampledSignal> tests,
                                     std::uint64_t seed, const std::string& family) {
    return estimate_bounds(
        tests.size(),
        [&](std::size_t i) {
            const auto e = frame_energy(sys, tests[i]);
            return TrialEnergy{e.energy, tests[i].norm2(), e.coverage_defect};
        },
        seed, family);
}

}  // namespace ridgeframe

#include <cstdlib>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json_config.hpp"
#include "ridgeframe/errors.hpp"
#include "ridgeframe/parallel.hpp"

using namespace ridgeframe;
using namespace ridgeframe::cli;

int main(int argc, char** argv) {
    CLI::App app{"ridgeframe: ridge-function frames, Radon slices and sphere nets"};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::ignore);
    app.require_subcommand(1);

    std::uint64_t seed = 20240611;
    std::size_t threads = 0;
    app.add_option("--seed", seed, "64-bit seed recorded in every output")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (0: RIDGEFRAME_THREADS or hardware)");

    const std::vector<std::string> kinds{"meyer", "cbspline", "cbspline_wavelet", "gaussian", "band"};

    GeneratorArgs gen;
    auto* g = app.add_subcommand("generator", "export a generator in time and frequency");
    g->add_option("--kind", gen.kind)->check(CLI::IsMember(kinds))->capture_default_str();
    g->add_option("--z", gen.z, "complex B-spline order, e.g. 3.5+1i");
    g->add_option("--nu", gen.nu, "Meyer sigmoid")->capture_default_str();
    g->add_flag("--orthonormal", gen.orthonormal, "orthonormalized B-spline scaling function");
    g->add_option("--scale", gen.scale, "Gaussian scale")->capture_default_str();
    g->add_option("--shift", gen.shift, "Gaussian shift")->capture_default_str();
    g->add_option("--lo", gen.lo, "band indicator lower edge")->capture_default_str();
    g->add_option("--hi", gen.hi, "band indicator upper edge")->capture_default_str();
    g->add_option("--grid", gen.grid, "samples")->capture_default_str();
    g->add_option("--span", gen.span, "interval length")->capture_default_str();
    g->add_option("--alpha", gen.alpha, "fractional derivative order applied")->capture_default_str();
    g->add_option("--ridge-n", gen.ridge_n, "also write the weighted ridge function in R^n (2 or 3)");
    g->add_option("--direction", gen.direction, "ridge direction");
    g->add_option("--m", gen.m, "ridge grid samples per axis")->capture_default_str();
    g->add_option("--out", gen.out, "output prefix")->capture_default_str();

    DecomposeArgs dec;
    auto* d = app.add_subcommand("decompose", "semi-discrete ridge analysis of a field");
    d->add_option("--input", dec.input, "RFGRID or CSV field")->required();
    d->add_option("--kind", dec.kind)->check(CLI::IsMember({"meyer", "band"}))->capture_default_str();
    d->add_option("--nu", dec.nu)->capture_default_str();
    d->add_option("--directions", dec.directions)->check(CLI::PositiveNumber)->capture_default_str();
    d->add_option("--tol", dec.tol, "scale-selection energy tolerance")->capture_default_str();
    d->add_option("--essential-radius", dec.essential_radius)->capture_default_str();
    d->add_option("--table", dec.table)->capture_default_str();
    d->add_option("--sidecar", dec.sidecar)->capture_default_str();

    ReconstructArgs rec;
    auto* r = app.add_subcommand("reconstruct", "synthesize a field from a coefficient table");
    r->add_option("--table", rec.table)->capture_default_str();
    r->add_option("--sidecar", rec.sidecar)->capture_default_str();
    r->add_option("--m", rec.m, "grid samples per axis (default: from sidecar)");
    r->add_option("--essential-radius", rec.essential_radius, "used when the sidecar has none")
        ->capture_default_str();
    r->add_option("--out", rec.out)->capture_default_str();
    r->add_option("--reference", rec.reference, "field to compare against");
    r->add_option("--report", rec.report)->capture_default_str();

    FrameBoundsArgs fb;
    auto* f = app.add_subcommand("framebounds", "Monte-Carlo frame bound estimates");
    f->add_option("--system", fb.system)
        ->check(CLI::IsMember({"gabor", "wavelet", "discrete-ridge"}))
        ->capture_default_str();
    f->add_option("--kind", fb.kind)->check(CLI::IsMember(kinds))->capture_default_str();
    f->add_option("--nu", fb.nu)->capture_default_str();
    f->add_option("--scale", fb.scale)->capture_default_str();
    f->add_option("--lo", fb.lo, "band indicator lower edge")->capture_default_str();
    f->add_option("--hi", fb.hi, "band indicator upper edge")->capture_default_str();
    f->add_option("--n", fb.n)->capture_default_str();
    f->add_option("--a0", fb.a0)->capture_default_str();
    f->add_option("--k0", fb.k0)->capture_default_str();
    f->add_option("--k-max", fb.k_max)->capture_default_str();
    f->add_option("--b", fb.b)->capture_default_str();
    f->add_option("--sweep", fb.sweep, "list of b values: emit a degradation table");
    f->add_option("--m", fb.m, "field grid samples per axis")->capture_default_str();
    f->add_option("--tests", fb.tests, "number of test functions")->capture_default_str();
    f->add_option("--grid", fb.grid, "1-D test grid samples")->capture_default_str();
    f->add_option("--span", fb.span, "1-D test grid length")->capture_default_str();
    f->add_flag("--override-setup", fb.override_setup, "build even if the setup conditions fail");
    f->add_option("--out", fb.out, "JSON output path");

    SphereNetArgs sn;
    auto* s = app.add_subcommand("spherenet", "build and verify multiscale epsilon-nets");
    s->add_option("--n", sn.n)->check(CLI::IsMember({2, 3}))->capture_default_str();
    s->add_option("--a0", sn.a0)->capture_default_str();
    s->add_option("--k0", sn.k0)->capture_default_str();
    s->add_option("--k", sn.k, "finest level")->capture_default_str();
    s->add_option("--size", sn.size, "circle net size override");
    s->add_option("--max-ratio", sn.max_ratio)->capture_default_str();
    s->add_option("--out", sn.out)->capture_default_str();
    s->add_option("--report", sn.report)->capture_default_str();

    SelftestArgs st;
    auto* t = app.add_subcommand("selftest", "run the acceptance suite");
    t->add_flag("--quick", st.quick, "reduced fixtures");
    t->add_option("--only", st.only, "criteria to run (1-12)")->check(CLI::Range(1, 12));
    t->add_option("--junit", st.junit, "JUnit XML report path")->capture_default_str();
    t->add_option("--meyer-nu", st.meyer_nu, "Meyer sigmoid (\"skewed\" is the mutation fixture)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (threads != 0) set_thread_count(threads);
        if (g->parsed()) return cmd_generator(gen, seed);
        if (d->parsed()) return cmd_decompose(dec, seed);
        if (r->parsed()) return cmd_reconstruct(rec, seed);
        if (f->parsed()) return cmd_framebounds(fb, seed);
        if (s->parsed()) return cmd_spherenet(sn, seed);
        if (t->parsed()) return cmd_selftest(st, seed);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return kFormat;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << '\n';
        return kConsistency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ridgeframe/errors.hpp"
#include "ridgeframe/spectral.hpp"

namespace ridgeframe {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_rows(std::ostream& os, const char* axis, std::size_t n,
                const std::function<double(std::size_t)>& coord,
                std::span<const Complex> values, bool with_modulus) {
    os << axis << ",re,im" << (with_modulus ? ",abs" : "") << '\n';
    for (std::size_t j = 0; j < n; ++j) {
        os << format_double(coord(j)) << ',' << format_double(values[j].real()) << ','
           << format_double(values[j].imag());
        if (with_modulus) os << ',' << format_double(std::abs(values[j]));
        os << '\n';
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidInput("cannot open " + path + " for writing");
    return os;
}

}  // namespace

void write_signal_csv(std::ostream& os, const SampledSignal& s, bool with_modulus) {
    write_rows(os, "x", s.size(), [&](std::size_t j) { return s.x(j); }, s.samples(),
               with_modulus);
}

void write_spectrum_csv(std::ostream& os, const Spectrum& sp, bool with_modulus) {
    write_rows(os, "gamma", sp.size(), [&](std::size_t k) { return sp.gamma(k); },
               sp.values(), with_modulus);
}

void write_signal_csv(const std::string& path, const SampledSignal& s, bool with_modulus) {
    auto os = open_out(path);
    write_signal_csv(os, s, with_modulus);
}

void write_spectrum_csv(const std::string& path, const Spectrum& sp, bool with_modulus) {
    auto os = open_out(path);
    write_spectrum_csv(os, sp, with_modulus);
}

SampledSignal read_signal_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw FormatError("signal CSV: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("x,re,im", 0) != 0) throw FormatError("signal CSV: bad header '" + line + "'");
    std::vector<double> xs;
    std::vector<Complex> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double x, re, im;
        char c1, c2;
        if (!(row >> x >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
            throw FormatError("signal CSV: malformed row '" + line + "'");
        xs.push_back(x);
        vals.emplace_back(re, im);
    }
    if (xs.size() < 2) throw FormatError("signal CSV: need at least two samples");
    const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t j = 1; j < xs.size(); ++j)
        if (std::abs(xs[j] - xs[j - 1] - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
            throw FormatError("signal CSV: samples are not uniformly spaced");
    return SampledSignal(xs.front(), dx, std::move(vals));
}

SampledSignal read_signal_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open " + path);
    return read_signal_csv(is);
}

}  // namespace ridgeframe

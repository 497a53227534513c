#include "ridgeframe/grid_field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ridgeframe/errors.hpp"

namespace ridgeframe {

Direction::Direction(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2 || coords_.size() > 3)
        throw InvalidParameter("direction must have 2 or 3 coordinates");
    double s = 0.0;
    for (double c : coords_) s += c * c;
    const double norm = std::sqrt(s);
    if (!(std::abs(norm - 1.0) <= 1e-6))
        throw InvalidParameter("direction is not a unit vector (norm " + format_double(norm) + ")");
    for (double& c : coords_) c /= norm;
}

Direction Direction::from_angle(double theta) {
    return Direction({std::cos(theta), std::sin(theta)});
}

double Direction::dot(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * x[i];
    return s;
}

std::vector<std::vector<double>> Direction::complement() const {
    const auto& u = coords_;
    if (u.size() == 2) return {{-u[1], u[0]}};
    // Cross with the axis least aligned to u.
    std::size_t axis = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(u[i]) < std::abs(u[axis])) axis = i;
    std::array<double, 3> e{0, 0, 0};
    e[axis] = 1.0;
    std::vector<double> v1{u[1] * e[2] - u[2] * e[1], u[2] * e[0] - u[0] * e[2],
                           u[0] * e[1] - u[1] * e[0]};
    const double n1 = std::hypot(v1[0], v1[1], v1[2]);
    for (double& c : v1) c /= n1;
    std::vector<double> v2{u[1] * v1[2] - u[2] * v1[1], u[2] * v1[0] - u[0] * v1[2],
                           u[0] * v1[1] - u[1] * v1[0]};
    return {v1, v2};
}

// ---------------------------------------------------------------------------

GridField::GridField(int n, std::size_t m) : n_(n), m_(m) {
    if (n != 2 && n != 3) throw InvalidParameter("grid field dimension must be 2 or 3");
    if (m < 16) throw InvalidParameter("grid field needs at least 16 samples per axis");
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    values_.assign(total, Complex{});
}

GridField GridField::from_function(int n, std::size_t m,
                                   const std::function<Complex(std::span<const double>)>& f) {
    GridField g(n, m);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        std::size_t rem = flat;
        for (int a = n - 1; a >= 0; --a) {
            x[static_cast<std::size_t>(a)] = g.coord(rem % m);
            rem /= m;
        }
        g.values_[flat] = f(x);
    }
    return g;
}

double GridField::cell_volume() const { return std::pow(spacing(), n_); }

std::vector<double> GridField::point(std::size_t flat) const {
    std::vector<double> x(static_cast<std::size_t>(n_));
    for (int a = n_ - 1; a >= 0; --a) {
        x[static_cast<std::size_t>(a)] = coord(flat % m_);
        flat /= m_;
    }
    return x;
}

Complex GridField::interpolate(std::span<const double> x) const {
    const double h = spacing();
    std::array<long, 3> i0{};
    std::array<double, 3> w{};
    for (int a = 0; a < n_; ++a) {
        const double t = (x[static_cast<std::size_t>(a)] + 1.0) / h;
        const double fl = std::floor(t);
        if (fl < -1.0 || fl > static_cast<double>(m_)) return {};
        i0[static_cast<std::size_t>(a)] = static_cast<long>(fl);
        w[static_cast<std::size_t>(a)] = t - fl;
    }
    const long m = static_cast<long>(m_);
    Complex acc{};
    const int corners = 1 << n_;
    for (int c = 0; c < corners; ++c) {
        double weight = 1.0;
        std::size_t flat = 0;
        bool inside = true;
        for (int a = 0; a < n_; ++a) {
            const int bit = (c >> (n_ - 1 - a)) & 1;
            const long idx = i0[static_cast<std::size_t>(a)] + bit;
            if (idx < 0 || idx >= m) {
                inside = false;
                break;
            }
            const double wa = w[static_cast<std::size_t>(a)];
            weight *= bit ? wa : 1.0 - wa;
            flat = flat * m_ + static_cast<std::size_t>(idx);
        }
        if (inside && weight != 0.0) acc += weight * values_[flat];
    }
    return acc;
}

double GridField::norm2() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s * cell_volume();
}

double GridField::norm() const { return std::sqrt(norm2()); }

double GridField::max_abs() const {
    double mx = 0.0;
    for (const auto& v : values_) mx = std::max(mx, std::abs(v));
    return mx;
}

double GridField::boundary_max_abs() const {
    double mx = 0.0;
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        std::size_t rem = flat;
        bool edge = false;
        for (int a = 0; a < n_; ++a) {
            const std::size_t i = rem % m_;
            rem /= m_;
            if (i == 0 || i + 1 == m_) edge = true;
        }
        if (edge) mx = std::max(mx, std::abs(values_[flat]));
    }
    return mx;
}

GridField& GridField::operator*=(Complex c) {
    for (auto& v : values_) v *= c;
    return *this;
}

GridField& GridField::operator+=(const GridField& o) {
    if (!same_shape(o)) throw InvalidInput("grid fields have different shapes");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

GridField operator*(Complex c, GridField f) { return f *= c; }
GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) {
    a *= -1.0;
    a += b;
    a *= -1.0;
    return a;
}

Complex inner(const GridField& a, const GridField& b) {
    if (!a.same_shape(b)) throw InvalidInput("inner: grid fields have different shapes");
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s * a.cell_volume();
}

double relative_l2(const GridField& a, const GridField& b) {
    if (!a.same_shape(b)) throw InvalidInput("relative_l2: grid fields have different shapes");
    return relative_l2(a.values(), b.values());
}

GridField rotate(const GridField& f, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return GridField::from_function(f.dim(), f.per_axis(), [&](std::span<const double> x) {
        std::vector<double> y(x.begin(), x.end());
        y[0] = c * x[0] + s * x[1];
        y[1] = -s * x[0] + c * x[1];
        return f.interpolate(y);
    });
}

// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'R', 'F', 'G', 'R', 'I', 'D', '\0', '\0'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ostream& os, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& is, const char* what) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T)))
        throw FormatError(std::string("RFGRID: truncated while reading ") + what);
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    T v;
    std::memcpy(&v, bytes.data(), sizeof(T));
    return v;
}

}  // namespace

void write_field(std::ostream& os, const GridField& f) {
    os.write(kMagic, sizeof(kMagic));
    put_le<std::uint32_t>(os, kVersion);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.dim()));
    for (int a = 0; a < f.dim(); ++a) put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.per_axis()));
    put_le<double>(os, f.spacing());
    for (const auto& v : f.values()) {
        put_le<double>(os, v.real());
        put_le<double>(os, v.imag());
    }
}

void write_field(const std::string& path, const GridField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidInput("cannot open '" + path + "' for writing");
    write_field(os, f);
}

GridField read_field(std::istream& is) {
    char magic[8];
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, 7) != 0)
        throw FormatError("RFGRID: bad magic");
    const auto version = get_le<std::uint32_t>(is, "version");
    if (version != kVersion) throw FormatError("RFGRID: unsupported version " + std::to_string(version));
    const auto n = get_le<std::uint32_t>(is, "dimension");
    if (n != 2 && n != 3) throw FormatError("RFGRID: dimension must be 2 or 3");
    std::vector<std::uint32_t> counts(n);
    for (auto& c : counts) c = get_le<std::uint32_t>(is, "axis count");
    for (auto c : counts)
        if (c != counts[0]) throw FormatError("RFGRID: axes must share one sample count");
    if (counts[0] < 16 || counts[0] > (1u << 16)) throw FormatError("RFGRID: bad sample count");
    const double spacing = get_le<double>(is, "spacing");
    const double expected = 2.0 / counts[0];
    if (!(std::abs(spacing - expected) <= 1e-12 * expected))
        throw FormatError("RFGRID: spacing does not match the cube [-1,1]^n");
    GridField f(static_cast<int>(n), counts[0]);
    for (auto& v : f.values()) {
        const double re = get_le<double>(is, "samples");
        const double im = get_le<double>(is, "samples");
        v = {re, im};
    }
    return f;
}

GridField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidInput("cannot open '" + path + "'");
    return read_field(is);
}

void write_field_csv(std::ostream& os, const GridField& f) {
    if (f.dim() != 2) throw InvalidInput("CSV export is defined for n = 2 fields only");
    os << "x1,x2,re,im\n";
    for (std::size_t i = 0; i < f.per_axis(); ++i)
        for (std::size_t j = 0; j < f.per_axis(); ++j) {
            const auto& v = f[i * f.per_axis() + j];
            os << format_double(f.coord(i)) << ',' << format_double(f.coord(j)) << ','
               << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
}

void write_field_csv(const std::string& path, const GridField& f) {
    std::ofstream os(path);
    if (!os) throw InvalidInput("cannot open '" + path + "' for writing");
    write_field_csv(os, f);
}

GridField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw FormatError("field CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x1,x2,re,im") throw FormatError("field CSV: expected header x1,x2,re,im");
    std::vector<std::array<double, 4>> rows;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, 4> r{};
        std::istringstream ls(line);
        for (int c = 0; c < 4; ++c) {
            std::string cell;
            if (!std::getline(ls, cell, ',')) throw FormatError("field CSV: short row");
            try {
                std::size_t used = 0;
                r[static_cast<std::size_t>(c)] = std::stod(cell, &used);
                if (used != cell.size()) throw FormatError("field CSV: bad number '" + cell + "'");
            } catch (const std::logic_error&) {
                throw FormatError("field CSV: bad number '" + cell + "'");
            }
        }
        rows.push_back(r);
    }
    const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(rows.size()))));
    if (m * m != rows.size() || m < 16) throw FormatError("field CSV: row count is not m^2 with m >= 16");
    GridField f(2, m);
    const double tol = 1e-9 * f.spacing();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        if (std::abs(r[0] - f.coord(k / m)) > tol || std::abs(r[1] - f.coord(k % m)) > tol)
            throw FormatError("field CSV: coordinates do not match the cube grid");
        f[k] = {r[2], r[3]};
    }
    return f;
}

GridField read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidInput("cannot open '" + path + "'");
    return read_field_csv(is);
}

void write_field_ppm(const std::string& path, const GridField& f) {
    const std::size_t m = f.per_axis();
    const std::size_t offset = f.dim() == 3 ? (m / 2) * m * m : 0;
    double mx = 0.0;
    for (std::size_t k = 0; k < m * m; ++k) mx = std::max(mx, std::abs(f[offset + k]));
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidInput("cannot open '" + path + "' for writing");
    os << "P5\n" << m << ' ' << m << "\n255\n";
    // First row of the image is the largest x2 so the picture has the usual orientation.
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t j = m - 1 - r;
        for (std::size_t i = 0; i < m; ++i) {
            const double a = std::abs(f[offset + i * m + j]);
            const auto px = static_cast<unsigned char>(mx > 0.0 ? std::lround(255.0 * a / mx) : 0);
            os.put(static_cast<char>(px));
        }
    }
}

}  // namespace ridgeframe

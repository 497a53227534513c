#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ridgeframe::cli {

enum ExitCode : int { kOk = 0, kAcceptance = 1, kUsage = 2, kFormat = 3, kConsistency = 4, kDegenerate = 5 };

/// Usage problems found after parsing (missing dependent options and the like).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeneratorArgs {
    std::string kind = "meyer";
    std::string z;
    std::string nu = "poly7";
    bool orthonormal = false;
    double scale = 1.0;
    double shift = 0.0;
    double lo = 1.0;
    double hi = 2.0;
    std::size_t grid = 8192;
    double span = 64.0;
    double alpha = 0.0;
    int ridge_n = 0;
    std::vector<double> direction;
    std::size_t m = 128;
    std::string out = "generator";
};

struct DecomposeArgs {
    std::string input;
    std::string kind = "meyer";
    std::string nu = "poly7";
    std::size_t directions = 64;
    double tol = 1e-4;
    double essential_radius = 8.0;
    std::string table = "coefficients.csv";
    std::string sidecar = "coefficients.json";
};

struct ReconstructArgs {
    std::string table = "coefficients.csv";
    std::string sidecar = "coefficients.json";
    std::size_t m = 0;
    double essential_radius = 8.0;
    std::string out = "reconstruction.rfgrid";
    std::string reference;
    std::string report = "reconstruction.json";
};

struct FrameBoundsArgs {
    std::string system = "discrete-ridge";
    std::string kind = "meyer";
    std::string nu = "poly7";
    double scale = 1.0;
    double lo = 1.0;
    double hi = 2.0;
    int n = 2;
    double a0 = 2.0;
    int k0 = 0;
    int k_max = 3;
    double b = 0.5;
    std::vector<double> sweep;
    std::size_t m = 128;
    std::size_t tests = 30;
    std::size_t grid = 1024;
    double span = 32.0;
    bool override_setup = false;
    std::string out;
};

struct SphereNetArgs {
    int n = 2;
    double a0 = 2.0;
    int k0 = 0;
    int k = 3;
    std::optional<std::size_t> size;
    double max_ratio = 16.0;
    std::string out = "nets.csv";
    std::string report = "nets.json";
};

struct SelftestArgs {
    bool quick = false;
    std::vector<int> only;
    std::string junit = "selftest.xml";
    std::string meyer_nu = "poly7";
};

int cmd_generator(const GeneratorArgs& a, std::uint64_t seed);
int cmd_decompose(const DecomposeArgs& a, std::uint64_t seed);
int cmd_reconstruct(const ReconstructArgs& a, std::uint64_t seed);
int cmd_framebounds(const FrameBoundsArgs& a, std::uint64_t seed);
int cmd_spherenet(const SphereNetArgs& a, std::uint64_t seed);
int cmd_selftest(const SelftestArgs& a, std::uint64_t seed);

}  // namespace ridgeframe::cli

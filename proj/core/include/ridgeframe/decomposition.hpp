#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ridgeframe/frames.hpp"
#include "ridgeframe/grid_field.hpp"

namespace ridgeframe {

/// Quadrature nodes on S^{n-1} with positive weights summing to the sphere's
/// measure (2 pi for n = 2, 4 pi for n = 3).
struct DirectionSet {
    std::vector<Direction> directions;
    std::vector<double> weights;
    std::string rule;  // "uniform" (S^1) or "fibonacci" (S^2)

    /// Uniform angles 2 pi j / N on S^1, or the N-point Fibonacci set on S^2;
    /// equal weights in both cases.
    static DirectionSet uniform(int n, std::size_t count);

    int dim() const;
    std::size_t size() const { return directions.size(); }
    /// Throws InvalidInput when empty, dimensions disagree, or the weights
    /// are not positive with the correct total (1e-12 relative).
    void validate() const;
    bool same_as(const DirectionSet& o, double tol = 1e-12) const;
};

double sphere_measure(int n);

/// One coefficient <f, G_{k,u}>. Index meaning depends on the frame:
/// discrete wavelet grids use k = translation, m = scale; custom families use
/// k = generator index; the discrete ridge system uses k = level,
/// l = translation.
struct CoefficientEntry {
    long k = 0;
    long m = 0;
    long l = 0;
    std::size_t u = 0;
    Complex value;
};

struct CoefficientTable {
    std::vector<CoefficientEntry> entries;
    DirectionSet directions;
    nlohmann::json frame;             // manifest of the analysis system
    double truncation_defect = 0.0;
    std::size_t grid_m = 0;           // samples per axis of the analyzed field
    std::uint64_t seed = 0;
    /// ||D^{(n-1)/2} R_u f||^2 per direction, filled by analyze.
    std::vector<double> radon_energy;

    /// sum_k |c_{k,u}|^2 per direction.
    std::vector<double> direction_energy() const;
    nlohmann::json sidecar() const;
};

/// CSV `k,m,l,u_index,u1,...,un,re,im`.
void write_table_csv(std::ostream& os, const CoefficientTable& t);
void write_table(const std::string& csv_path, const std::string& sidecar_path,
                 const CoefficientTable& t);
/// Reads a table and its sidecar. Malformed rows raise FormatError; direction
/// indices or coordinates that disagree with the sidecar raise
/// ConsistencyError.
CoefficientTable read_table(std::istream& csv, const nlohmann::json& sidecar);
CoefficientTable read_table(const std::string& csv_path, const std::string& sidecar_path);

struct AnalysisOptions {
    /// Period of the 1-D working grid; 0 picks one from the coarsest scale.
    double span = 0.0;
    /// Atoms further than this (in units of their own scale) from the ridge
    /// range [-sqrt n, sqrt n] are pruned.
    double essential_radius = 8.0;
    /// Admits complex B-spline generators (Re z > n/2 is still enforced).
    bool allow_bspline = false;
};

/// Scale and translation ranges of a discrete wavelet grid chosen so the
/// kept scales carry 1 - energy_tol of sum_u w_u ||D^{(n-1)/2} R_u f||^2.
DiscreteWaveletGrid plan_semidiscrete(const GridField& f, const DirectionSet& dirs,
                                      const GeneratorSpec& mother = GeneratorSpec::meyer(),
                                      double energy_tol = 1e-4,
                                      const AnalysisOptions& opt = {});

/// <f, G_{k,u}> = <D^{(n-1)/2} R_u f, g_k> for every atom of a discrete
/// system and every direction. One Radon transform and one fractional
/// derivative per direction.
CoefficientTable analyze(const GridField& f, const FrameSystem& sys, const DirectionSet& dirs,
                         const AnalysisOptions& opt = {});

/// (1/2) sum_u w_u sum_k c_{k,u} (D^{(n-1)/2} f_k)(u . x) on the m^n grid.
GridField synthesize(const CoefficientTable& table, const FrameSystem& dual,
                     const DirectionSet& dirs, std::size_t m, const AnalysisOptions& opt = {});

/// The n-D atom G_{k,u}(x) = (D^{(n-1)/2} g_k)(u . x) sampled on Q, for
/// direct inner products.
GridField ridge_atom(const FrameSystem& sys, const CoefficientEntry& index, const Direction& u,
                     std::size_t m);

struct DirectionSandwich {
    double coefficient_energy = 0.0;
    double radon_energy = 0.0;
    bool holds = false;
};

struct FrameInequality {
    double value = 0.0;
    double lower = 0.0;  // 2 A ||f||^2
    double upper = 0.0;  // 2 B ||f||^2
    double norm2 = 0.0;
    double truncation_defect = 0.0;
    std::vector<DirectionSandwich> per_direction;
    bool sandwich_holds = false;
};

/// value = sum_u w_u sum_k |c_{k,u}|^2. A and B are the bounds of the 1-D
/// system; the per-direction sandwich A r_u <= e_u <= B r_u is checked with
/// relative slack.
FrameInequality frame_inequality_check(const GridField& f, const FrameSystem& sys,
                                       const DirectionSet& dirs, double A, double B,
                                       double slack = 1e-3, const AnalysisOptions& opt = {});

struct NormIdentity {
    double value = 0.0;
    std::vector<std::string> warnings;
};

/// sum_u w_u ||D^{(n-1)/2} R_u f||^2, which should equal 2 ||f||^2.
NormIdentity norm_identity_check(const GridField& f, const DirectionSet& dirs);

struct ContinuousReconstruction {
    GridField field;
    double coverage_defect = 0.0;
};

struct ContinuousOptions {
    double span = 64.0;
    double max_defect = 1e-3;
};

/// Quadrature version of f = (1/2) int_S int <f, G_{k,u}> F_{k,u} dk du with
/// a dual Gabor pair.
ContinuousReconstruction continuous_reconstruct(const GridField& f, const DualGaborPair& pair,
                                                const DirectionSet& dirs,
                                                const GaborQuadrature& q,
                                                const ContinuousOptions& opt = {});
/// Same with a continuous wavelet frame, normalized by C_psi.
ContinuousReconstruction continuous_reconstruct(const GridField& f, const ContinuousWavelet& w,
                                                const DirectionSet& dirs,
                                                const ContinuousOptions& opt = {});

}  // namespace ridgeframe

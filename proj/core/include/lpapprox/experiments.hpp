#ifndef LPAPPROX_EXPERIMENTS_HPP
#define LPAPPROX_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lpapprox/bounds.hpp"
#include "lpapprox/cubes.hpp"
#include "lpapprox/monotone.hpp"
#include "lpapprox/packing.hpp"

namespace lpapprox {

/// One experiment run is a pure function of this config: identical configs
/// (seed included) produce byte-identical output files.
struct ExperimentConfig {
    std::string experiment = "monotone_scaling";
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string format = "csv"; // csv | svg (svg implies csv)

    // monotone scaling study
    int d = 2;
    double p = 1.0;
    int n_min = 1;
    int n_max = 6;
    std::uint64_t mc_samples = 200000;
    std::size_t compile_check_cap = 600; // verify the compiled net on small instances

    // packing certification
    double pack_s = 1.0;
    int pack_d = 1;
    double pack_p = 2.0;
    int pack_N = 8;
    int quadrature_points = 8192; // per axis, d = 1
    std::size_t max_quadrature_pairs = 16384;

    // impossibility demo
    int demo_n_min = 2;
    int demo_n_max = 6;
    int demo_grid = 512;
    int demo_probes = 1024;

    // bound sweep
    double sweep_w_min = 16.0;
    double sweep_w_max = 1.0e6;
    int sweep_w_steps = 16;
    double sweep_L = 1.0;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
    std::uint64_t hash() const; // FNV-1a of the canonical JSON
};

// ------------------------------------------------------------------ results

struct MonotoneScalingRow {
    std::string func;
    int N = 0;
    int l = 0;
    std::size_t cubes = 0;
    std::uint64_t w_compiled = 0;
    std::uint64_t w_budget = 0;
    double error_lp = 0.0;
    double error_bound = 0.0;
    bool bound_ok = false;
    bool cube_counts_ok = false;
};

struct ImpossibilityRow {
    int N = 0;
    double l1_error = 0.0;
    double sup_grid_error = 0.0;
};

struct PackingPairRow {
    std::size_t i = 0, j = 0;
    int hamming = 0;
    double dist_formula = 0.0;
    double dist_quadrature = 0.0; // NaN when out of the quadrature budget
};

struct PackingCertResult {
    std::size_t family_size = 0;
    double size_requirement = 0.0; // exp(N^d / 8)
    int min_hamming = 0;
    int hamming_requirement = 0; // N^d / 4
    double min_distance = 0.0;
    double distance_requirement = 0.0; // c N^{-s}
    double c_s = 0.0;
    double phi_lp = 0.0;
    double phi_holder = 0.0;
    bool thresholds_met = false;
    std::vector<PackingPairRow> pairs;
};

struct BoundSweepRow {
    std::string cls;
    double W = 0.0;
    double L = 1.0;
    int nu = 0;
    double value = 0.0;
    std::string regime;
};

// ------------------------------------------------------------------- runners

/// decompose -> approximant -> (optionally compile + cross-check) -> error.
/// Writes <out>/monotone_scaling.csv and, with format=svg, an error-vs-W
/// log-log plot with the -1/alpha reference slope.
std::vector<MonotoneScalingRow> run_monotone_scaling(const ExperimentConfig& cfg);

/// Disk-indicator pipeline: exact L^1 error (circle-box areas) against the
/// grid sup estimate with arc-straddling probe pairs.
std::vector<ImpossibilityRow> run_impossibility_demo(const ExperimentConfig& cfg);

PackingCertResult run_packing_cert(const ExperimentConfig& cfg);

std::vector<BoundSweepRow> run_bound_sweep(const ExperimentConfig& cfg);

// ------------------------------------------------------------------- helpers

/// Area of {x^2 + y^2 <= 1} intersected with [u0,u1]x[v0,v1] in the first
/// quadrant (closed form; used by the impossibility demo's exact L^1).
double unit_disk_box_area(double u0, double u1, double v0, double v1);

/// Exact L^1([0,1]^2) distance between the disk indicator and a dyadic
/// piecewise-constant approximant of it.
double disk_l1_error(const CubeDecomposition& dec, const DyadicApproximant& approx);

/// Probe pairs straddling the quarter-circle at radial offset +-1e-6.
std::vector<std::vector<double>> arc_straddling_probes(int count);

/// Least-squares slope of y against x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

/// CSV writing with the provenance comment line. All doubles at %.17g.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows, const ExperimentConfig& cfg);

/// Minimal log-log scatter plot with per-series polylines and an optional
/// reference slope, emitted as a standalone SVG.
struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};
void write_loglog_svg(const std::string& path, const std::vector<PlotSeries>& series,
                      double ref_slope, const std::string& title);

} // namespace lpapprox

#endif

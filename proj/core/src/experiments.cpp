#include "lpapprox/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "lpapprox/compiler.hpp"
#include "lpapprox/measures.hpp"
#include "lpapprox/rng.hpp"

namespace lpapprox {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

// ------------------------------------------------------------------- config

std::string ExperimentConfig::to_json() const {
    // canonical field order, stable across runs
    std::string s = "{";
    s += "\"experiment\":\"" + experiment + "\"";
    s += ",\"seed\":" + std::to_string(seed);
    s += ",\"out_dir\":\"" + out_dir + "\"";
    s += ",\"format\":\"" + format + "\"";
    s += ",\"d\":" + std::to_string(d);
    s += ",\"p\":" + fmt(p);
    s += ",\"n_min\":" + std::to_string(n_min);
    s += ",\"n_max\":" + std::to_string(n_max);
    s += ",\"mc_samples\":" + std::to_string(mc_samples);
    s += ",\"compile_check_cap\":" + std::to_string(compile_check_cap);
    s += ",\"pack_s\":" + fmt(pack_s);
    s += ",\"pack_d\":" + std::to_string(pack_d);
    s += ",\"pack_p\":" + fmt(pack_p);
    s += ",\"pack_N\":" + std::to_string(pack_N);
    s += ",\"quadrature_points\":" + std::to_string(quadrature_points);
    s += ",\"max_quadrature_pairs\":" + std::to_string(max_quadrature_pairs);
    s += ",\"demo_n_min\":" + std::to_string(demo_n_min);
    s += ",\"demo_n_max\":" + std::to_string(demo_n_max);
    s += ",\"demo_grid\":" + std::to_string(demo_grid);
    s += ",\"demo_probes\":" + std::to_string(demo_probes);
    s += ",\"sweep_w_min\":" + fmt(sweep_w_min);
    s += ",\"sweep_w_max\":" + fmt(sweep_w_max);
    s += ",\"sweep_w_steps\":" + std::to_string(sweep_w_steps);
    s += ",\"sweep_L\":" + fmt(sweep_L);
    s += "}";
    return s;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("experiment config: " + std::string(e.what()));
    }
    ExperimentConfig c;
    try {
        c.experiment = j.value("experiment", c.experiment);
        c.seed = j.value("seed", c.seed);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.format = j.value("format", c.format);
        c.d = j.value("d", c.d);
        c.p = j.value("p", c.p);
        c.n_min = j.value("n_min", c.n_min);
        c.n_max = j.value("n_max", c.n_max);
        c.mc_samples = j.value("mc_samples", c.mc_samples);
        c.compile_check_cap = j.value("compile_check_cap", c.compile_check_cap);
        c.pack_s = j.value("pack_s", c.pack_s);
        c.pack_d = j.value("pack_d", c.pack_d);
        c.pack_p = j.value("pack_p", c.pack_p);
        c.pack_N = j.value("pack_N", c.pack_N);
        c.quadrature_points = j.value("quadrature_points", c.quadrature_points);
        c.max_quadrature_pairs = j.value("max_quadrature_pairs", c.max_quadrature_pairs);
        c.demo_n_min = j.value("demo_n_min", c.demo_n_min);
        c.demo_n_max = j.value("demo_n_max", c.demo_n_max);
        c.demo_grid = j.value("demo_grid", c.demo_grid);
        c.demo_probes = j.value("demo_probes", c.demo_probes);
        c.sweep_w_min = j.value("sweep_w_min", c.sweep_w_min);
        c.sweep_w_max = j.value("sweep_w_max", c.sweep_w_max);
        c.sweep_w_steps = j.value("sweep_w_steps", c.sweep_w_steps);
        c.sweep_L = j.value("sweep_L", c.sweep_L);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("experiment config: " + std::string(e.what()));
    }
    return c;
}

std::uint64_t ExperimentConfig::hash() const {
    // the output directory does not influence any emitted row
    ExperimentConfig canon = *this;
    canon.out_dir.clear();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canon.to_json()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// ---------------------------------------------------------------- CSV / SVG

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows, const ExperimentConfig& cfg) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("write_csv: cannot open " + path);
    char prov[128];
    std::snprintf(prov, sizeof prov, "# lpapprox=0.1.0 config_hash=%016llx seed=%llu\n",
                  static_cast<unsigned long long>(cfg.hash()),
                  static_cast<unsigned long long>(cfg.seed));
    out << prov << header << "\n";
    for (const auto& row : rows) out << row << "\n";
}

namespace {

// CSV is always written; format=json additionally dumps the same rows as a
// JSON array keyed by the header's column names.
void maybe_write_json(const std::string& csv_path, const std::string& header,
                      const std::vector<std::string>& rows, const ExperimentConfig& cfg) {
    if (cfg.format != "json") return;
    std::vector<std::string> cols;
    std::string cur;
    for (char ch : header) {
        if (ch == ',') {
            cols.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    cols.push_back(cur);
    std::string out = "[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r) out += ',';
        out += '{';
        std::size_t col = 0;
        std::string field;
        const std::string& row = rows[r];
        bool quoted = false;
        auto emit = [&]() {
            if (col) out += ',';
            out += '"' + (col < cols.size() ? cols[col] : "col" + std::to_string(col)) + "\":";
            char* end = nullptr;
            const double parsed = std::strtod(field.c_str(), &end);
            const bool numeric = !field.empty() && end == field.c_str() + field.size() &&
                                 std::isfinite(parsed);
            const bool boolean = field == "true" || field == "false";
            if (numeric || boolean)
                out += field;
            else
                out += '"' + field + '"'; // includes the nan sentinel of skipped quadrature
            ++col;
            field.clear();
        };
        for (char ch : row) {
            if (ch == '"') {
                quoted = !quoted;
            } else if (ch == ',' && !quoted) {
                emit();
            } else {
                field += ch;
            }
        }
        emit();
        out += '}';
    }
    out += "]\n";
    const std::string path =
        csv_path.substr(0, csv_path.size() - 4) + ".json"; // sibling of foo.csv
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot open " + path);
    file << out;
}

} // namespace

void write_loglog_svg(const std::string& path, const std::vector<PlotSeries>& series,
                      double ref_slope, const std::string& title) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (s.x[i] <= 0 || s.y[i] <= 0) continue;
            xmin = std::min(xmin, std::log10(s.x[i]));
            xmax = std::max(xmax, std::log10(s.x[i]));
            ymin = std::min(ymin, std::log10(s.y[i]));
            ymax = std::max(ymax, std::log10(s.y[i]));
        }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    const double margin = 0.25;
    xmin -= margin / 4;
    xmax += margin / 4;
    ymin -= margin;
    ymax += margin;
    const double W = 640, H = 480, pad = 56;
    auto X = [&](double lx) { return pad + (lx - xmin) / (xmax - xmin) * (W - 2 * pad); };
    auto Y = [&](double ly) { return H - pad - (ly - ymin) / (ymax - ymin) * (H - 2 * pad); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) +
                      "\" height=\"" + fmt(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(W / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
           title + "</text>\n";
    // axes
    svg += "<line x1=\"" + fmt(pad) + "\" y1=\"" + fmt(H - pad) + "\" x2=\"" + fmt(W - pad) +
           "\" y2=\"" + fmt(H - pad) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(pad) + "\" y1=\"" + fmt(pad) + "\" x2=\"" + fmt(pad) + "\" y2=\"" +
           fmt(H - pad) + "\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e) {
        svg += "<line x1=\"" + fmt(X(e)) + "\" y1=\"" + fmt(H - pad) + "\" x2=\"" + fmt(X(e)) +
               "\" y2=\"" + fmt(H - pad + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt(X(e)) + "\" y=\"" + fmt(H - pad + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\">1e" + std::to_string(e) + "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax)); ++e) {
        svg += "<line x1=\"" + fmt(pad - 5) + "\" y1=\"" + fmt(Y(e)) + "\" x2=\"" + fmt(pad) +
               "\" y2=\"" + fmt(Y(e)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt(pad - 8) + "\" y=\"" + fmt(Y(e) + 4) +
               "\" text-anchor=\"end\" font-size=\"11\">1e" + std::to_string(e) + "</text>\n";
    }
    // reference slope through the first series' first point
    if (ref_slope != 0.0 && !series.empty() && series[0].x.size() > 1) {
        const double lx0 = std::log10(series[0].x.front());
        const double ly0 = std::log10(series[0].y.front());
        const double lx1 = std::log10(series[0].x.back());
        const double ly1 = ly0 + ref_slope * (lx1 - lx0);
        svg += "<line x1=\"" + fmt(X(lx0)) + "\" y1=\"" + fmt(Y(ly0)) + "\" x2=\"" + fmt(X(lx1)) +
               "\" y2=\"" + fmt(Y(ly1)) +
               "\" stroke=\"#aaaaaa\" stroke-dasharray=\"6,4\"/>\n";
        svg += "<text x=\"" + fmt(X(lx1) - 4) + "\" y=\"" + fmt(Y(ly1) - 6) +
               "\" text-anchor=\"end\" font-size=\"11\" fill=\"#888888\">slope " +
               fmt(ref_slope) + "</text>\n";
    }
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = colors[si % 8];
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (s.x[i] <= 0 || s.y[i] <= 0) continue;
            const double cx = X(std::log10(s.x[i])), cy = Y(std::log10(s.y[i]));
            pts += fmt(cx) + "," + fmt(cy) + " ";
            svg += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"3\" fill=\"" +
                   color + "\"/>\n";
        }
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color + "\"/>\n";
        svg += "<text x=\"" + fmt(W - pad - 4) + "\" y=\"" + fmt(pad + 14 * (si + 1)) +
               "\" text-anchor=\"end\" font-size=\"11\" fill=\"" + color + "\">" + s.label +
               "</text>\n";
    }
    svg += "</svg>\n";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("write_loglog_svg: cannot open " + path);
    out << svg;
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("fitted_slope: need >= 2 paired samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ------------------------------------------------------------ disk geometry

double unit_disk_box_area(double u0, double u1, double v0, double v1) {
    u0 = std::max(u0, 0.0);
    v0 = std::max(v0, 0.0);
    u1 = std::min(u1, 1.0);
    if (u0 >= u1 || v0 >= v1 || v0 >= 1.0) return 0.0;
    const auto G = [](double u) { return 0.5 * (u * std::sqrt(1.0 - u * u) + std::asin(u)); };
    const double ua = v1 >= 1.0 ? 0.0 : std::sqrt(1.0 - v1 * v1); // g(u) >= v1 for u <= ua
    const double ub = std::sqrt(1.0 - v0 * v0);                   // g(u) >= v0 for u <= ub
    double area = 0.0;
    {
        const double lo = u0, hi = std::min(u1, ua);
        if (hi > lo) area += (v1 - v0) * (hi - lo);
    }
    {
        const double lo = std::max(u0, ua), hi = std::min(u1, ub);
        if (hi > lo) area += G(hi) - G(lo) - v0 * (hi - lo);
    }
    return area;
}

double disk_l1_error(const CubeDecomposition& dec, const DyadicApproximant& approx) {
    if (dec.params.d != 2) throw DomainError("disk_l1_error: demo runs in d = 2");
    long double total = 0.0L;
    std::vector<double> corner(2);
    for (std::size_t li = 0; li < dec.levels.size(); ++li) {
        for (std::size_t k = 0; k < dec.levels[li].count(); ++k) {
            const Cube c = dec.cube_at(static_cast<int>(li), k);
            corner[0] = c.lo[0];
            corner[1] = c.lo[1];
            const double v = approx(corner); // f(inf corner), 0 or 1
            // in (u, w) = (1-x, 1-y) coordinates the disk is the unit disk
            const double a =
                unit_disk_box_area(1.0 - c.hi[0], 1.0 - c.lo[0], 1.0 - c.hi[1], 1.0 - c.lo[1]);
            total += v >= 0.5 ? (c.volume() - a) : a;
        }
    }
    return static_cast<double>(total);
}

std::vector<std::vector<double>> arc_straddling_probes(int count) {
    std::vector<std::vector<double>> pts;
    pts.reserve(2 * static_cast<std::size_t>(count));
    const double pi = std::acos(-1.0);
    for (int k = 0; k < count; ++k) {
        const double theta = 0.02 + (pi / 2 - 0.04) * (k + 0.5) / count;
        for (double r : {1.0 - 1e-6, 1.0 + 1e-6}) {
            const double x = std::clamp(1.0 - r * std::cos(theta), 0.0, 1.0);
            const double y = std::clamp(1.0 - r * std::sin(theta), 0.0, 1.0);
            pts.push_back({x, y});
        }
    }
    return pts;
}

// ----------------------------------------------------------------- monotone

std::vector<MonotoneScalingRow> run_monotone_scaling(const ExperimentConfig& cfg) {
    std::vector<MonotoneScalingRow> out;
    const auto corpus = monotone_corpus(cfg.d, cfg.seed);
    std::uint64_t run_index = 0;
    for (const auto& [name, oracle] : corpus) {
        for (int N = cfg.n_min; N <= cfg.n_max; ++N, ++run_index) {
            const DecompositionParams params(N, cfg.d, cfg.p);
            const auto dec = decompose(oracle, params);
            const auto approx = build_fast_approximant(dec, oracle);

            MonotoneScalingRow row;
            row.func = name;
            row.N = N;
            row.l = params.levels();
            row.cubes = dec.total_cubes();
            row.w_compiled = compiled_weight_count(cfg.d, row.cubes);
            row.w_budget = predicted_weight_budget(params);
            row.cube_counts_ok = check_cube_count_bounds(dec) && row.w_compiled <= row.w_budget;

            if (row.cubes <= cfg.compile_check_cap) {
                // end-to-end check on instances small enough to synthesize
                const auto fn = approx.to_piecewise_constant();
                const Network net = compile_cubes(fn, false);
                if (net.architecture().weight_count() != row.w_compiled)
                    throw ValidationError("monotone scaling: compiled weight count mismatch");
                std::vector<double> x(static_cast<std::size_t>(cfg.d));
                for (int probe = 0; probe < 32; ++probe) {
                    rng::uniform_point(cfg.seed ^ 0xC0DEULL, run_index * 32 +
                                           static_cast<std::uint64_t>(probe), x);
                    if (net.evaluate(x) != fn(x))
                        throw ValidationError("monotone scaling: compiled net != approximant");
                }
            }

            const auto est = lp_distance_mc(oracle.f, approx.as_fn(), cfg.p, cfg.d,
                                            cfg.mc_samples, rng::mix(cfg.seed, run_index));
            const auto bound = lp_error_bound(params);
            row.error_lp = est.value;
            row.error_bound = bound.value;
            row.bound_ok = row.error_lp <= row.error_bound;
            out.push_back(std::move(row));
        }
    }

    std::vector<std::string> rows;
    for (const auto& r : out)
        rows.push_back(r.func + "," + std::to_string(r.N) + "," + std::to_string(r.l) + "," +
                       std::to_string(r.cubes) + "," + std::to_string(r.w_compiled) + "," +
                       std::to_string(r.w_budget) + "," + fmt(r.error_lp) + "," +
                       fmt(r.error_bound) + "," + (r.bound_ok ? "true" : "false") + "," +
                       (r.cube_counts_ok ? "true" : "false"));
    write_csv(cfg.out_dir + "/monotone_scaling.csv",
              "func,N,l,cubes,w_compiled,w_budget,error_lp,error_bound,bound_ok,cube_counts_ok",
              rows, cfg);
    maybe_write_json(cfg.out_dir + "/monotone_scaling.csv",
                     "func,N,l,cubes,w_compiled,w_budget,error_lp,error_bound,bound_ok,cube_counts_ok",
                     rows, cfg);

    if (cfg.format == "svg") {
        std::vector<PlotSeries> series;
        for (const auto& [name, oracle] : corpus) {
            (void)oracle;
            PlotSeries s;
            s.label = name;
            for (const auto& r : out)
                if (r.func == name && r.error_lp > 0) {
                    s.x.push_back(static_cast<double>(r.w_compiled));
                    s.y.push_back(r.error_lp);
                }
            if (!s.x.empty()) series.push_back(std::move(s));
        }
        const double alpha = monotone_packing_exponent(cfg.d, cfg.p);
        write_loglog_svg(cfg.out_dir + "/monotone_scaling.svg", series, -1.0 / alpha,
                         "Lp error vs compiled weights");
    }
    return out;
}

// ------------------------------------------------------------- impossibility

std::vector<ImpossibilityRow> run_impossibility_demo(const ExperimentConfig& cfg) {
    const MonotoneOracle disk = disk_indicator(2);
    const auto probes = arc_straddling_probes(cfg.demo_probes);
    std::vector<ImpossibilityRow> out;
    for (int N = cfg.demo_n_min; N <= cfg.demo_n_max; ++N) {
        const DecompositionParams params(N, 2, cfg.p);
        const auto dec = decompose(disk, params);
        const auto approx = build_fast_approximant(dec, disk);
        ImpossibilityRow row;
        row.N = N;
        row.l1_error = disk_l1_error(dec, approx);
        row.sup_grid_error = sup_grid(disk.f, approx.as_fn(), 2, cfg.demo_grid, probes);
        out.push_back(row);
    }
    std::vector<std::string> rows;
    for (const auto& r : out)
        rows.push_back(std::to_string(r.N) + "," + fmt(r.l1_error) + "," +
                       fmt(r.sup_grid_error));
    write_csv(cfg.out_dir + "/impossibility.csv", "N,l1_error,grid_sup_error", rows, cfg);
    maybe_write_json(cfg.out_dir + "/impossibility.csv", "N,l1_error,grid_sup_error", rows, cfg);
    return out;
}

// ------------------------------------------------------------------ packing

namespace {

// midpoint tensor quadrature of ||f - g||_p over [0,1]^d
double quadrature_distance(const RealFn& f, const RealFn& g, int d, double p, int per_axis) {
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    long double sum = 0.0L;
    double cell = 1.0;
    for (int j = 0; j < d; ++j) cell /= per_axis;
    while (true) {
        for (int j = 0; j < d; ++j)
            x[static_cast<std::size_t>(j)] =
                (idx[static_cast<std::size_t>(j)] + 0.5) / per_axis;
        const double diff = std::fabs(f(x) - g(x));
        if (diff > 0) sum += std::pow(diff, p);
        int axis = d - 1;
        while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == per_axis) {
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return static_cast<double>(std::pow(sum * cell, 1.0L / static_cast<long double>(p)));
}

} // namespace

PackingCertResult run_packing_cert(const ExperimentConfig& cfg) {
    const auto family = build_packing(cfg.pack_s, cfg.pack_d, cfg.pack_p, cfg.pack_N);
    PackingCertResult res;
    res.family_size = family.size();
    const double cells = std::pow(static_cast<double>(cfg.pack_N), cfg.pack_d);
    res.size_requirement = std::exp(cells / 8.0);
    res.hamming_requirement = static_cast<int>(cells) / 4;
    res.c_s = family.scale();
    res.phi_lp = family.phi_lp_norm();
    res.phi_holder = family.phi_holder_norm();
    res.distance_requirement =
        family.separation_constant() * std::pow(static_cast<double>(cfg.pack_N), -cfg.pack_s);

    res.min_hamming = family.cell_count() + 1;
    res.min_distance = 1e300;
    std::size_t quad_used = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            PackingPairRow row;
            row.i = i;
            row.j = j;
            row.hamming = family.hamming(i, j);
            row.dist_formula = family.distance_formula(i, j);
            if (quad_used < cfg.max_quadrature_pairs) {
                row.dist_quadrature =
                    quadrature_distance(family.member_fn(i), family.member_fn(j), cfg.pack_d,
                                        cfg.pack_p, cfg.quadrature_points);
                ++quad_used;
            } else {
                row.dist_quadrature = std::numeric_limits<double>::quiet_NaN();
            }
            res.min_hamming = std::min(res.min_hamming, row.hamming);
            res.min_distance = std::min(res.min_distance, row.dist_formula);
            res.pairs.push_back(row);
        }
    }
    const double tol = 1e-9; // FP guard: the minimal pair meets the bound with equality
    res.thresholds_met = static_cast<double>(res.family_size) >= res.size_requirement &&
                         res.min_hamming >= res.hamming_requirement &&
                         res.min_distance >= res.distance_requirement * (1.0 - tol);

    std::vector<std::string> rows;
    for (const auto& r : res.pairs)
        rows.push_back(std::to_string(r.i) + "," + std::to_string(r.j) + "," +
                       std::to_string(r.hamming) + "," + fmt(r.dist_formula) + "," +
                       fmt(r.dist_quadrature));
    write_csv(cfg.out_dir + "/packing_pairs.csv", "i,j,hamming,distance_formula,distance_quadrature",
              rows, cfg);
    maybe_write_json(cfg.out_dir + "/packing_pairs.csv",
                     "i,j,hamming,distance_formula,distance_quadrature", rows, cfg);
    std::vector<std::string> summary = {
        "family_size," + std::to_string(res.family_size),
        "size_requirement," + fmt(res.size_requirement),
        "min_hamming," + std::to_string(res.min_hamming),
        "hamming_requirement," + std::to_string(res.hamming_requirement),
        "min_distance," + fmt(res.min_distance),
        "distance_requirement," + fmt(res.distance_requirement),
        "c_s," + fmt(res.c_s),
        "phi_lp," + fmt(res.phi_lp),
        "phi_holder," + fmt(res.phi_holder),
        std::string("thresholds_met,") + (res.thresholds_met ? "true" : "false")};
    write_csv(cfg.out_dir + "/packing_summary.csv", "key,value", summary, cfg);
    return res;
}

// -------------------------------------------------------------- bound sweep

std::vector<BoundSweepRow> run_bound_sweep(const ExperimentConfig& cfg) {
    std::vector<BoundSweepRow> out;
    const double ratio =
        cfg.sweep_w_steps > 1
            ? std::pow(cfg.sweep_w_max / cfg.sweep_w_min, 1.0 / (cfg.sweep_w_steps - 1))
            : 1.0;
    for (int i = 0; i < cfg.sweep_w_steps; ++i) {
        const double W = cfg.sweep_w_min * std::pow(ratio, i);
        for (int nu : {0, 1, 2}) {
            RateQuery q;
            q.W = W;
            q.L = cfg.sweep_L;
            q.nu = nu;
            q.d = cfg.d;
            q.p = cfg.p;

            q.cls = "monotone_lower";
            auto r = rate_table(q);
            out.push_back({q.cls, W, q.L, nu, r.value, r.regime});

            q.cls = "barron";
            r = rate_table(q);
            out.push_back({q.cls, W, q.L, nu, r.value, r.regime});

            if (nu == 0) {
                if (cfg.d >= 2) {
                    q.cls = "monotone_upper";
                    r = rate_table(q);
                    out.push_back({q.cls, W, q.L, 0, r.value, r.regime});
                }
                q.cls = "holder";
                q.s = cfg.pack_s;
                q.gamma = 1.5 * cfg.pack_s / cfg.d;
                q.L = 1.0; // the shallow end of the depth window; the rate itself is L-free
                r = rate_table(q);
                out.push_back({q.cls, W, q.L, 0, r.value, r.regime});
                q.L = cfg.sweep_L;
            }
        }
    }
    std::vector<std::string> rows;
    for (const auto& r : out)
        rows.push_back(r.cls + "," + fmt(r.W) + "," + fmt(r.L) + "," + std::to_string(r.nu) +
                       "," + fmt(r.value) + ",\"" + r.regime + "\"");
    write_csv(cfg.out_dir + "/bound_sweep.csv", "class,W,L,nu,value,regime", rows, cfg);
    maybe_write_json(cfg.out_dir + "/bound_sweep.csv", "class,W,L,nu,value,regime", rows, cfg);
    return out;
}

} // namespace lpapprox

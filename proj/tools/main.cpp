// Command-line front end: compile piecewise-constant functions to Heaviside
// networks, run monotone approximation and packing constructions, estimate
// combinatorial dimensions, evaluate bound formulas, and drive the canned
// experiments. Exit codes: 0 ok, 2 validation error, 3 capacity error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpapprox/bounds.hpp"
#include "lpapprox/compiler.hpp"
#include "lpapprox/dimension.hpp"
#include "lpapprox/experiments.hpp"
#include "lpapprox/measures.hpp"
#include "lpapprox/monotone.hpp"
#include "lpapprox/network.hpp"
#include "lpapprox/packing.hpp"

namespace {

using namespace lpapprox;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << text << "\n";
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string rate_result_json(const RateResult& r) {
    std::string s = "{\"value\":" + fmt(r.value) + ",\"regime\":\"" + r.regime +
                    "\",\"constants\":{";
    bool first = true;
    for (const auto& [k, v] : r.constants) {
        if (!first) s += ',';
        first = false;
        s += "\"" + k + "\":" + fmt(v);
    }
    s += "}}";
    return s;
}

MonotoneOracle corpus_member(const std::string& name, int d, std::uint64_t seed) {
    for (auto& entry : monotone_corpus(d, seed))
        if (entry.name == name) return entry.oracle;
    std::string known;
    for (const auto& entry : monotone_corpus(d, seed)) known += entry.name + " ";
    throw ValidationError("unknown test function '" + name + "' (have: " + known + ")");
}

int run(int argc, char** argv) {
    CLI::App app{"L^p approximation bounds toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // --seed/--out may follow the subcommand

    std::uint64_t seed = 1;
    std::string out_path;
    app.add_option("--seed", seed, "global random seed")->capture_default_str();
    app.add_option("--out", out_path, "output file or directory (default stdout)");

    // ---- compile
    auto* compile = app.add_subcommand("compile", "piecewise-constant function -> network JSON");
    std::string compile_in = "-";
    compile->add_option("--in", compile_in, "function JSON (- for stdin)");

    // ---- approx-monotone
    auto* approx = app.add_subcommand("approx-monotone", "adaptive cube decomposition");
    std::string am_func = "mean";
    int am_d = 2, am_N = 3;
    double am_p = 1.0;
    bool am_dump = false;
    std::uint64_t am_mc = 100000;
    approx->add_option("--func", am_func, "corpus function name")->capture_default_str();
    approx->add_option("--d", am_d, "dimension")->capture_default_str();
    approx->add_option("--p", am_p, "L^p exponent")->capture_default_str();
    approx->add_option("--N", am_N, "base resolution")->capture_default_str();
    approx->add_option("--mc-samples", am_mc, "error estimate samples")->capture_default_str();
    approx->add_flag("--dump-decomposition", am_dump, "emit per-level cube lists");

    // ---- packing
    auto* packing = app.add_subcommand("packing", "Hoelder-ball packing construction");
    double pk_s = 1.0, pk_p = 2.0;
    int pk_d = 1, pk_N = 8;
    std::string pk_format = "csv";
    packing->add_option("--s", pk_s, "smoothness (0,1]")->capture_default_str();
    packing->add_option("--d", pk_d, "dimension")->capture_default_str();
    packing->add_option("--p", pk_p, "L^p exponent")->capture_default_str();
    packing->add_option("--N", pk_N, "grid count per axis")->capture_default_str();
    packing->add_option("--format", pk_format, "csv | json")->capture_default_str();

    // ---- dims
    auto* dims = app.add_subcommand("dims", "dimension estimation for a finite class");
    std::string dims_in = "-", dims_op = "pseudo";
    double dims_gamma = 0.1, dims_eps = 0.1, dims_p = 2.0;
    dims->add_option("--in", dims_in, "class JSON (- for stdin)");
    dims->add_option("--op", dims_op, "vc | pseudo | fat | packing")->capture_default_str();
    dims->add_option("--gamma", dims_gamma, "fat margin")->capture_default_str();
    dims->add_option("--eps", dims_eps, "packing separation")->capture_default_str();
    dims->add_option("--p", dims_p, "empirical norm exponent")->capture_default_str();

    // ---- bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "bound formula evaluation");
    bounds_cmd->require_subcommand(1);
    auto* bounds_eval = bounds_cmd->add_subcommand("eval", "single rate evaluation -> JSON");
    RateQuery rq;
    rq.cls = "holder";
    bounds_eval->add_option("--class", rq.cls, "holder | monotone_lower | monotone_upper | barron")
        ->capture_default_str();
    bounds_eval->add_option("--d", rq.d)->capture_default_str();
    bounds_eval->add_option("--p", rq.p)->capture_default_str();
    bounds_eval->add_option("--s", rq.s)->capture_default_str();
    bounds_eval->add_option("--gamma", rq.gamma)->capture_default_str();
    bounds_eval->add_option("--nu", rq.nu)->capture_default_str();
    bounds_eval->add_option("--W", rq.W)->capture_default_str();
    bounds_eval->add_option("--L", rq.L)->capture_default_str();
    bounds_eval->add_option("--c1", rq.c1)->capture_default_str();
    bounds_eval->add_option("--c2", rq.c2)->capture_default_str();
    bounds_eval->add_option("--c3", rq.c3)->capture_default_str();
    auto* bounds_solve = bounds_cmd->add_subcommand("solve", "inequation solver");
    double sv_c = 1.0, sv_alpha = 2.0, sv_r = 2.0, sv_P = 1024;
    bounds_solve->add_option("--c", sv_c)->capture_default_str();
    bounds_solve->add_option("--alpha", sv_alpha)->capture_default_str();
    bounds_solve->add_option("--r", sv_r)->capture_default_str();
    bounds_solve->add_option("--P", sv_P)->capture_default_str();
    auto* bounds_sweep = bounds_cmd->add_subcommand("sweep", "rate sweep -> CSV");
    double sw_wmin = 16, sw_wmax = 1e6, sw_L = 1.0, sw_p = 1.0;
    int sw_steps = 16, sw_d = 2;
    bounds_sweep->add_option("--w-min", sw_wmin)->capture_default_str();
    bounds_sweep->add_option("--w-max", sw_wmax)->capture_default_str();
    bounds_sweep->add_option("--steps", sw_steps)->capture_default_str();
    bounds_sweep->add_option("--L", sw_L)->capture_default_str();
    bounds_sweep->add_option("--d", sw_d)->capture_default_str();
    bounds_sweep->add_option("--p", sw_p)->capture_default_str();

    // ---- demo-impossibility
    auto* demo = app.add_subcommand("demo-impossibility", "sup-norm impossibility demo");
    int demo_nmin = 2, demo_nmax = 6, demo_grid = 512, demo_probes = 1024;
    demo->add_option("--n-min", demo_nmin)->capture_default_str();
    demo->add_option("--n-max", demo_nmax)->capture_default_str();
    demo->add_option("--grid", demo_grid)->capture_default_str();
    demo->add_option("--probes", demo_probes)->capture_default_str();

    // ---- experiment
    auto* experiment = app.add_subcommand("experiment", "run a canned experiment");
    std::string exp_name = "monotone_scaling", exp_config, exp_format = "csv";
    bool exp_print_config = false;
    experiment->add_option("--name", exp_name,
                           "monotone_scaling | packing_cert | bound_sweep | impossibility")
        ->capture_default_str();
    experiment->add_option("--config", exp_config, "config JSON file (defaults embedded)");
    experiment->add_option("--format", exp_format, "csv | svg")->capture_default_str();
    experiment->add_flag("--print-config", exp_print_config, "print the effective config");

    CLI11_PARSE(app, argc, argv);

    if (*compile) {
        const auto fn = piecewise_from_json(read_input(compile_in));
        write_output(out_path, to_json(compile_cubes(fn)));
        return 0;
    }

    if (*approx) {
        const auto oracle = corpus_member(am_func, am_d, seed);
        const DecompositionParams params(am_N, am_d, am_p);
        const auto dec = decompose(oracle, params);
        const auto fast = build_fast_approximant(dec, oracle);
        const auto est = lp_distance_mc(oracle.f, fast.as_fn(), am_p, am_d, am_mc, seed);
        const auto bound = lp_error_bound(params);
        std::string json = "{\"func\":\"" + am_func + "\",\"N\":" + std::to_string(am_N) +
                           ",\"d\":" + std::to_string(am_d) + ",\"p\":" + fmt(am_p) +
                           ",\"l\":" + std::to_string(params.levels()) +
                           ",\"K\":" + fmt(params.K()) +
                           ",\"cubes\":" + std::to_string(dec.total_cubes()) +
                           ",\"w_compiled\":" + std::to_string(compiled_weight_count(am_d, dec.total_cubes())) +
                           ",\"w_budget\":" + std::to_string(predicted_weight_budget(params)) +
                           ",\"error_lp\":" + fmt(est.value) +
                           ",\"error_bound\":" + fmt(bound.value) +
                           ",\"counts\":[";
        for (std::size_t i = 0; i < dec.levels.size(); ++i) {
            if (i) json += ',';
            json += std::to_string(dec.levels[i].count());
        }
        json += "]";
        if (am_dump) {
            json += ",\"levels\":[";
            for (std::size_t i = 0; i < dec.levels.size(); ++i) {
                if (i) json += ',';
                json += "{\"scale\":" + std::to_string(dec.levels[i].scale) + ",\"cubes\":[";
                for (std::size_t k = 0; k < dec.levels[i].count(); ++k) {
                    if (k) json += ',';
                    const Cube c = dec.cube_at(static_cast<int>(i), k);
                    json += "{\"lo\":[";
                    for (std::size_t j = 0; j < c.lo.size(); ++j) {
                        if (j) json += ',';
                        json += fmt(c.lo[j]);
                    }
                    json += "],\"hi\":[";
                    for (std::size_t j = 0; j < c.hi.size(); ++j) {
                        if (j) json += ',';
                        json += fmt(c.hi[j]);
                    }
                    json += "]}";
                }
                json += "]}";
            }
            json += "]";
        }
        json += "}";
        write_output(out_path, json);
        return 0;
    }

    if (*packing) {
        ExperimentConfig cfg;
        cfg.experiment = "packing_cert";
        cfg.seed = seed;
        cfg.out_dir = out_path.empty() ? "out" : out_path;
        cfg.pack_s = pk_s;
        cfg.pack_d = pk_d;
        cfg.pack_p = pk_p;
        cfg.pack_N = pk_N;
        const auto res = run_packing_cert(cfg);
        if (pk_format == "json") {
            const auto family = build_packing(pk_s, pk_d, pk_p, pk_N);
            std::string json = "{\"size\":" + std::to_string(res.family_size) +
                               ",\"c_s\":" + fmt(res.c_s) + ",\"phi_lp\":" + fmt(res.phi_lp) +
                               ",\"phi_holder\":" + fmt(res.phi_holder) +
                               ",\"min_distance\":" + fmt(res.min_distance) +
                               ",\"thresholds_met\":" + (res.thresholds_met ? "true" : "false") +
                               ",\"code\":[";
            for (std::size_t i = 0; i < family.code().words.size(); ++i) {
                if (i) json += ',';
                json += std::to_string(family.code().words[i]);
            }
            json += "]}";
            std::cout << json << "\n";
        } else {
            std::cout << (res.thresholds_met ? "thresholds met" : "THRESHOLDS FAILED")
                      << " (family " << res.family_size << ", min distance " << res.min_distance
                      << ", written to " << cfg.out_dir << ")\n";
        }
        return res.thresholds_met ? 0 : 1;
    }

    if (*dims) {
        const auto cls = function_class_from_json(read_input(dims_in));
        std::string json;
        if (dims_op == "vc") {
            json = "{\"vc_dim\":" + std::to_string(vc_dim(cls)) + "}";
        } else if (dims_op == "pseudo") {
            const auto r = pseudo_dim(cls);
            json = "{\"pseudo_dim\":" + std::to_string(r.value) +
                   ",\"exact\":" + (r.exact ? "true" : "false") + "}";
        } else if (dims_op == "fat") {
            const auto r = fat_dim(cls, dims_gamma);
            json = "{\"fat_dim\":" + std::to_string(r.value) + ",\"gamma\":" + fmt(dims_gamma) +
                   ",\"exact\":" + (r.exact ? "true" : "false") + "}";
        } else if (dims_op == "packing") {
            const auto r = packing_number(cls, dims_eps, dims_p);
            json = "{\"packing_number\":" + std::to_string(r.size) + ",\"eps\":" + fmt(dims_eps) +
                   ",\"exact\":" + (r.exact ? "true" : "false") + "}";
        } else {
            throw ValidationError("dims: unknown --op '" + dims_op + "'");
        }
        write_output(out_path, json);
        return 0;
    }

    if (*bounds_cmd) {
        if (*bounds_eval) {
            write_output(out_path, rate_result_json(rate_table(rq)));
            return 0;
        }
        if (*bounds_solve) {
            const auto eps = solve_inequation(sv_c, sv_alpha, sv_r, sv_P);
            write_output(out_path, eps ? "{\"eps\":" + fmt(*eps) + "}"
                                       : "{\"eps\":null,\"note\":\"no solution below r\"}");
            return 0;
        }
        ExperimentConfig cfg;
        cfg.experiment = "bound_sweep";
        cfg.seed = seed;
        cfg.out_dir = out_path.empty() ? "out" : out_path;
        cfg.sweep_w_min = sw_wmin;
        cfg.sweep_w_max = sw_wmax;
        cfg.sweep_w_steps = sw_steps;
        cfg.sweep_L = sw_L;
        cfg.d = sw_d;
        cfg.p = sw_p;
        run_bound_sweep(cfg);
        std::cout << "sweep written to " << cfg.out_dir << "/bound_sweep.csv\n";
        return 0;
    }

    if (*demo) {
        ExperimentConfig cfg;
        cfg.experiment = "impossibility";
        cfg.seed = seed;
        cfg.out_dir = out_path.empty() ? "out" : out_path;
        cfg.demo_n_min = demo_nmin;
        cfg.demo_n_max = demo_nmax;
        cfg.demo_grid = demo_grid;
        cfg.demo_probes = demo_probes;
        const auto rows = run_impossibility_demo(cfg);
        for (const auto& r : rows)
            std::cout << "N=" << r.N << " L1=" << r.l1_error << " sup>=" << r.sup_grid_error
                      << "\n";
        return 0;
    }

    if (*experiment) {
        ExperimentConfig cfg;
        if (!exp_config.empty()) cfg = ExperimentConfig::from_json(read_input(exp_config));
        if (experiment->count("--name")) cfg.experiment = exp_name;
        if (app.count("--seed")) cfg.seed = seed;
        if (!out_path.empty()) cfg.out_dir = out_path;
        if (experiment->count("--format")) cfg.format = exp_format;
        if (exp_print_config) {
            std::cout << cfg.to_json() << "\n";
            return 0;
        }
        if (cfg.experiment == "monotone_scaling") {
            run_monotone_scaling(cfg);
        } else if (cfg.experiment == "packing_cert") {
            run_packing_cert(cfg);
        } else if (cfg.experiment == "bound_sweep") {
            run_bound_sweep(cfg);
        } else if (cfg.experiment == "impossibility") {
            run_impossibility_demo(cfg);
        } else if (cfg.experiment == "all") {
            run_monotone_scaling(cfg);
            run_packing_cert(cfg);
            run_bound_sweep(cfg);
            run_impossibility_demo(cfg);
        } else {
            throw ValidationError("experiment: unknown name '" + cfg.experiment + "'");
        }
        std::cout << "experiment '" << cfg.experiment << "' written to " << cfg.out_dir << "\n";
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lpapprox::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const lpapprox::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lpapprox::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}

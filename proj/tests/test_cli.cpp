// Drives the installed CLI binary end to end: exit codes, format contracts,
// determinism of emitted files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(LPAPPROX_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) result.output += buf.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::filesystem::create_directories("cli_tmp");
    const std::string path = "cli_tmp/" + name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("compile: function json to network json") {
    const std::string fn = R"({"d":1,"cubes":[{"lo":[0.0],"hi":[0.5],
        "faces_belong":[true,false]}],"values":[1.0]})";
    const auto path = write_temp("fn.json", fn);
    const auto res = run_cli("compile --in " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"layers\":[[0],[1,2],[3],[4]]") != std::string::npos);
    CHECK(res.output.find("\"output_bias\":false") != std::string::npos);
}

TEST_CASE("compile: overlapping cubes exit with code 2") {
    const std::string fn = R"({"d":1,"cubes":[
        {"lo":[0.0],"hi":[0.6],"faces_belong":[true,false]},
        {"lo":[0.5],"hi":[1.0],"faces_belong":[true,false]}],"values":[1.0,2.0]})";
    const auto path = write_temp("overlap.json", fn);
    const auto res = run_cli("compile --in " + path);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("overlap") != std::string::npos);
}

TEST_CASE("compile: malformed json exits with code 2") {
    const auto path = write_temp("broken.json", "{\"d\":1,");
    CHECK(run_cli("compile --in " + path).exit_code == 2);
}

TEST_CASE("approx-monotone emits decomposition stats") {
    const auto res = run_cli("approx-monotone --func mean --d 2 --p 1 --N 2 --mc-samples 5000");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"cubes\":16") != std::string::npos);
    CHECK(res.output.find("\"w_compiled\":288") != std::string::npos); // 18 * 16
}

TEST_CASE("approx-monotone: capacity exit code 3") {
    const auto res = run_cli("approx-monotone --func mean --d 3 --p 3 --N 9");
    CHECK(res.exit_code == 3);
}

TEST_CASE("approx-monotone: decomposition dump lists per-level cubes") {
    const auto res =
        run_cli("approx-monotone --func disk --d 2 --p 2 --N 2 --dump-decomposition "
                "--mc-samples 2000");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"counts\":[9,28,0]") != std::string::npos);
    CHECK(res.output.find("\"levels\":[{\"scale\":2") != std::string::npos);
    CHECK(res.output.find("\"lo\":[0.25,0.5]") != std::string::npos);
}

TEST_CASE("bounds sweep writes the rate csv") {
    std::filesystem::remove_all("cli_out_sweep");
    const auto res = run_cli(
        "bounds sweep --w-min 16 --w-max 1024 --steps 4 --d 2 --p 1 --out cli_out_sweep");
    CHECK(res.exit_code == 0);
    const std::string csv = slurp("cli_out_sweep/bound_sweep.csv");
    CHECK(csv.find("class,W,L,nu,value,regime") != std::string::npos);
    CHECK(csv.find("monotone_lower") != std::string::npos);
    CHECK(csv.find("barron") != std::string::npos);
    CHECK(csv.find("monotone_upper") != std::string::npos);
    CHECK(csv.find("holder") != std::string::npos);
}

TEST_CASE("dims subcommand over a class file") {
    const std::string cls = R"({"points":["a","b","c"],
        "values":[[1,-1,-1],[1,1,-1],[1,1,1],[-1,-1,-1]]})";
    const auto path = write_temp("cls.json", cls);
    const auto vc = run_cli("dims --in " + path + " --op vc");
    CHECK(vc.exit_code == 0);
    CHECK(vc.output.find("\"vc_dim\":1") != std::string::npos);
    const auto packing = run_cli("dims --in " + path + " --op packing --eps 0.5");
    CHECK(packing.exit_code == 0);
    CHECK(packing.output.find("\"exact\":true") != std::string::npos);
    CHECK(run_cli("dims --in " + path + " --op nonsense").exit_code == 2);
}

TEST_CASE("bounds eval prints a rate result") {
    const auto res =
        run_cli("bounds eval --class monotone_lower --d 2 --p 3 --nu 0 --W 4096 --L 1");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"regime\":\"monotone nu=0") != std::string::npos);
    CHECK(res.output.find("\"alpha\":3") != std::string::npos);
    // out-of-window gamma is a validation failure
    CHECK(run_cli("bounds eval --class holder --d 2 --s 1 --gamma 0.2 --W 100").exit_code == 2);
}

TEST_CASE("bounds solve prints the root or the sentinel") {
    const auto res = run_cli("bounds solve --c 1 --alpha 2 --r 2 --P 4096");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"eps\":") != std::string::npos);
    const auto none = run_cli("bounds solve --c 1e-12 --alpha 2 --r 1 --P 1");
    CHECK(none.exit_code == 0);
    CHECK(none.output.find("null") != std::string::npos);
}

TEST_CASE("experiment: print-config and deterministic outputs") {
    const auto printed = run_cli("experiment --name bound_sweep --print-config --seed 7");
    CHECK(printed.exit_code == 0);
    CHECK(printed.output.find("\"experiment\":\"bound_sweep\"") != std::string::npos);
    CHECK(printed.output.find("\"seed\":7") != std::string::npos);

    std::filesystem::remove_all("cli_out_a");
    std::filesystem::remove_all("cli_out_b");
    const std::string cfg = R"({"experiment":"impossibility","seed":5,
        "demo_n_min":2,"demo_n_max":3,"demo_grid":64,"demo_probes":64})";
    const auto cfg_path = write_temp("demo_cfg.json", cfg);
    CHECK(run_cli("experiment --config " + cfg_path + " --out cli_out_a").exit_code == 0);
    CHECK(run_cli("experiment --config " + cfg_path + " --out cli_out_b").exit_code == 0);
    const std::string a = slurp("cli_out_a/impossibility.csv");
    CHECK(a == slurp("cli_out_b/impossibility.csv"));
    CHECK(a.find("N,l1_error,grid_sup_error") != std::string::npos);
    CHECK(a.rfind("# lpapprox=", 0) == 0);
}

TEST_CASE("experiment: the full suite runs from one tiny config") {
    std::filesystem::remove_all("cli_out_all");
    const std::string cfg = R"({"experiment":"all","seed":2,"n_min":1,"n_max":2,
        "mc_samples":4000,"pack_N":4,"quadrature_points":1024,
        "demo_n_min":2,"demo_n_max":3,"demo_grid":64,"demo_probes":64,
        "sweep_w_steps":3})";
    const auto path = write_temp("all_cfg.json", cfg);
    const auto res = run_cli("experiment --config " + path + " --out cli_out_all");
    CHECK(res.exit_code == 0);
    for (const char* file : {"monotone_scaling.csv", "packing_pairs.csv", "packing_summary.csv",
                             "bound_sweep.csv", "impossibility.csv"})
        CHECK(std::filesystem::exists(std::filesystem::path("cli_out_all") / file));
}

TEST_CASE("packing subcommand certifies the acceptance instance") {
    std::filesystem::remove_all("cli_out_pack");
    const auto res = run_cli("packing --s 1 --d 1 --p 2 --N 8 --out cli_out_pack");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("thresholds met") != std::string::npos);
    const std::string pairs = slurp("cli_out_pack/packing_pairs.csv");
    CHECK(pairs.find("i,j,hamming,distance_formula,distance_quadrature") != std::string::npos);
}

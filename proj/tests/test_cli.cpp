// Drives the installed CLI binary end to end: exit codes, deterministic
// outputs, and agreement between the evaluate subcommand and the library.

#include <doctest.h>

#include <polyconf/polyconf.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "polyconf-cli-XXXXXX").string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        REQUIRE(::mkdtemp(buf.data()) != nullptr);
        path = buf.data();
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string q(const std::string& s) { return "'" + s + "'"; }

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return {};
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunResult run_cli(const TempDir& dir, const std::string& args) {
    std::string out_path = dir.file("__stdout"), err_path = dir.file("__stderr");
    std::string cmd = std::string(POLYCONF_CLI_PATH) + " " + args + " > " + q(out_path) + " 2> " +
                      q(err_path);
    int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    return res;
}

void write_spec(const TempDir& dir, const std::string& name, int n_units,
                const std::string& polymer_name) {
    nlohmann::json unit = {
        {"elements", {"C", "C", "C", "C", "O", "H", "H", "C"}},
        {"bonds", {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}, {2, 6}, {2, 7}}},
        {"key_atoms", {{"atom1", 0}, {"atom2", 1}, {"atom3", 2}, {"atom4", 3}}},
    };
    nlohmann::json j = {{"format", "polyconf-spec"}, {"version", 1},     {"name", polymer_name},
                        {"n_units", n_units},        {"unit", unit}};
    std::ofstream out(dir.file(name));
    out << j.dump(2);
}

} // namespace

TEST_CASE("cli: sample with a fixed seed is byte-identical across runs") {
    TempDir dir;
    write_spec(dir, "a.json", 3, "demo-a");

    std::string base_args = "sample --spec " + q(dir.file("a.json")) + " --seed 7 --timesteps 16" +
                            " --num-samples 2 --out ";
    RunResult r1 = run_cli(dir, base_args + q(dir.file("s1.pcc")));
    REQUIRE(r1.exit_code == 0);
    RunResult r2 = run_cli(dir, base_args + q(dir.file("s2.pcc")));
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp(dir.file("s1.pcc")) == slurp(dir.file("s2.pcc")));
    CHECK(!slurp(dir.file("s1.pcc")).empty());

    // A different seed changes the output.
    RunResult r3 = run_cli(dir, "sample --spec " + q(dir.file("a.json")) +
                                    " --seed 8 --timesteps 16 --num-samples 2 --out " +
                                    q(dir.file("s3.pcc")));
    REQUIRE(r3.exit_code == 0);
    CHECK(slurp(dir.file("s1.pcc")) != slurp(dir.file("s3.pcc")));

    // --parallel does not change the bytes.
    RunResult r4 = run_cli(dir, base_args + q(dir.file("s4.pcc")) + " --parallel 2");
    REQUIRE(r4.exit_code == 0);
    CHECK(slurp(dir.file("s1.pcc")) == slurp(dir.file("s4.pcc")));
}

TEST_CASE("cli: roundtrip prints a residual and exits 0") {
    TempDir dir;
    write_spec(dir, "a.json", 3, "demo-a");
    REQUIRE(run_cli(dir, "sample --spec " + q(dir.file("a.json")) +
                             " --seed 1 --timesteps 8 --out " + q(dir.file("c.pcc")))
                .exit_code == 0);
    RunResult rt = run_cli(dir, "roundtrip --spec " + q(dir.file("a.json")) + " --in " +
                                    q(dir.file("c.pcc")));
    CHECK(rt.exit_code == 0);
    CHECK(rt.out.find("residual") != std::string::npos);

    // Parse the printed max residual and hold it to the contract.
    std::size_t pos = rt.out.find("max residual");
    REQUIRE(pos != std::string::npos);
    double value = std::strtod(rt.out.c_str() + pos + std::strlen("max residual"), nullptr);
    CHECK(value < 1e-9);
}

TEST_CASE("cli: decompose/assemble round trip and tiling") {
    TempDir dir;
    write_spec(dir, "a.json", 3, "demo-a");
    write_spec(dir, "a6.json", 6, "demo-a6");

    REQUIRE(run_cli(dir, "sample --spec " + q(dir.file("a.json")) +
                             " --seed 2 --timesteps 8 --out " + q(dir.file("c.pcc")))
                .exit_code == 0);
    REQUIRE(run_cli(dir, "decompose --spec " + q(dir.file("a.json")) + " --in " +
                             q(dir.file("c.pcc")) + " --out " + q(dir.file("d.json")))
                .exit_code == 0);
    REQUIRE(run_cli(dir, "assemble --spec " + q(dir.file("a.json")) + " --in " +
                             q(dir.file("d.json")) + " --out " + q(dir.file("c2.pcc")))
                .exit_code == 0);
    RunResult rt = run_cli(dir, "roundtrip --spec " + q(dir.file("a.json")) + " --in " +
                                    q(dir.file("c2.pcc")));
    CHECK(rt.exit_code == 0);

    // Doubling through --tile: the base spec drives it, and the output file
    // binds to the doubled topology (equal to a spec with twice the units).
    RunResult tiled = run_cli(dir, "assemble --spec " + q(dir.file("a.json")) + " --in " +
                                       q(dir.file("d.json")) + " --tile 2 --out " +
                                       q(dir.file("c6.pcc")));
    CHECK(tiled.exit_code == 0);
    RunResult rt6 = run_cli(dir, "roundtrip --spec " + q(dir.file("a6.json")) + " --in " +
                                     q(dir.file("c6.pcc")));
    CHECK(rt6.exit_code == 0);
}

TEST_CASE("cli: evaluate agrees with the library and rejects hash mismatches") {
    TempDir dir;
    write_spec(dir, "a.json", 3, "demo-a");
    write_spec(dir, "b.json", 4, "demo-b");

    REQUIRE(run_cli(dir, "sample --spec " + q(dir.file("a.json")) +
                             " --seed 3 --timesteps 8 --num-samples 2 --out " +
                             q(dir.file("gen.pcc")))
                .exit_code == 0);
    REQUIRE(run_cli(dir, "sample --spec " + q(dir.file("a.json")) +
                             " --seed 4 --timesteps 8 --num-samples 2 --out " +
                             q(dir.file("ref.pcc")))
                .exit_code == 0);

    RunResult ev = run_cli(dir, "evaluate --spec " + q(dir.file("a.json")) + " --in " +
                                    q(dir.file("gen.pcc")) + " --ref " + q(dir.file("ref.pcc")) +
                                    " --coverage --report " + q(dir.file("report.json")));
    REQUIRE(ev.exit_code == 0);
    CHECK(ev.out.find("S-MAT-R") != std::string::npos);

    // Library-level evaluation of the same files must agree exactly with the
    // numbers the CLI wrote (same 12-digit rounding).
    pcf_graph* graph = nullptr;
    REQUIRE(pcf_graph_load(dir.file("a.json").c_str(), &graph) == PCF_OK);
    pcf_conformations* gen = nullptr;
    pcf_conformations* ref = nullptr;
    REQUIRE(pcf_conformations_load(dir.file("gen.pcc").c_str(), graph, &gen) == PCF_OK);
    REQUIRE(pcf_conformations_load(dir.file("ref.pcc").c_str(), graph, &ref) == PCF_OK);
    pcf_eval_options* opts = pcf_eval_options_new();
    pcf_eval_options_set_coverage(opts, 1);
    pcf_report* report = nullptr;
    REQUIRE(pcf_report_new(opts, &report) == PCF_OK);
    REQUIRE(pcf_report_add_pair(report, "demo-a", graph, gen, ref) == PCF_OK);

    nlohmann::json cli_report = nlohmann::json::parse(slurp(dir.file("report.json")));
    for (const char* metric : {"s_mat_r", "s_mat_p", "e_mat_r", "e_mat_p", "s_cov_r", "s_cov_p"}) {
        double lib_value = -1.0;
        REQUIRE(pcf_report_metric(report, 0, metric, &lib_value) == PCF_OK);
        double cli_value = cli_report["polymers"][0][metric].get<double>();
        char rounded[64];
        std::snprintf(rounded, sizeof(rounded), "%.12g", lib_value);
        CHECK(cli_value == std::strtod(rounded, nullptr));
    }
    pcf_report_free(report);
    pcf_eval_options_free(opts);
    pcf_conformations_free(gen);
    pcf_conformations_free(ref);
    pcf_graph_free(graph);

    // Mismatched spec: validation failure, exit 1, diagnostic on stderr.
    RunResult bad = run_cli(dir, "evaluate --spec " + q(dir.file("b.json")) + " --in " +
                                     q(dir.file("gen.pcc")) + " --ref " + q(dir.file("ref.pcc")));
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("spec hash") != std::string::npos);

#ifdef POLYCONF_SUM_ENERGY_HELPER
    // External energy command: one real per conformation file.
    RunResult ext = run_cli(dir, "evaluate --spec " + q(dir.file("a.json")) + " --in " +
                                     q(dir.file("gen.pcc")) + " --ref " + q(dir.file("ref.pcc")) +
                                     " --energy external:" + std::string(POLYCONF_SUM_ENERGY_HELPER) +
                                     " --report " + q(dir.file("ext.json")));
    CHECK(ext.exit_code == 0);
    nlohmann::json ext_report = nlohmann::json::parse(slurp(dir.file("ext.json")));
    CHECK(ext_report["energy_oracle"].get<std::string>().rfind("external:", 0) == 0);
    // The helper's energies differ from the toy force field.
    CHECK(ext_report["polymers"][0]["e_mat_r"] != cli_report["polymers"][0]["e_mat_r"]);
#endif
}

TEST_CASE("cli: evaluate over a pairs manifest aggregates and parallelizes deterministically") {
    TempDir dir;
    write_spec(dir, "a.json", 3, "poly-a");
    write_spec(dir, "b.json", 4, "poly-b");
    for (const char* name : {"a", "b"}) {
        std::string spec = dir.file(std::string(name) + ".json");
        REQUIRE(run_cli(dir, "sample --spec " + q(spec) + " --seed 5 --timesteps 8 --out " +
                                 q(dir.file(std::string(name) + "-gen.pcc")))
                    .exit_code == 0);
        REQUIRE(run_cli(dir, "sample --spec " + q(spec) + " --seed 6 --timesteps 8 --out " +
                                 q(dir.file(std::string(name) + "-ref.pcc")))
                    .exit_code == 0);
    }
    nlohmann::json manifest = {{"pairs", nlohmann::json::array()}};
    for (const char* name : {"a", "b"})
        manifest["pairs"].push_back({{"name", std::string("poly-") + name},
                                     {"spec", dir.file(std::string(name) + ".json")},
                                     {"gen", dir.file(std::string(name) + "-gen.pcc")},
                                     {"ref", dir.file(std::string(name) + "-ref.pcc")}});
    {
        std::ofstream out(dir.file("pairs.json"));
        out << manifest.dump(2);
    }

    RunResult serial = run_cli(dir, "evaluate --pairs " + q(dir.file("pairs.json")) + " --report " +
                                        q(dir.file("r1.json")));
    REQUIRE(serial.exit_code == 0);
    RunResult parallel = run_cli(dir, "evaluate --pairs " + q(dir.file("pairs.json")) +
                                          " --parallel 2 --report " + q(dir.file("r2.json")));
    REQUIRE(parallel.exit_code == 0);
    CHECK(slurp(dir.file("r1.json")) == slurp(dir.file("r2.json")));

    nlohmann::json r = nlohmann::json::parse(slurp(dir.file("r1.json")));
    REQUIRE(r["polymers"].size() == 2);
    CHECK(r["polymers"][0]["name"] == "poly-a");
    CHECK(r["polymers"][1]["name"] == "poly-b");
}

TEST_CASE("cli: schedule inspection writes the plan") {
    TempDir dir;
    RunResult r = run_cli(dir, "schedule --out " + q(dir.file("sched.json")) +
                                   " --timesteps 64 --schedule linear --seed 42 --n-units 8"
                                   " --k-steps 3");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(dir.file("sched.json")));
    CHECK(j["kind"] == "linear");
    CHECK(j["alpha_bar"].size() == 65);
    CHECK(j["mar"]["subsets"].size() == 3);
}

TEST_CASE("cli: bad invocations exit with code 1") {
    TempDir dir;
    CHECK(run_cli(dir, "frobnicate").exit_code == 1);
    CHECK(run_cli(dir, "sample").exit_code == 1); // missing required flags
    CHECK(run_cli(dir, "roundtrip --spec " + q(dir.file("missing.json")) + " --in " +
                           q(dir.file("missing.pcc")))
              .exit_code == 1);
}

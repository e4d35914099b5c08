// polyconf command-line tool. Everything goes through the public C API of
// libpolyconf; no core headers are used here.

#include <polyconf/polyconf.h>

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace {

struct GraphDeleter {
    void operator()(pcf_graph* g) const { pcf_graph_free(g); }
};
struct ConfsDeleter {
    void operator()(pcf_conformations* c) const { pcf_conformations_free(c); }
};
struct DecDeleter {
    void operator()(pcf_decomposition* d) const { pcf_decomposition_free(d); }
};
struct SampleOptsDeleter {
    void operator()(pcf_sample_options* o) const { pcf_sample_options_free(o); }
};
struct EvalOptsDeleter {
    void operator()(pcf_eval_options* o) const { pcf_eval_options_free(o); }
};
struct ReportDeleter {
    void operator()(pcf_report* r) const { pcf_report_free(r); }
};

using GraphPtr = std::unique_ptr<pcf_graph, GraphDeleter>;
using ConfsPtr = std::unique_ptr<pcf_conformations, ConfsDeleter>;
using DecPtr = std::unique_ptr<pcf_decomposition, DecDeleter>;
using ReportPtr = std::unique_ptr<pcf_report, ReportDeleter>;

int exit_code_of(pcf_status st) { return st == PCF_ERR_INTERNAL ? 2 : 1; }

int fail(pcf_status st) {
    std::cerr << "error: " << pcf_last_error() << "\n";
    return exit_code_of(st);
}

#define CHECK(call)                                                                                \
    do {                                                                                           \
        pcf_status st_ = (call);                                                                   \
        if (st_ != PCF_OK)                                                                         \
            return fail(st_);                                                                      \
    } while (0)

GraphPtr load_graph(const std::string& path, pcf_status* st) {
    pcf_graph* g = nullptr;
    *st = pcf_graph_load(path.c_str(), &g);
    return GraphPtr(g);
}

ConfsPtr load_confs(const std::string& path, const pcf_graph* graph, pcf_status* st) {
    pcf_conformations* c = nullptr;
    *st = pcf_conformations_load(path.c_str(), graph, &c);
    return ConfsPtr(c);
}

struct CommonFlags {
    std::string spec;
    std::string in;
    std::string out;
    std::uint64_t seed = 0;
    int timesteps = 1000;
    std::string schedule = "cosine";
    int k_steps = 0; // 0 = n_units
    double delta = 25.0;
    std::string energy = "toy";
    std::string report;
    int parallel = 1;
};

int run_decompose(const CommonFlags& f) {
    pcf_status st;
    GraphPtr graph = load_graph(f.spec, &st);
    if (!graph)
        return fail(st);
    ConfsPtr confs = load_confs(f.in, graph.get(), &st);
    if (!confs)
        return fail(st);
    pcf_decomposition* dec = nullptr;
    CHECK(pcf_decompose(graph.get(), confs.get(), &dec));
    DecPtr dec_ptr(dec);
    CHECK(pcf_decomposition_save(dec, graph.get(), f.out.c_str()));
    std::cout << "decomposed " << pcf_conformations_count(confs.get()) << " conformation(s) into "
              << pcf_graph_n_units(graph.get()) << " units each -> " << f.out << "\n";
    return 0;
}

int run_assemble(const CommonFlags& f, int tile) {
    pcf_status st;
    GraphPtr graph = load_graph(f.spec, &st);
    if (!graph)
        return fail(st);
    pcf_decomposition* dec = nullptr;
    CHECK(pcf_decomposition_load(f.in.c_str(), graph.get(), &dec));
    DecPtr dec_ptr(dec);

    // --tile repeats the unit/rotation sequence over a proportionally longer
    // chain derived from the same spec.
    GraphPtr target;
    if (tile > 1) {
        pcf_graph* tiled = nullptr;
        CHECK(pcf_graph_tile(graph.get(), tile, &tiled));
        target.reset(tiled);
    }
    const pcf_graph* out_graph = target ? target.get() : graph.get();

    pcf_conformations* confs = nullptr;
    CHECK(pcf_assemble(out_graph, dec, tile, &confs));
    ConfsPtr confs_ptr(confs);
    CHECK(pcf_conformations_save(confs, out_graph, f.out.c_str()));
    std::cout << "assembled " << pcf_conformations_count(confs) << " conformation(s) ("
              << pcf_graph_n_units(out_graph) << " units) -> " << f.out << "\n";
    return 0;
}

int run_roundtrip(const CommonFlags& f) {
    pcf_status st;
    GraphPtr graph = load_graph(f.spec, &st);
    if (!graph)
        return fail(st);
    ConfsPtr confs = load_confs(f.in, graph.get(), &st);
    if (!confs)
        return fail(st);
    int n = pcf_conformations_count(confs.get());
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double residual = 0.0;
        CHECK(pcf_roundtrip_residual(graph.get(), confs.get(), i, &residual));
        std::printf("conformation %d: residual %.12g A\n", i + 1, residual);
        worst = residual > worst ? residual : worst;
    }
    std::printf("max residual %.12g A over %d conformation(s)\n", worst, n);
    return 0;
}

int run_sample(const CommonFlags& f, int num_samples, const std::string& torsion_cmd,
               const std::string& rotation_cmd, const std::string& encoder_cmd) {
    pcf_status st;
    GraphPtr graph = load_graph(f.spec, &st);
    if (!graph)
        return fail(st);

    std::unique_ptr<pcf_sample_options, SampleOptsDeleter> opts(pcf_sample_options_new());
    pcf_sample_options_set_seed(opts.get(), f.seed);
    CHECK(pcf_sample_options_set_timesteps(opts.get(), f.timesteps));
    CHECK(pcf_sample_options_set_schedule(opts.get(), f.schedule.c_str()));
    CHECK(pcf_sample_options_set_k_steps(opts.get(), f.k_steps));
    CHECK(pcf_sample_options_set_num_samples(opts.get(), num_samples));
    CHECK(pcf_sample_options_set_threads(opts.get(), f.parallel));
    if (!torsion_cmd.empty())
        CHECK(pcf_sample_options_set_torsion_command(opts.get(), torsion_cmd.c_str()));
    if (!rotation_cmd.empty())
        CHECK(pcf_sample_options_set_rotation_command(opts.get(), rotation_cmd.c_str()));
    if (!encoder_cmd.empty())
        CHECK(pcf_sample_options_set_encoder_command(opts.get(), encoder_cmd.c_str()));

    pcf_conformations* confs = nullptr;
    CHECK(pcf_sample(graph.get(), opts.get(), &confs));
    ConfsPtr confs_ptr(confs);
    CHECK(pcf_conformations_save(confs, graph.get(), f.out.c_str()));
    std::cout << "sampled " << num_samples << " conformation(s) (seed " << f.seed << ") -> "
              << f.out << "\n";
    return 0;
}

struct PairEntry {
    std::string name;
    std::string spec;
    std::string gen;
    std::string ref;
};

int evaluate_pair_into(pcf_report* report, const PairEntry& entry) {
    pcf_status st;
    GraphPtr graph = load_graph(entry.spec, &st);
    if (!graph)
        return fail(st);
    ConfsPtr gen_confs = load_confs(entry.gen, graph.get(), &st);
    if (!gen_confs)
        return fail(st);
    ConfsPtr ref_confs = load_confs(entry.ref, graph.get(), &st);
    if (!ref_confs)
        return fail(st);
    CHECK(pcf_report_add_pair(report, entry.name.c_str(), graph.get(), gen_confs.get(),
                              ref_confs.get()));
    return 0;
}

ReportPtr make_report(const CommonFlags& f, bool coverage, int threads, pcf_status* st) {
    std::unique_ptr<pcf_eval_options, EvalOptsDeleter> opts(pcf_eval_options_new());
    *st = pcf_eval_options_set_delta(opts.get(), f.delta);
    if (*st != PCF_OK)
        return nullptr;
    *st = pcf_eval_options_set_energy(opts.get(), f.energy.c_str());
    if (*st != PCF_OK)
        return nullptr;
    pcf_eval_options_set_coverage(opts.get(), coverage ? 1 : 0);
    *st = pcf_eval_options_set_threads(opts.get(), threads);
    if (*st != PCF_OK)
        return nullptr;
    pcf_eval_options_set_seed(opts.get(), f.seed);
    pcf_report* report = nullptr;
    *st = pcf_report_new(opts.get(), &report);
    return ReportPtr(report);
}

int run_evaluate(const CommonFlags& f, const std::string& ref_path, const std::string& pairs_path,
                 bool coverage) {
    std::vector<PairEntry> entries;
    if (!pairs_path.empty()) {
        std::ifstream in(pairs_path);
        if (!in) {
            std::cerr << "error: cannot open pairs manifest '" << pairs_path << "'\n";
            return 1;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
            for (const auto& row : j.at("pairs")) {
                PairEntry e;
                e.name = row.value("name", "");
                e.spec = row.at("spec").get<std::string>();
                e.gen = row.at("gen").get<std::string>();
                e.ref = row.at("ref").get<std::string>();
                entries.push_back(e);
            }
        } catch (const std::exception& ex) {
            std::cerr << "error: " << pairs_path << ": " << ex.what() << "\n";
            return 1;
        }
        if (entries.empty()) {
            std::cerr << "error: " << pairs_path << ": manifest lists no pairs\n";
            return 1;
        }
    } else {
        if (f.in.empty() || ref_path.empty()) {
            std::cerr << "error: evaluate needs --in and --ref (or --pairs)\n";
            return 1;
        }
        entries.push_back({"", f.spec, f.in, ref_path});
    }

    pcf_status st;
    // Parallelism goes over polymers when there are several, otherwise into
    // the pairwise matrix of the single polymer.
    int inner_threads = entries.size() > 1 ? 1 : f.parallel;
    ReportPtr report = make_report(f, coverage, inner_threads, &st);
    if (!report)
        return fail(st);

    if (entries.size() == 1) {
        int rc = evaluate_pair_into(report.get(), entries[0]);
        if (rc != 0)
            return rc;
    } else {
        std::vector<ReportPtr> partial(entries.size());
        std::vector<int> rcs(entries.size(), 0);
        int workers = std::min<int>(f.parallel, static_cast<int>(entries.size()));
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= entries.size())
                        return;
                    pcf_status pst;
                    partial[i] = make_report(f, coverage, 1, &pst);
                    rcs[i] = partial[i] ? evaluate_pair_into(partial[i].get(), entries[i])
                                        : exit_code_of(pst);
                }
            });
        for (auto& t : pool)
            t.join();
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (rcs[i] != 0)
                return rcs[i];
            CHECK(pcf_report_merge(report.get(), partial[i].get()));
        }
    }

    std::cout << pcf_report_table(report.get());
    if (!f.report.empty()) {
        CHECK(pcf_report_save(report.get(), f.report.c_str()));
        std::cout << "report -> " << f.report << "\n";
    }
    return 0;
}

int run_schedule(const CommonFlags& f, int n_units) {
    CHECK(pcf_schedule_dump(f.schedule.c_str(), f.timesteps, f.seed, n_units, f.k_steps,
                            f.out.c_str()));
    std::cout << "schedule (" << f.schedule << ", T=" << f.timesteps << ") -> " << f.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyconf: frame-based polymer conformation engine"};
    app.set_version_flag("--version", std::string(pcf_version()));
    app.require_subcommand(1);

    CommonFlags f;
    int tile = 1;
    int num_samples = 1;
    int sched_n_units = 0;
    std::string ref_path, pairs_path, torsion_cmd, rotation_cmd, encoder_cmd;
    bool coverage = false;

    auto add_common = [&](CLI::App* sub, bool needs_spec) {
        if (needs_spec)
            sub->add_option("--spec", f.spec, "polymer spec JSON")->required();
        sub->add_option("--seed", f.seed, "random seed (default 0)");
        sub->add_option("--parallel", f.parallel, "worker threads over polymers")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* dec = app.add_subcommand("decompose", "split conformations into units + frames");
    add_common(dec, true);
    dec->add_option("--in", f.in, "conformation file")->required();
    dec->add_option("--out", f.out, "decomposition JSON output")->required();

    CLI::App* asmb = app.add_subcommand("assemble", "rebuild conformations from units + frames");
    add_common(asmb, true);
    asmb->add_option("--in", f.in, "decomposition JSON")->required();
    asmb->add_option("--out", f.out, "conformation file output")->required();
    asmb->add_option("--tile", tile, "repeat the unit/rotation sequence this many times")
        ->check(CLI::PositiveNumber);

    CLI::App* rt = app.add_subcommand("roundtrip", "decompose+assemble residual per conformation");
    add_common(rt, true);
    rt->add_option("--in", f.in, "conformation file")->required();

    CLI::App* smp = app.add_subcommand("sample", "generate conformations");
    add_common(smp, true);
    smp->add_option("--out", f.out, "conformation file output")->required();
    smp->add_option("--timesteps", f.timesteps, "diffusion steps (default 1000)")
        ->check(CLI::PositiveNumber);
    smp->add_option("--schedule", f.schedule, "cosine|linear (default cosine)");
    smp->add_option("--k-steps", f.k_steps, "autoregressive steps (default: one per unit)");
    smp->add_option("--num-samples", num_samples, "conformations to generate (default 1)")
        ->check(CLI::PositiveNumber);
    smp->add_option("--torsion-denoiser", torsion_cmd,
                    "external torsion denoiser command (default: builtin prior)");
    smp->add_option("--rotation-denoiser", rotation_cmd,
                    "external rotation denoiser command (default: builtin prior)");
    smp->add_option("--encoder", encoder_cmd,
                    "external unit encoder command (default: builtin featurizer)");

    CLI::App* ev = app.add_subcommand("evaluate", "structure/energy matching metrics");
    ev->add_option("--spec", f.spec, "polymer spec JSON");
    ev->add_option("--seed", f.seed, "seed recorded in the report");
    ev->add_option("--parallel", f.parallel, "worker threads")->check(CLI::PositiveNumber);
    ev->add_option("--in", f.in, "generated conformation file");
    ev->add_option("--ref", ref_path, "reference conformation file");
    ev->add_option("--pairs", pairs_path, "JSON manifest of {name, spec, gen, ref} pairs");
    ev->add_option("--delta", f.delta, "coverage threshold in Angstrom (default 25)");
    ev->add_option("--energy", f.energy, "toy | external:<command> (default toy)");
    ev->add_flag("--coverage", coverage, "include S-COV in the report");
    ev->add_option("--report", f.report, "write the report JSON here");

    CLI::App* sch = app.add_subcommand("schedule", "inspect diffusion/MAR schedules");
    sch->add_option("--out", f.out, "schedule JSON output")->required();
    sch->add_option("--timesteps", f.timesteps, "diffusion steps (default 1000)")
        ->check(CLI::PositiveNumber);
    sch->add_option("--schedule", f.schedule, "cosine|linear (default cosine)");
    sch->add_option("--seed", f.seed, "seed for the MAR plan");
    sch->add_option("--n-units", sched_n_units, "include a MAR plan for this many units");
    sch->add_option("--k-steps", f.k_steps, "autoregressive steps for the MAR plan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (dec->parsed())
            return run_decompose(f);
        if (asmb->parsed())
            return run_assemble(f, tile);
        if (rt->parsed())
            return run_roundtrip(f);
        if (smp->parsed())
            return run_sample(f, num_samples, torsion_cmd, rotation_cmd, encoder_cmd);
        if (ev->parsed())
            return run_evaluate(f, ref_path, pairs_path, coverage);
        if (sch->parsed())
            return run_schedule(f, sched_n_units);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

#include "polyconf/polyconf.h"

#include <cstring>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <string>
#include <vector>

#include "polyconf/assembly/assembly.hpp"
#include "polyconf/error.hpp"
#include "polyconf/gen/pipeline.hpp"
#include "polyconf/io/conformation_file.hpp"
#include "polyconf/io/decomposition_file.hpp"
#include "polyconf/io/external_oracles.hpp"
#include "polyconf/io/report_file.hpp"
#include "polyconf/io/spec_file.hpp"
#include "polyconf/io/text_format.hpp"
#include "polyconf/metrics/metrics.hpp"
#include "polyconf/parallel.hpp"
#include "polyconf/version.hpp"

using namespace polyconf;

namespace {

thread_local std::string g_last_error;

pcf_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::Internal: return PCF_ERR_INTERNAL;
    case ErrorCode::InvalidArgument: return PCF_ERR_INVALID_ARGUMENT;
    case ErrorCode::DegenerateFrame: return PCF_ERR_DEGENERATE_FRAME;
    case ErrorCode::SizeMismatch: return PCF_ERR_SIZE_MISMATCH;
    case ErrorCode::NearPiAmbiguity: return PCF_ERR_NEAR_PI;
    case ErrorCode::InvalidUnitSpec: return PCF_ERR_INVALID_UNIT_SPEC;
    case ErrorCode::JunctionViolation: return PCF_ERR_JUNCTION_VIOLATION;
    case ErrorCode::NotRotatable: return PCF_ERR_NOT_ROTATABLE;
    case ErrorCode::NotStandardized: return PCF_ERR_NOT_STANDARDIZED;
    case ErrorCode::InvalidTimesteps: return PCF_ERR_INVALID_TIMESTEPS;
    case ErrorCode::InvalidK: return PCF_ERR_INVALID_K;
    case ErrorCode::IndexOutOfRange: return PCF_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::EmptyMatrix: return PCF_ERR_EMPTY_MATRIX;
    case ErrorCode::GraphMismatch: return PCF_ERR_GRAPH_MISMATCH;
    case ErrorCode::OracleFailure: return PCF_ERR_ORACLE_FAILURE;
    case ErrorCode::ProjectionFailure: return PCF_ERR_PROJECTION_FAILURE;
    case ErrorCode::ParseError: return PCF_ERR_PARSE;
    case ErrorCode::HashMismatch: return PCF_ERR_HASH_MISMATCH;
    case ErrorCode::MalformedRecord: return PCF_ERR_MALFORMED_RECORD;
    case ErrorCode::Io: return PCF_ERR_IO;
    }
    return PCF_ERR_INTERNAL;
}

template <typename Fn>
pcf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return PCF_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PCF_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return PCF_ERR_INTERNAL;
    }
}

pcf_status invalid(const char* msg) {
    g_last_error = msg;
    return PCF_ERR_INVALID_ARGUMENT;
}

std::uint64_t sample_seed(std::uint64_t base, int sample_index) {
    return Rng::splitmix64(base ^ Rng::splitmix64(0x73616d706cULL + static_cast<std::uint64_t>(sample_index)));
}

} // namespace

struct pcf_graph {
    io::PolymerSpec spec;
    repr::PolymerGraph graph;
};

struct pcf_conformations {
    std::uint64_t spec_hash = 0;
    std::vector<repr::PolymerConformation> list;
};

struct pcf_decomposition {
    std::uint64_t spec_hash = 0;
    int n_units = 0;
    std::vector<repr::DecompositionResult> entries;
};

struct pcf_sample_options {
    gen::GenerationConfig config;
    int num_samples = 1;
    int threads = 1;
    std::string torsion_command;  // empty = builtin prior
    std::string rotation_command; // empty = builtin prior
    std::string encoder_command;  // empty = builtin toy featurizer
};

struct pcf_eval_options {
    metrics::MetricOptions metric_opts;
    std::string energy = "toy";
    bool include_coverage = false;
    std::uint64_t seed = 0;
};

struct pcf_report {
    pcf_eval_options opts;
    metrics::MetricReport report;
    std::string table_cache;
};

extern "C" {

const char* pcf_version(void) { return kVersion; }

const char* pcf_last_error(void) { return g_last_error.c_str(); }

pcf_status pcf_graph_load(const char* path, pcf_graph** out) {
    if (!path || !out)
        return invalid("pcf_graph_load: null argument");
    return guarded([&] {
        auto handle = std::make_unique<pcf_graph>();
        handle->spec = io::parse_polymer_spec(path);
        handle->graph = handle->spec.build_graph();
        *out = handle.release();
    });
}

void pcf_graph_free(pcf_graph* graph) { delete graph; }

int pcf_graph_n_units(const pcf_graph* graph) { return graph ? graph->graph.n_units() : 0; }

int pcf_graph_total_atoms(const pcf_graph* graph) { return graph ? graph->graph.total_atoms() : 0; }

pcf_status pcf_graph_spec_hash(const pcf_graph* graph, char* buf, size_t buf_len) {
    if (!graph || !buf || buf_len < 17)
        return invalid("pcf_graph_spec_hash: need a buffer of at least 17 bytes");
    return guarded([&] {
        std::string hex = graph->graph.spec_hash_hex();
        std::memcpy(buf, hex.c_str(), hex.size() + 1);
    });
}

pcf_status pcf_graph_tile(const pcf_graph* graph, int tile, pcf_graph** out) {
    if (!graph || !out)
        return invalid("pcf_graph_tile: null argument");
    if (tile < 1)
        return invalid("pcf_graph_tile: tile must be >= 1");
    return guarded([&] {
        if (graph->spec.head || graph->spec.tail)
            throw InvalidArgumentError("tiling a spec with head/tail overrides is ambiguous");
        auto handle = std::make_unique<pcf_graph>();
        handle->spec = graph->spec;
        handle->spec.n_units *= tile;
        handle->graph = handle->spec.build_graph();
        *out = handle.release();
    });
}

pcf_status pcf_conformations_load(const char* path, const pcf_graph* graph,
                                  pcf_conformations** out) {
    if (!path || !graph || !out)
        return invalid("pcf_conformations_load: null argument");
    return guarded([&] {
        auto handle = std::make_unique<pcf_conformations>();
        handle->list = io::read_conformations(path, graph->graph);
        handle->spec_hash = graph->graph.spec_hash();
        *out = handle.release();
    });
}

pcf_status pcf_conformations_save(const pcf_conformations* confs, const pcf_graph* graph,
                                  const char* path) {
    if (!confs || !graph || !path)
        return invalid("pcf_conformations_save: null argument");
    return guarded([&] {
        if (confs->spec_hash != graph->graph.spec_hash())
            throw GraphMismatchError("conformations belong to a different polymer graph");
        io::write_conformations(confs->list, graph->graph, path);
    });
}

int pcf_conformations_count(const pcf_conformations* confs) {
    return confs ? static_cast<int>(confs->list.size()) : 0;
}

pcf_status pcf_conformations_coords(const pcf_conformations* confs, int index, double* xyz,
                                    size_t len) {
    if (!confs || !xyz)
        return invalid("pcf_conformations_coords: null argument");
    return guarded([&] {
        if (index < 0 || index >= static_cast<int>(confs->list.size()))
            throw IndexOutOfRangeError("conformation index out of range");
        const auto& coords = confs->list[static_cast<std::size_t>(index)].coords;
        if (len < 3 * coords.size())
            throw InvalidArgumentError("coordinate buffer is too small");
        for (std::size_t i = 0; i < coords.size(); ++i) {
            xyz[3 * i] = coords[i].x;
            xyz[3 * i + 1] = coords[i].y;
            xyz[3 * i + 2] = coords[i].z;
        }
    });
}

void pcf_conformations_free(pcf_conformations* confs) { delete confs; }

pcf_status pcf_decompose(const pcf_graph* graph, const pcf_conformations* confs,
                         pcf_decomposition** out) {
    if (!graph || !confs || !out)
        return invalid("pcf_decompose: null argument");
    return guarded([&] {
        if (confs->spec_hash != graph->graph.spec_hash())
            throw GraphMismatchError("conformations belong to a different polymer graph");
        auto handle = std::make_unique<pcf_decomposition>();
        handle->spec_hash = graph->graph.spec_hash();
        handle->n_units = graph->graph.n_units();
        handle->entries.reserve(confs->list.size());
        for (const repr::PolymerConformation& conf : confs->list)
            handle->entries.push_back(repr::decompose(conf, graph->graph));
        *out = handle.release();
    });
}

pcf_status pcf_decomposition_save(const pcf_decomposition* dec, const pcf_graph* graph,
                                  const char* path) {
    if (!dec || !graph || !path)
        return invalid("pcf_decomposition_save: null argument");
    return guarded([&] {
        if (dec->spec_hash != graph->graph.spec_hash())
            throw GraphMismatchError("decomposition belongs to a different polymer graph");
        io::write_decompositions(dec->entries, graph->graph, path);
    });
}

pcf_status pcf_decomposition_load(const char* path, const pcf_graph* graph,
                                  pcf_decomposition** out) {
    if (!path || !graph || !out)
        return invalid("pcf_decomposition_load: null argument");
    return guarded([&] {
        auto handle = std::make_unique<pcf_decomposition>();
        handle->entries = io::read_decompositions(path, graph->graph);
        handle->spec_hash = graph->graph.spec_hash();
        handle->n_units = graph->graph.n_units();
        *out = handle.release();
    });
}

int pcf_decomposition_count(const pcf_decomposition* dec) {
    return dec ? static_cast<int>(dec->entries.size()) : 0;
}

void pcf_decomposition_free(pcf_decomposition* dec) { delete dec; }

pcf_status pcf_assemble(const pcf_graph* graph, const pcf_decomposition* dec, int tile,
                        pcf_conformations** out) {
    if (!graph || !dec || !out)
        return invalid("pcf_assemble: null argument");
    if (tile < 1)
        return invalid("pcf_assemble: tile must be >= 1");
    return guarded([&] {
        if (tile == 1 && dec->spec_hash != graph->graph.spec_hash())
            throw GraphMismatchError("decomposition belongs to a different polymer graph");
        if (graph->graph.n_units() != dec->n_units * tile)
            throw SizeMismatchError("graph unit count does not equal tile * decomposition units");
        auto handle = std::make_unique<pcf_conformations>();
        handle->spec_hash = graph->graph.spec_hash();
        for (const repr::DecompositionResult& entry : dec->entries) {
            assembly::AssemblyInput input;
            input.graph = &graph->graph;
            for (int t = 0; t < tile; ++t)
                for (int i = 0; i < dec->n_units; ++i) {
                    repr::UnitConformation u = entry.units[static_cast<std::size_t>(i)];
                    u.unit_index = t * dec->n_units + i;
                    input.std_units.push_back(std::move(u));
                    input.rotations.push_back(
                        entry.frames[static_cast<std::size_t>(i)].rotation);
                }
            handle->list.push_back(assembly::assemble(input));
        }
        *out = handle.release();
    });
}

pcf_status pcf_roundtrip_residual(const pcf_graph* graph, const pcf_conformations* confs,
                                  int index, double* out_residual) {
    if (!graph || !confs || !out_residual)
        return invalid("pcf_roundtrip_residual: null argument");
    return guarded([&] {
        if (confs->spec_hash != graph->graph.spec_hash())
            throw GraphMismatchError("conformations belong to a different polymer graph");
        if (index < 0 || index >= static_cast<int>(confs->list.size()))
            throw IndexOutOfRangeError("conformation index out of range");
        *out_residual = assembly::roundtrip_residual(confs->list[static_cast<std::size_t>(index)],
                                                     graph->graph);
    });
}

pcf_sample_options* pcf_sample_options_new(void) { return new pcf_sample_options(); }

void pcf_sample_options_free(pcf_sample_options* opts) { delete opts; }

void pcf_sample_options_set_seed(pcf_sample_options* opts, uint64_t seed) {
    if (opts)
        opts->config.seed = seed;
}

pcf_status pcf_sample_options_set_timesteps(pcf_sample_options* opts, int timesteps) {
    if (!opts)
        return invalid("null options");
    if (timesteps < 1)
        return invalid("timesteps must be >= 1");
    opts->config.timesteps = timesteps;
    return PCF_OK;
}

pcf_status pcf_sample_options_set_schedule(pcf_sample_options* opts, const char* kind) {
    if (!opts || !kind)
        return invalid("null options or kind");
    return guarded([&] { opts->config.schedule = gen::schedule_kind_from_string(kind); });
}

pcf_status pcf_sample_options_set_k_steps(pcf_sample_options* opts, int k_steps) {
    if (!opts)
        return invalid("null options");
    if (k_steps < 0)
        return invalid("k_steps must be >= 0");
    opts->config.k_steps = k_steps;
    return PCF_OK;
}

pcf_status pcf_sample_options_set_num_samples(pcf_sample_options* opts, int num_samples) {
    if (!opts)
        return invalid("null options");
    if (num_samples < 1)
        return invalid("num_samples must be >= 1");
    opts->num_samples = num_samples;
    return PCF_OK;
}

pcf_status pcf_sample_options_set_threads(pcf_sample_options* opts, int threads) {
    if (!opts)
        return invalid("null options");
    if (threads < 1)
        return invalid("threads must be >= 1");
    opts->threads = threads;
    return PCF_OK;
}

pcf_status pcf_sample_options_set_torsion_command(pcf_sample_options* opts, const char* command) {
    if (!opts)
        return invalid("null options");
    opts->torsion_command = command ? command : "";
    return PCF_OK;
}

pcf_status pcf_sample_options_set_rotation_command(pcf_sample_options* opts, const char* command) {
    if (!opts)
        return invalid("null options");
    opts->rotation_command = command ? command : "";
    return PCF_OK;
}

pcf_status pcf_sample_options_set_encoder_command(pcf_sample_options* opts, const char* command) {
    if (!opts)
        return invalid("null options");
    opts->encoder_command = command ? command : "";
    return PCF_OK;
}

pcf_status pcf_sample(const pcf_graph* graph, const pcf_sample_options* opts,
                      pcf_conformations** out) {
    if (!graph || !opts || !out)
        return invalid("pcf_sample: null argument");
    return guarded([&] {
        std::unique_ptr<gen::EncoderOracle> encoder;
        if (opts->encoder_command.empty())
            encoder = std::make_unique<gen::ToyEncoderOracle>();
        else
            encoder = std::make_unique<io::SubprocessEncoderOracle>(opts->encoder_command);
        std::unique_ptr<gen::TorsionDenoiser> torsion;
        if (opts->torsion_command.empty())
            torsion = std::make_unique<gen::PriorTorsionDenoiser>();
        else
            torsion = std::make_unique<io::SubprocessTorsionDenoiser>(opts->torsion_command);
        std::unique_ptr<gen::RotationDenoiser> rotation;
        if (opts->rotation_command.empty())
            rotation = std::make_unique<gen::PriorRotationDenoiser>();
        else
            rotation = std::make_unique<io::SubprocessRotationDenoiser>(opts->rotation_command);

        auto handle = std::make_unique<pcf_conformations>();
        handle->spec_hash = graph->graph.spec_hash();
        handle->list.resize(static_cast<std::size_t>(opts->num_samples));
        parallel_for(opts->num_samples, opts->threads, [&](int s) {
            gen::GenerationConfig config = opts->config;
            config.seed = sample_seed(opts->config.seed, s);
            handle->list[static_cast<std::size_t>(s)] =
                gen::generate_conformation(graph->graph, *encoder, *torsion, *rotation, config);
        });
        *out = handle.release();
    });
}

pcf_eval_options* pcf_eval_options_new(void) { return new pcf_eval_options(); }

void pcf_eval_options_free(pcf_eval_options* opts) { delete opts; }

pcf_status pcf_eval_options_set_delta(pcf_eval_options* opts, double delta) {
    if (!opts)
        return invalid("null options");
    if (!(delta > 0.0))
        return invalid("delta must be positive");
    opts->metric_opts.delta = delta;
    return PCF_OK;
}

pcf_status pcf_eval_options_set_energy(pcf_eval_options* opts, const char* oracle) {
    if (!opts || !oracle)
        return invalid("null options or oracle");
    std::string s = oracle;
    if (s != "toy" && s.rfind("external:", 0) != 0)
        return invalid("energy oracle must be 'toy' or 'external:<command>'");
    if (s.rfind("external:", 0) == 0 && s.size() <= 9)
        return invalid("external energy oracle needs a command");
    opts->energy = s;
    return PCF_OK;
}

void pcf_eval_options_set_coverage(pcf_eval_options* opts, int include_coverage) {
    if (opts)
        opts->include_coverage = include_coverage != 0;
}

pcf_status pcf_eval_options_set_threads(pcf_eval_options* opts, int threads) {
    if (!opts)
        return invalid("null options");
    if (threads < 1)
        return invalid("threads must be >= 1");
    opts->metric_opts.threads = threads;
    return PCF_OK;
}

void pcf_eval_options_set_seed(pcf_eval_options* opts, uint64_t seed) {
    if (opts)
        opts->seed = seed;
}

namespace {

std::unique_ptr<metrics::EnergyOracle> make_energy_oracle(const std::string& spec) {
    if (spec == "toy")
        return std::make_unique<metrics::ToyEnergyOracle>();
    return std::make_unique<io::ExternalEnergyOracle>(spec.substr(9));
}

} // namespace

pcf_status pcf_report_new(const pcf_eval_options* opts, pcf_report** out) {
    if (!opts || !out)
        return invalid("pcf_report_new: null argument");
    return guarded([&] {
        auto handle = std::make_unique<pcf_report>();
        handle->opts = *opts;
        handle->report.delta = opts->metric_opts.delta;
        handle->report.include_coverage = opts->include_coverage;
        handle->report.energy_oracle_id = make_energy_oracle(opts->energy)->id();
        *out = handle.release();
    });
}

pcf_status pcf_report_add_pair(pcf_report* report, const char* name, const pcf_graph* graph,
                               const pcf_conformations* gen_confs,
                               const pcf_conformations* ref_confs) {
    if (!report || !graph || !gen_confs || !ref_confs)
        return invalid("pcf_report_add_pair: null argument");
    return guarded([&] {
        if (gen_confs->spec_hash != graph->graph.spec_hash() ||
            ref_confs->spec_hash != graph->graph.spec_hash())
            throw GraphMismatchError("conformation sets belong to a different polymer graph");
        metrics::ConformationSet gen_set{&graph->graph, gen_confs->list};
        metrics::ConformationSet ref_set{&graph->graph, ref_confs->list};
        auto oracle = make_energy_oracle(report->opts.energy);

        metrics::PolymerMetrics row;
        row.name = name && *name ? name : graph->spec.name;
        row.spec_hash = graph->graph.spec_hash_hex();
        metrics::RecallPrecision s = metrics::s_mat(gen_set, ref_set, report->opts.metric_opts);
        row.s_mat_r = s.recall;
        row.s_mat_p = s.precision;
        metrics::RecallPrecision e =
            metrics::e_mat(gen_set, ref_set, *oracle, report->opts.metric_opts);
        row.e_mat_r = e.recall;
        row.e_mat_p = e.precision;
        metrics::RecallPrecision c = metrics::s_cov(gen_set, ref_set, report->opts.metric_opts.delta,
                                                    report->opts.metric_opts);
        row.s_cov_r = c.recall;
        row.s_cov_p = c.precision;

        report->report.polymers.push_back(std::move(row));
        metrics::aggregate_report(report->report);
    });
}

pcf_status pcf_report_merge(pcf_report* report, const pcf_report* other) {
    if (!report || !other)
        return invalid("pcf_report_merge: null argument");
    return guarded([&] {
        if (report->report.energy_oracle_id != other->report.energy_oracle_id ||
            report->report.delta != other->report.delta)
            throw GraphMismatchError("cannot merge reports with different evaluation options");
        for (const metrics::PolymerMetrics& row : other->report.polymers)
            report->report.polymers.push_back(row);
        metrics::aggregate_report(report->report);
    });
}

int pcf_report_size(const pcf_report* report) {
    return report ? static_cast<int>(report->report.polymers.size()) : 0;
}

pcf_status pcf_report_metric(const pcf_report* report, int row, const char* metric, double* out) {
    if (!report || !metric || !out)
        return invalid("pcf_report_metric: null argument");
    return guarded([&] {
        const metrics::PolymerMetrics* m = nullptr;
        if (row == -1)
            m = &report->report.mean;
        else if (row == -2)
            m = &report->report.median;
        else if (row >= 0 && row < static_cast<int>(report->report.polymers.size()))
            m = &report->report.polymers[static_cast<std::size_t>(row)];
        else
            throw IndexOutOfRangeError("report row out of range");
        std::string key = metric;
        if (key == "s_mat_r")
            *out = m->s_mat_r;
        else if (key == "s_mat_p")
            *out = m->s_mat_p;
        else if (key == "e_mat_r")
            *out = m->e_mat_r;
        else if (key == "e_mat_p")
            *out = m->e_mat_p;
        else if (key == "s_cov_r")
            *out = m->s_cov_r;
        else if (key == "s_cov_p")
            *out = m->s_cov_p;
        else
            throw InvalidArgumentError("unknown metric '" + key + "'");
    });
}

pcf_status pcf_report_save(const pcf_report* report, const char* path) {
    if (!report || !path)
        return invalid("pcf_report_save: null argument");
    return guarded([&] {
        io::ReportContext ctx;
        ctx.seed = report->opts.seed;
        ctx.tool_version = kVersion;
        io::write_report(report->report, ctx, path);
    });
}

const char* pcf_report_table(pcf_report* report) {
    if (!report)
        return "";
    report->table_cache = io::render_report_table(report->report);
    return report->table_cache.c_str();
}

void pcf_report_free(pcf_report* report) { delete report; }

pcf_status pcf_schedule_dump(const char* kind, int timesteps, uint64_t seed, int n_units,
                             int k_steps, const char* path) {
    if (!kind || !path)
        return invalid("pcf_schedule_dump: null argument");
    return guarded([&] {
        gen::DiffusionSchedule sched =
            gen::make_schedule(gen::schedule_kind_from_string(kind), timesteps);
        nlohmann::json j;
        j["format"] = "polyconf-schedule";
        j["version"] = 1;
        j["kind"] = kind;
        j["timesteps"] = timesteps;
        nlohmann::json alpha = nlohmann::json::array();
        for (double a : sched.alpha_bar)
            alpha.push_back(io::round_real(a));
        j["alpha_bar"] = alpha;
        nlohmann::json sigma = nlohmann::json::array();
        for (double s : sched.sigma_rot)
            sigma.push_back(io::round_real(s));
        j["sigma_rot"] = sigma;
        j["sigma_max_torsion"] = io::round_real(sched.sigma_max_torsion);

        if (n_units > 0) {
            gen::MarSchedule mar = gen::pipeline_mar_schedule(n_units, k_steps, seed);
            nlohmann::json jm;
            jm["seed"] = seed;
            jm["n_units"] = n_units;
            jm["k_steps"] = mar.k_steps;
            nlohmann::json perm = nlohmann::json::array();
            for (int p : mar.permutation)
                perm.push_back(p + 1);
            jm["permutation"] = perm;
            nlohmann::json subsets = nlohmann::json::array();
            for (const auto& subset : mar.subsets) {
                nlohmann::json js = nlohmann::json::array();
                for (int u : subset)
                    js.push_back(u + 1);
                subsets.push_back(js);
            }
            jm["subsets"] = subsets;
            j["mar"] = jm;
        }
        std::ofstream out(path);
        if (!out)
            throw IoError(std::string("cannot write schedule file '") + path + "'");
        out << j.dump(1) << "\n";
    });
}

} // extern "C"

/* polyconf — polymer conformation geometry engine.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns a
 * pcf_status and leaves a thread-local diagnostic retrievable with
 * pcf_last_error(). Out-parameters are written only on PCF_OK.
 */

#ifndef POLYCONF_POLYCONF_H
#define POLYCONF_POLYCONF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pcf_status {
    PCF_OK = 0,
    PCF_ERR_INTERNAL = 1,
    PCF_ERR_INVALID_ARGUMENT = 2,
    PCF_ERR_DEGENERATE_FRAME = 3,
    PCF_ERR_SIZE_MISMATCH = 4,
    PCF_ERR_NEAR_PI = 5,
    PCF_ERR_INVALID_UNIT_SPEC = 6,
    PCF_ERR_JUNCTION_VIOLATION = 7,
    PCF_ERR_NOT_ROTATABLE = 8,
    PCF_ERR_NOT_STANDARDIZED = 9,
    PCF_ERR_INVALID_TIMESTEPS = 10,
    PCF_ERR_INVALID_K = 11,
    PCF_ERR_INDEX_OUT_OF_RANGE = 12,
    PCF_ERR_EMPTY_MATRIX = 13,
    PCF_ERR_GRAPH_MISMATCH = 14,
    PCF_ERR_ORACLE_FAILURE = 15,
    PCF_ERR_PROJECTION_FAILURE = 16,
    PCF_ERR_PARSE = 17,
    PCF_ERR_HASH_MISMATCH = 18,
    PCF_ERR_MALFORMED_RECORD = 19,
    PCF_ERR_IO = 20
} pcf_status;

/* Library version string, e.g. "0.1.0". */
const char* pcf_version(void);

/* Diagnostic for the most recent failing call on this thread ("" if none). */
const char* pcf_last_error(void);

/* ---- polymer graphs ----------------------------------------------------- */

typedef struct pcf_graph pcf_graph;

/* Parses a polyconf-spec JSON document and builds the chain graph. */
pcf_status pcf_graph_load(const char* path, pcf_graph** out);
void pcf_graph_free(pcf_graph* graph);

int pcf_graph_n_units(const pcf_graph* graph);
int pcf_graph_total_atoms(const pcf_graph* graph);
/* Writes the 16-hex-digit topology hash plus a NUL terminator (buf >= 17). */
pcf_status pcf_graph_spec_hash(const pcf_graph* graph, char* buf, size_t buf_len);

/* Chain with the unit sequence repeated `tile` times (homopolymer specs
 * only; specs with head/tail overrides are rejected). */
pcf_status pcf_graph_tile(const pcf_graph* graph, int tile, pcf_graph** out);

/* ---- conformation lists -------------------------------------------------- */

typedef struct pcf_conformations pcf_conformations;

pcf_status pcf_conformations_load(const char* path, const pcf_graph* graph,
                                  pcf_conformations** out);
pcf_status pcf_conformations_save(const pcf_conformations* confs, const pcf_graph* graph,
                                  const char* path);
int pcf_conformations_count(const pcf_conformations* confs);
/* Copies conformation `index` into xyz (length 3 * total_atoms, xyzxyz...). */
pcf_status pcf_conformations_coords(const pcf_conformations* confs, int index, double* xyz,
                                    size_t len);
void pcf_conformations_free(pcf_conformations* confs);

/* ---- decomposition and assembly ----------------------------------------- */

typedef struct pcf_decomposition pcf_decomposition;

/* Splits every conformation into standardized units plus frames. */
pcf_status pcf_decompose(const pcf_graph* graph, const pcf_conformations* confs,
                         pcf_decomposition** out);
pcf_status pcf_decomposition_save(const pcf_decomposition* dec, const pcf_graph* graph,
                                  const char* path);
pcf_status pcf_decomposition_load(const char* path, const pcf_graph* graph,
                                  pcf_decomposition** out);
int pcf_decomposition_count(const pcf_decomposition* dec);
void pcf_decomposition_free(pcf_decomposition* dec);

/* Rebuilds full conformations from units + rotations. `tile` >= 1 repeats the
 * unit/rotation sequence that many times (the graph must describe the tiled
 * chain length when tile > 1). */
pcf_status pcf_assemble(const pcf_graph* graph, const pcf_decomposition* dec, int tile,
                        pcf_conformations** out);

/* Aligned RMSD between conformation `index` and its decompose-assemble
 * round trip. */
pcf_status pcf_roundtrip_residual(const pcf_graph* graph, const pcf_conformations* confs,
                                  int index, double* out_residual);

/* ---- sampling ------------------------------------------------------------ */

typedef struct pcf_sample_options pcf_sample_options;

pcf_sample_options* pcf_sample_options_new(void);
void pcf_sample_options_free(pcf_sample_options* opts);
void pcf_sample_options_set_seed(pcf_sample_options* opts, uint64_t seed);
pcf_status pcf_sample_options_set_timesteps(pcf_sample_options* opts, int timesteps);
/* kind: "cosine" or "linear". */
pcf_status pcf_sample_options_set_schedule(pcf_sample_options* opts, const char* kind);
/* 0 selects K = n_units (one unit per autoregressive step). */
pcf_status pcf_sample_options_set_k_steps(pcf_sample_options* opts, int k_steps);
pcf_status pcf_sample_options_set_num_samples(pcf_sample_options* opts, int num_samples);
pcf_status pcf_sample_options_set_threads(pcf_sample_options* opts, int threads);
/* NULL restores the builtin component; otherwise a subprocess command
 * implementing the matching exchange protocol. */
pcf_status pcf_sample_options_set_torsion_command(pcf_sample_options* opts, const char* command);
pcf_status pcf_sample_options_set_rotation_command(pcf_sample_options* opts, const char* command);
pcf_status pcf_sample_options_set_encoder_command(pcf_sample_options* opts, const char* command);

/* Runs the generation pipeline; one conformation per sample index, seeded
 * deterministically from (seed, sample index). */
pcf_status pcf_sample(const pcf_graph* graph, const pcf_sample_options* opts,
                      pcf_conformations** out);

/* ---- evaluation ----------------------------------------------------------- */

typedef struct pcf_eval_options pcf_eval_options;
typedef struct pcf_report pcf_report;

pcf_eval_options* pcf_eval_options_new(void);
void pcf_eval_options_free(pcf_eval_options* opts);
pcf_status pcf_eval_options_set_delta(pcf_eval_options* opts, double delta_angstrom);
/* oracle: "toy" or "external:<command>". */
pcf_status pcf_eval_options_set_energy(pcf_eval_options* opts, const char* oracle);
void pcf_eval_options_set_coverage(pcf_eval_options* opts, int include_coverage);
pcf_status pcf_eval_options_set_threads(pcf_eval_options* opts, int threads);
void pcf_eval_options_set_seed(pcf_eval_options* opts, uint64_t seed);

pcf_status pcf_report_new(const pcf_eval_options* opts, pcf_report** out);
/* Evaluates one generated/reference pair and appends a per-polymer row. */
pcf_status pcf_report_add_pair(pcf_report* report, const char* name, const pcf_graph* graph,
                               const pcf_conformations* gen, const pcf_conformations* ref);
/* Appends all rows of `other` (options must agree) and re-aggregates. */
pcf_status pcf_report_merge(pcf_report* report, const pcf_report* other);
int pcf_report_size(const pcf_report* report);
/* metric: s_mat_r, s_mat_p, e_mat_r, e_mat_p, s_cov_r, s_cov_p;
 * row: 0-based polymer row, -1 = corpus mean, -2 = corpus median. */
pcf_status pcf_report_metric(const pcf_report* report, int row, const char* metric, double* out);
pcf_status pcf_report_save(const pcf_report* report, const char* path);
/* Human-readable table; returns a pointer owned by `report`, valid until the
 * next call on it. */
const char* pcf_report_table(pcf_report* report);
void pcf_report_free(pcf_report* report);

/* ---- schedules ------------------------------------------------------------ */

/* Writes a JSON dump of the diffusion schedule (alpha_bar, sigma_rot) and,
 * when n_units > 0, the seeded MAR plan (permutation + subsets). */
pcf_status pcf_schedule_dump(const char* kind, int timesteps, uint64_t seed, int n_units,
                             int k_steps, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* POLYCONF_POLYCONF_H */

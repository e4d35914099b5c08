#ifndef POLYCONF_METRICS_METRICS_HPP
#define POLYCONF_METRICS_METRICS_HPP

#include <string>
#include <vector>

#include "polyconf/metrics/toy_energy.hpp"

namespace polyconf::metrics {

// Conformations of one polymer playing either the generated or the reference
// role. All members must share the graph.
struct ConformationSet {
    const repr::PolymerGraph* graph = nullptr;
    std::vector<repr::PolymerConformation> members;
};

struct RecallPrecision {
    double recall = 0.0;
    double precision = 0.0;
};

struct MetricOptions {
    double delta = 25.0;         // coverage threshold in Angstrom
    bool heavy_atoms_only = false;
    int threads = 1;
};

// Structure matching: recall = mean over reference members of the minimum
// aligned RMSD against the generated set; precision mirrors it. Every pair is
// Kabsch-aligned before its RMSD. Throws GraphMismatchError when the two sets
// disagree on topology.
RecallPrecision s_mat(const ConformationSet& gen, const ConformationSet& ref,
                      const MetricOptions& opts = {});

// Energy matching: same aggregation with |E(C) - E(C')| as the pairwise cost.
RecallPrecision e_mat(const ConformationSet& gen, const ConformationSet& ref,
                      const EnergyOracle& oracle, const MetricOptions& opts = {});

// Coverage: fraction of members whose best aligned RMSD is within delta.
RecallPrecision s_cov(const ConformationSet& gen, const ConformationSet& ref, double delta,
                      const MetricOptions& opts = {});

struct PolymerMetrics {
    std::string name;
    std::string spec_hash;
    double s_mat_r = 0.0, s_mat_p = 0.0;
    double e_mat_r = 0.0, e_mat_p = 0.0;
    double s_cov_r = 0.0, s_cov_p = 0.0;
};

struct MetricReport {
    std::vector<PolymerMetrics> polymers;
    PolymerMetrics mean;   // corpus means (name unused)
    PolymerMetrics median; // corpus medians; even counts take the midpoint average
    double delta = 25.0;
    std::string energy_oracle_id;
    bool include_coverage = false;
};

// Per-polymer metrics plus corpus mean/median.
MetricReport evaluate_corpus(const std::vector<std::pair<ConformationSet, ConformationSet>>& pairs,
                             const EnergyOracle& oracle, const MetricOptions& opts = {},
                             const std::vector<std::string>& names = {});

// Recomputes the aggregate rows of a report from its per-polymer rows.
void aggregate_report(MetricReport& report);

} // namespace polyconf::metrics

#endif

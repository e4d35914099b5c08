#include "polyconf/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyconf/error.hpp"
#include "polyconf/geom/kabsch.hpp"
#include "polyconf/parallel.hpp"

namespace polyconf::metrics {

namespace {

void check_sets(const ConformationSet& gen, const ConformationSet& ref) {
    if (!gen.graph || !ref.graph)
        throw GraphMismatchError("conformation set is missing its graph");
    if (!gen.graph->same_topology(*ref.graph))
        throw GraphMismatchError("generated and reference sets use different polymer graphs");
    if (gen.members.empty() || ref.members.empty())
        throw GraphMismatchError("conformation sets must be non-empty");
    for (const auto& c : gen.members)
        if (c.atom_count() != gen.graph->total_atoms())
            throw GraphMismatchError("generated member has a wrong atom count");
    for (const auto& c : ref.members)
        if (c.atom_count() != ref.graph->total_atoms())
            throw GraphMismatchError("reference member has a wrong atom count");
}

std::vector<geom::Vec3> select_atoms(const repr::PolymerConformation& conf,
                                     const repr::PolymerGraph& graph, bool heavy_only) {
    if (!heavy_only)
        return conf.coords;
    std::vector<geom::Vec3> out;
    for (int a = 0; a < graph.total_atoms(); ++a) {
        const std::string& elem =
            graph.unit(graph.owner_unit(a)).elements[static_cast<std::size_t>(graph.owner_local(a))];
        if (elem != "H")
            out.push_back(conf.coords[static_cast<std::size_t>(a)]);
    }
    return out;
}

// cost[g * |ref| + r] = aligned RMSD between gen member g and ref member r.
std::vector<double> rmsd_matrix(const ConformationSet& gen, const ConformationSet& ref,
                                const MetricOptions& opts) {
    const int ng = static_cast<int>(gen.members.size());
    const int nr = static_cast<int>(ref.members.size());

    std::vector<std::vector<geom::Vec3>> gsel(static_cast<std::size_t>(ng));
    std::vector<std::vector<geom::Vec3>> rsel(static_cast<std::size_t>(nr));
    for (int g = 0; g < ng; ++g)
        gsel[static_cast<std::size_t>(g)] =
            select_atoms(gen.members[static_cast<std::size_t>(g)], *gen.graph, opts.heavy_atoms_only);
    for (int r = 0; r < nr; ++r)
        rsel[static_cast<std::size_t>(r)] =
            select_atoms(ref.members[static_cast<std::size_t>(r)], *ref.graph, opts.heavy_atoms_only);

    std::vector<double> cost(static_cast<std::size_t>(ng) * static_cast<std::size_t>(nr));
    parallel_for(ng * nr, opts.threads, [&](int idx) {
        int g = idx / nr;
        int r = idx % nr;
        cost[static_cast<std::size_t>(idx)] =
            geom::aligned_rmsd(gsel[static_cast<std::size_t>(g)], rsel[static_cast<std::size_t>(r)]);
    });
    return cost;
}

RecallPrecision min_aggregate(const std::vector<double>& cost, int ng, int nr) {
    RecallPrecision out;
    for (int r = 0; r < nr; ++r) {
        double best = std::numeric_limits<double>::infinity();
        for (int g = 0; g < ng; ++g)
            best = std::min(best, cost[static_cast<std::size_t>(g) * static_cast<std::size_t>(nr) +
                                       static_cast<std::size_t>(r)]);
        out.recall += best;
    }
    out.recall /= nr;
    for (int g = 0; g < ng; ++g) {
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < nr; ++r)
            best = std::min(best, cost[static_cast<std::size_t>(g) * static_cast<std::size_t>(nr) +
                                       static_cast<std::size_t>(r)]);
        out.precision += best;
    }
    out.precision /= ng;
    return out;
}

} // namespace

RecallPrecision s_mat(const ConformationSet& gen, const ConformationSet& ref,
                      const MetricOptions& opts) {
    check_sets(gen, ref);
    std::vector<double> cost = rmsd_matrix(gen, ref, opts);
    return min_aggregate(cost, static_cast<int>(gen.members.size()),
                         static_cast<int>(ref.members.size()));
}

RecallPrecision e_mat(const ConformationSet& gen, const ConformationSet& ref,
                      const EnergyOracle& oracle, const MetricOptions& opts) {
    check_sets(gen, ref);
    const int ng = static_cast<int>(gen.members.size());
    const int nr = static_cast<int>(ref.members.size());

    std::vector<double> eg(static_cast<std::size_t>(ng)), er(static_cast<std::size_t>(nr));
    parallel_for(ng, opts.threads, [&](int g) {
        eg[static_cast<std::size_t>(g)] = oracle.energy(gen.members[static_cast<std::size_t>(g)], *gen.graph);
    });
    parallel_for(nr, opts.threads, [&](int r) {
        er[static_cast<std::size_t>(r)] = oracle.energy(ref.members[static_cast<std::size_t>(r)], *ref.graph);
    });
    for (double e : eg)
        if (!std::isfinite(e))
            throw OracleFailureError("energy oracle returned a non-finite value");
    for (double e : er)
        if (!std::isfinite(e))
            throw OracleFailureError("energy oracle returned a non-finite value");

    std::vector<double> cost(static_cast<std::size_t>(ng) * static_cast<std::size_t>(nr));
    for (int g = 0; g < ng; ++g)
        for (int r = 0; r < nr; ++r)
            cost[static_cast<std::size_t>(g) * static_cast<std::size_t>(nr) + static_cast<std::size_t>(r)] =
                std::fabs(eg[static_cast<std::size_t>(g)] - er[static_cast<std::size_t>(r)]);
    return min_aggregate(cost, ng, nr);
}

RecallPrecision s_cov(const ConformationSet& gen, const ConformationSet& ref, double delta,
                      const MetricOptions& opts) {
    if (!(delta > 0.0))
        throw InvalidArgumentError("coverage threshold delta must be positive");
    check_sets(gen, ref);
    const int ng = static_cast<int>(gen.members.size());
    const int nr = static_cast<int>(ref.members.size());
    std::vector<double> cost = rmsd_matrix(gen, ref, opts);

    RecallPrecision out;
    for (int r = 0; r < nr; ++r) {
        double best = std::numeric_limits<double>::infinity();
        for (int g = 0; g < ng; ++g)
            best = std::min(best, cost[static_cast<std::size_t>(g) * static_cast<std::size_t>(nr) +
                                       static_cast<std::size_t>(r)]);
        if (best <= delta)
            out.recall += 1.0;
    }
    out.recall /= nr;
    for (int g = 0; g < ng; ++g) {
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < nr; ++r)
            best = std::min(best, cost[static_cast<std::size_t>(g) * static_cast<std::size_t>(nr) +
                                       static_cast<std::size_t>(r)]);
        if (best <= delta)
            out.precision += 1.0;
    }
    out.precision /= ng;
    return out;
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n % 2 == 1)
        return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

void aggregate_report(MetricReport& report) {
    const std::size_t n = report.polymers.size();
    auto fields = {&PolymerMetrics::s_mat_r, &PolymerMetrics::s_mat_p, &PolymerMetrics::e_mat_r,
                   &PolymerMetrics::e_mat_p, &PolymerMetrics::s_cov_r, &PolymerMetrics::s_cov_p};
    for (auto field : fields) {
        std::vector<double> values;
        values.reserve(n);
        for (const PolymerMetrics& p : report.polymers)
            values.push_back(p.*field);
        double mean = 0.0;
        for (double v : values)
            mean += v;
        report.mean.*field = values.empty() ? 0.0 : mean / static_cast<double>(values.size());
        report.median.*field = values.empty() ? 0.0 : median_of(values);
    }
}

MetricReport evaluate_corpus(const std::vector<std::pair<ConformationSet, ConformationSet>>& pairs,
                             const EnergyOracle& oracle, const MetricOptions& opts,
                             const std::vector<std::string>& names) {
    if (pairs.empty())
        throw InvalidArgumentError("evaluate_corpus needs at least one polymer pair");

    MetricReport report;
    report.delta = opts.delta;
    report.energy_oracle_id = oracle.id();
    report.polymers.resize(pairs.size());

    // Parallel across polymers; the within-polymer matrices run single-threaded
    // in that case to keep the work partitioning deterministic.
    MetricOptions inner = opts;
    if (pairs.size() > 1 && opts.threads > 1)
        inner.threads = 1;
    parallel_for(static_cast<int>(pairs.size()), opts.threads, [&](int i) {
        const auto& [gen, ref] = pairs[static_cast<std::size_t>(i)];
        PolymerMetrics& row = report.polymers[static_cast<std::size_t>(i)];
        row.name = i < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(i)]
                                                      : "polymer-" + std::to_string(i + 1);
        row.spec_hash = gen.graph ? gen.graph->spec_hash_hex() : "";
        RecallPrecision s = s_mat(gen, ref, inner);
        row.s_mat_r = s.recall;
        row.s_mat_p = s.precision;
        RecallPrecision e = e_mat(gen, ref, oracle, inner);
        row.e_mat_r = e.recall;
        row.e_mat_p = e.precision;
        RecallPrecision c = s_cov(gen, ref, opts.delta, inner);
        row.s_cov_r = c.recall;
        row.s_cov_p = c.precision;
    });

    aggregate_report(report);
    return report;
}

} // namespace polyconf::metrics

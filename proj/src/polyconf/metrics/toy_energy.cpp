#include "polyconf/metrics/toy_energy.hpp"

#include <cmath>
#include <queue>

#include "polyconf/repr/chem_tables.hpp"

namespace polyconf::metrics {

using geom::Vec3;
using repr::PolymerGraph;

namespace {

std::vector<std::vector<int>> global_adjacency(const PolymerGraph& graph) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(graph.total_atoms()));
    for (const repr::Bond& b : graph.global_bonds()) {
        adj[static_cast<std::size_t>(b.a)].push_back(b.b);
        adj[static_cast<std::size_t>(b.b)].push_back(b.a);
    }
    return adj;
}

const std::string& element_of(const PolymerGraph& graph, int atom) {
    int unit = graph.owner_unit(atom);
    int local = graph.owner_local(atom);
    return graph.unit(unit).elements[static_cast<std::size_t>(local)];
}

} // namespace

double ToyEnergyOracle::energy(const repr::PolymerConformation& conf,
                               const PolymerGraph& graph) const {
    repr::validate_conformation(conf, graph);
    const auto adj = global_adjacency(graph);
    const int n = graph.total_atoms();
    double e = 0.0;

    for (const repr::Bond& b : graph.global_bonds()) {
        double l0 = repr::ideal_bond_length(element_of(graph, b.a), element_of(graph, b.b));
        double l = geom::distance(conf.coords[static_cast<std::size_t>(b.a)],
                                  conf.coords[static_cast<std::size_t>(b.b)]);
        e += kToyBondK * (l - l0) * (l - l0);
    }

    for (int center = 0; center < n; ++center) {
        const auto& nb = adj[static_cast<std::size_t>(center)];
        double theta0 = repr::ideal_bond_angle(static_cast<int>(nb.size()));
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                Vec3 u = conf.coords[static_cast<std::size_t>(nb[i])] -
                         conf.coords[static_cast<std::size_t>(center)];
                Vec3 v = conf.coords[static_cast<std::size_t>(nb[j])] -
                         conf.coords[static_cast<std::size_t>(center)];
                double theta = geom::angle_between(u, v);
                e += kToyAngleK * (theta - theta0) * (theta - theta0);
            }
    }

    // Bond-separation BFS per atom; pairs closer than the cutoff are skipped.
    std::vector<int> dist(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(a)] = 0;
        std::queue<int> q;
        q.push(a);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            if (dist[static_cast<std::size_t>(x)] >= kToyLjMinSeparation)
                continue;
            for (int y : adj[static_cast<std::size_t>(x)])
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                    q.push(y);
                }
        }
        for (int b = a + 1; b < n; ++b) {
            if (dist[static_cast<std::size_t>(b)] >= 0 && dist[static_cast<std::size_t>(b)] < kToyLjMinSeparation)
                continue;
            double r = geom::distance(conf.coords[static_cast<std::size_t>(a)],
                                      conf.coords[static_cast<std::size_t>(b)]);
            double sr6 = std::pow(kToyLjSigma / r, 6);
            e += 4.0 * kToyLjEpsilon * (sr6 * sr6 - sr6);
        }
    }
    return e;
}

} // namespace polyconf::metrics

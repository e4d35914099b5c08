#include "polyconf/repr/conformation.hpp"

#include <string>

#include "polyconf/error.hpp"

namespace polyconf::repr {

std::vector<int> PolymerConformation::unit_labels(const PolymerGraph& graph) {
    std::vector<int> labels(static_cast<std::size_t>(graph.total_atoms()));
    for (int a = 0; a < graph.total_atoms(); ++a)
        labels[static_cast<std::size_t>(a)] = graph.owner_unit(a);
    return labels;
}

void validate_conformation(const PolymerConformation& conf, const PolymerGraph& graph) {
    if (conf.atom_count() != graph.total_atoms())
        throw SizeMismatchError("conformation has " + std::to_string(conf.atom_count()) +
                                " atoms, graph expects " + std::to_string(graph.total_atoms()));
    for (const geom::Vec3& c : conf.coords)
        if (!c.all_finite())
            throw InvalidArgumentError("conformation contains non-finite coordinates");
    for (std::size_t j = 0; j < graph.junctions().size(); ++j) {
        const auto& junction = graph.junctions()[j];
        double d = geom::distance(conf.coords[static_cast<std::size_t>(junction.atom_a)],
                                  conf.coords[static_cast<std::size_t>(junction.atom_b)]);
        if (d > graph.junction_threshold())
            throw JunctionViolationError("junction between units " + std::to_string(j + 1) + " and " +
                                         std::to_string(j + 2) + " spans " + std::to_string(d) +
                                         " A (threshold " + std::to_string(graph.junction_threshold()) +
                                         " A)");
    }
}

UnitConformation slice_unit(const PolymerConformation& conf, const PolymerGraph& graph, int unit) {
    const UnitTopology& topo = graph.unit(unit);
    UnitConformation out;
    out.unit_index = unit;
    out.coords.reserve(static_cast<std::size_t>(topo.atom_count()));
    for (int local = 0; local < topo.atom_count(); ++local)
        out.coords.push_back(conf.coords[static_cast<std::size_t>(graph.global_index(unit, local))]);
    return out;
}

} // namespace polyconf::repr

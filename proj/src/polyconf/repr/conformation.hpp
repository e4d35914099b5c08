#ifndef POLYCONF_REPR_CONFORMATION_HPP
#define POLYCONF_REPR_CONFORMATION_HPP

#include <vector>

#include "polyconf/geom/rotation.hpp"
#include "polyconf/geom/vec3.hpp"
#include "polyconf/repr/topology.hpp"

namespace polyconf::repr {

// Coordinates of one extended repeating unit (including the two borrowed
// overlap atoms), indexed like its UnitTopology.
struct UnitConformation {
    int unit_index = 0; // 0-based position in the chain
    std::vector<geom::Vec3> coords;

    int atom_count() const { return static_cast<int>(coords.size()); }
};

// Full polymer conformation over the graph's global atom indexing.
struct PolymerConformation {
    std::vector<geom::Vec3> coords;

    int atom_count() const { return static_cast<int>(coords.size()); }

    // Owner-unit label (0-based) of each atom, from the graph.
    static std::vector<int> unit_labels(const PolymerGraph& graph);
};

// Checks atom count, finiteness, and that every junction pair sits within
// the graph's bonded-distance threshold. Throws SizeMismatchError or
// JunctionViolationError.
void validate_conformation(const PolymerConformation& conf, const PolymerGraph& graph);

// Slice of the full conformation seen by one unit (borrowed atoms mirrored in).
UnitConformation slice_unit(const PolymerConformation& conf, const PolymerGraph& graph, int unit);

struct DecompositionResult {
    std::vector<UnitConformation> units;        // standardized poses
    std::vector<geom::RigidTransform> frames;   // unit frames in chain coordinates
};

} // namespace polyconf::repr

#endif

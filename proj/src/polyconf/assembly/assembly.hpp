#ifndef POLYCONF_ASSEMBLY_ASSEMBLY_HPP
#define POLYCONF_ASSEMBLY_ASSEMBLY_HPP

#include <vector>

#include "polyconf/repr/conformation.hpp"
#include "polyconf/repr/decompose.hpp"

namespace polyconf::assembly {

struct AssemblyInput {
    std::vector<repr::UnitConformation> std_units; // standard coordinates, one per unit
    std::vector<geom::Rotation> rotations;
    const repr::PolymerGraph* graph = nullptr;
};

// Rotates a standardized unit about the origin (atom-3 stays put). Throws
// NotStandardizedError when the unit's frame deviates from identity by more
// than 1e-6.
repr::UnitConformation apply_rotation(const repr::UnitConformation& std_unit,
                                      const geom::Rotation& r,
                                      const repr::UnitTopology& topo);

// Chain translations from overlap alignment: t_1 = 0, and each subsequent
// translation places atom-1 of unit i+1 exactly onto the placed atom-3 of
// unit i (the incremental form of the prefix-sum rule).
std::vector<geom::Vec3> derive_translations(const std::vector<repr::UnitConformation>& rotated_units,
                                            const repr::PolymerGraph& graph);

// Full generation-side assembly: rotate, derive translations, place, and
// strip the overlap copies (atom-1/atom-4 of each unit, keeping the chain
// head's atom-1 and the tail's atom-4 as terminal caps).
repr::PolymerConformation assemble(const AssemblyInput& input);

// Aligned RMSD between `conf` and assemble(decompose(conf)).
double roundtrip_residual(const repr::PolymerConformation& conf, const repr::PolymerGraph& graph);

} // namespace polyconf::assembly

#endif

#ifndef POLYCONF_REPR_TEMPLATE_UNIT_HPP
#define POLYCONF_REPR_TEMPLATE_UNIT_HPP

#include "polyconf/repr/conformation.hpp"

namespace polyconf::repr {

// Deterministic idealized geometry for a unit topology: bond lengths from
// the covalent-radius table, bond angles from the degree heuristic, branches
// spread over fixed dihedral slots along a BFS spanning tree. Ring-closure
// bonds are not length-corrected. The result is standardized (identity
// frame). Serves as the fixed-length/angle template that torsion-space
// sampling deforms.
UnitConformation make_template_unit(const UnitTopology& topo, int unit_index = 0);

} // namespace polyconf::repr

#endif

#ifndef POLYCONF_REPR_FRAMES_HPP
#define POLYCONF_REPR_FRAMES_HPP

#include "polyconf/repr/conformation.hpp"

namespace polyconf::repr {

// Unit frame: translation is the coordinate of atom-3; rotation comes from
// Gram-Schmidt on v1 = atom-1 - atom-3 and v2 = atom-4 - atom-3.
geom::RigidTransform extract_frame(const UnitConformation& unit, const UnitTopology& topo);

// Inverse frame applied row-wise: coords' = R^T (coords - t). The extracted
// frame of the result is the identity.
UnitConformation to_standard(const UnitConformation& unit, const geom::RigidTransform& frame);

// Frame applied row-wise: coords' = R coords + t.
UnitConformation apply_frame(const UnitConformation& unit, const geom::RigidTransform& frame);

// Deviation of a unit from standard pose: max of frame translation norm and
// rotation distance from identity (Frobenius-ish max-abs).
double standard_pose_defect(const UnitConformation& unit, const UnitTopology& topo);

} // namespace polyconf::repr

#endif

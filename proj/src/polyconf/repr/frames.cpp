#include "polyconf/repr/frames.hpp"

#include <algorithm>

#include "polyconf/error.hpp"

namespace polyconf::repr {

using geom::RigidTransform;
using geom::Vec3;

RigidTransform extract_frame(const UnitConformation& unit, const UnitTopology& topo) {
    if (unit.atom_count() != topo.atom_count())
        throw SizeMismatchError("unit conformation does not match its topology");
    const Vec3& c1 = unit.coords[static_cast<std::size_t>(topo.key(kAtom1))];
    const Vec3& c3 = unit.coords[static_cast<std::size_t>(topo.key(kAtom3))];
    const Vec3& c4 = unit.coords[static_cast<std::size_t>(topo.key(kAtom4))];
    return {geom::gram_schmidt_rotation(c1 - c3, c4 - c3), c3};
}

UnitConformation to_standard(const UnitConformation& unit, const RigidTransform& frame) {
    UnitConformation out;
    out.unit_index = unit.unit_index;
    out.coords.reserve(unit.coords.size());
    for (const Vec3& c : unit.coords)
        out.coords.push_back(frame.apply_inverse(c));
    return out;
}

UnitConformation apply_frame(const UnitConformation& unit, const RigidTransform& frame) {
    UnitConformation out;
    out.unit_index = unit.unit_index;
    out.coords.reserve(unit.coords.size());
    for (const Vec3& c : unit.coords)
        out.coords.push_back(frame.apply(c));
    return out;
}

double standard_pose_defect(const UnitConformation& unit, const UnitTopology& topo) {
    RigidTransform f = extract_frame(unit, topo);
    double rot_dev = f.rotation.matrix().max_abs_diff(geom::Mat3::identity());
    return std::max(f.translation.norm(), rot_dev);
}

} // namespace polyconf::repr

#ifndef POLYCONF_REPR_TORSION_HPP
#define POLYCONF_REPR_TORSION_HPP

#include <vector>

#include "polyconf/repr/conformation.hpp"

namespace polyconf::repr {

// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

// Signed dihedral p1-p2-p3-p4 in (-pi, pi].
double measure_dihedral(const geom::Vec3& p1, const geom::Vec3& p2, const geom::Vec3& p3,
                        const geom::Vec3& p4);

// A rotatable bond with its canonical torsion coordinate. `anchor` is the
// endpoint on the side containing atom-3 (that side stays fixed when the
// torsion turns); `ref_anchor`/`ref_moving` are the lowest-index neighbours
// completing the dihedral quartet (ref_anchor, anchor, moving, ref_moving).
struct RotatableBond {
    int anchor = 0;
    int moving = 0;
    int ref_anchor = 0;
    int ref_moving = 0;
    std::vector<int> moving_side; // local atoms rotated with the bond (incl. `moving`)
};

// Order-1 non-ring bonds whose removal splits the unit into two components
// of at least 2 atoms each, listed in ascending (min,max) endpoint order.
std::vector<RotatableBond> list_rotatable_bonds(const UnitTopology& topo);

// Current value of the bond's canonical torsion coordinate.
double measure_torsion(const UnitConformation& unit, const RotatableBond& bond);

// Rotates the moving side by `delta` about the bond axis; the canonical
// torsion coordinate increases by exactly delta (mod 2 pi); every bond length
// and bond angle is preserved. Throws NotRotatableError when `bond` is not in
// list_rotatable_bonds(topo).
UnitConformation rotate_torsion(const UnitConformation& unit, const UnitTopology& topo,
                                const Bond& bond, double delta);

// Torsion vector over list_rotatable_bonds order.
std::vector<double> measure_torsions(const UnitConformation& unit,
                                     const std::vector<RotatableBond>& bonds);

// Sets every canonical torsion to the target value (independent coordinates,
// so application order does not matter).
UnitConformation apply_torsions(const UnitConformation& unit,
                                const std::vector<RotatableBond>& bonds,
                                const std::vector<double>& targets);

} // namespace polyconf::repr

#endif

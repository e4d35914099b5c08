#include "polyconf/repr/template_unit.hpp"

#include <cmath>
#include <queue>

#include "polyconf/repr/chem_tables.hpp"
#include "polyconf/repr/frames.hpp"

namespace polyconf::repr {

using geom::Vec3;

namespace {

Vec3 stable_perpendicular(const Vec3& u) {
    double ax = std::fabs(u.x), ay = std::fabs(u.y), az = std::fabs(u.z);
    Vec3 pick = (ax <= ay && ax <= az) ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    return u.cross(pick).normalized();
}

} // namespace

UnitConformation make_template_unit(const UnitTopology& topo, int unit_index) {
    topo.validate();
    const auto adj = topo.adjacency();
    const int n = topo.atom_count();
    const int root = topo.key(kAtom2);

    UnitConformation unit;
    unit.unit_index = unit_index;
    unit.coords.assign(static_cast<std::size_t>(n), Vec3{});

    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> child_rank(static_cast<std::size_t>(n), 0); // children placed so far
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    placed[static_cast<std::size_t>(root)] = 1;

    // Dihedral slots (radians) used to fan out siblings around the parent axis.
    static const double slots[] = {geom::kPi, geom::kPi / 3.0, -geom::kPi / 3.0, 0.0,
                                   2.0 * geom::kPi / 3.0, -2.0 * geom::kPi / 3.0};

    std::queue<int> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
        int p = frontier.front();
        frontier.pop();
        for (int c : adj[static_cast<std::size_t>(p)]) {
            if (placed[static_cast<std::size_t>(c)])
                continue;
            placed[static_cast<std::size_t>(c)] = 1;
            parent[static_cast<std::size_t>(c)] = p;

            double length = ideal_bond_length(topo.elements[static_cast<std::size_t>(p)],
                                              topo.elements[static_cast<std::size_t>(c)]);
            int rank = child_rank[static_cast<std::size_t>(p)]++;
            const Vec3 ppos = unit.coords[static_cast<std::size_t>(p)];

            Vec3 dir;
            if (parent[static_cast<std::size_t>(p)] < 0 && rank == 0) {
                dir = {1.0, 0.0, 0.0};
            } else {
                // Reference direction: toward the grandparent, or toward the
                // first child for further children of the root.
                Vec3 ref;
                if (parent[static_cast<std::size_t>(p)] >= 0)
                    ref = (unit.coords[static_cast<std::size_t>(parent[static_cast<std::size_t>(p)])] -
                           ppos)
                              .normalized();
                else
                    ref = Vec3{1.0, 0.0, 0.0}; // toward the root's first child

                int degree = static_cast<int>(adj[static_cast<std::size_t>(p)].size());
                double theta = ideal_bond_angle(degree);
                double psi = slots[static_cast<std::size_t>(rank) % (sizeof(slots) / sizeof(slots[0]))];

                Vec3 v = stable_perpendicular(ref);
                Vec3 w = ref.cross(v);
                dir = ref * std::cos(theta) +
                      (v * std::cos(psi) + w * std::sin(psi)) * std::sin(theta);
            }
            unit.coords[static_cast<std::size_t>(c)] = ppos + dir * length;
            frontier.push(c);
        }
    }

    return to_standard(unit, extract_frame(unit, topo));
}

} // namespace polyconf::repr

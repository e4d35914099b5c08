#include "polyconf/repr/torsion.hpp"

#include <algorithm>
#include <cmath>

#include "polyconf/error.hpp"

namespace polyconf::repr {

using geom::Vec3;

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * geom::kPi;
    double w = std::fmod(a + geom::kPi, two_pi);
    if (w <= 0.0)
        w += two_pi;
    return w - geom::kPi;
}

double measure_dihedral(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4) {
    Vec3 b1 = p2 - p1;
    Vec3 b2 = p3 - p2;
    Vec3 b3 = p4 - p3;
    Vec3 n1 = b1.cross(b2);
    Vec3 n2 = b2.cross(b3);
    double x = n1.dot(n2);
    double y = n1.cross(n2).dot(b2.normalized());
    return std::atan2(y, x);
}

namespace {

// Component of `start` in the unit graph with the bond (cut_a, cut_b) removed.
std::vector<int> component_without_bond(const std::vector<std::vector<int>>& adj, int start, int cut_a,
                                        int cut_b) {
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> stack{start}, out;
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        out.push_back(a);
        for (int b : adj[static_cast<std::size_t>(a)]) {
            if ((a == cut_a && b == cut_b) || (a == cut_b && b == cut_a))
                continue;
            if (!seen[static_cast<std::size_t>(b)]) {
                seen[static_cast<std::size_t>(b)] = 1;
                stack.push_back(b);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int lowest_neighbor_except(const std::vector<std::vector<int>>& adj, int atom, int except) {
    for (int b : adj[static_cast<std::size_t>(atom)])
        if (b != except)
            return b; // adjacency lists are sorted
    return -1;
}

} // namespace

std::vector<RotatableBond> list_rotatable_bonds(const UnitTopology& topo) {
    auto adj = topo.adjacency();
    int k3 = topo.key(kAtom3);

    std::vector<Bond> candidates;
    for (const Bond& b : topo.bonds)
        if (b.order == 1)
            candidates.push_back({std::min(b.a, b.b), std::max(b.a, b.b), b.order});
    std::sort(candidates.begin(), candidates.end(),
              [](const Bond& x, const Bond& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Bond& x, const Bond& y) { return x.a == y.a && x.b == y.b; }),
                     candidates.end());

    std::vector<RotatableBond> out;
    for (const Bond& b : candidates) {
        std::vector<int> side_a = component_without_bond(adj, b.a, b.a, b.b);
        if (std::binary_search(side_a.begin(), side_a.end(), b.b))
            continue; // ring bond
        std::size_t total = topo.elements.size();
        std::size_t size_b = total - side_a.size();
        if (side_a.size() < 2 || size_b < 2)
            continue;

        RotatableBond rb;
        bool k3_in_a = std::binary_search(side_a.begin(), side_a.end(), k3);
        rb.anchor = k3_in_a ? b.a : b.b;
        rb.moving = k3_in_a ? b.b : b.a;
        rb.moving_side = k3_in_a ? component_without_bond(adj, b.b, b.a, b.b) : std::move(side_a);
        rb.ref_anchor = lowest_neighbor_except(adj, rb.anchor, rb.moving);
        rb.ref_moving = lowest_neighbor_except(adj, rb.moving, rb.anchor);
        out.push_back(std::move(rb));
    }
    return out;
}

double measure_torsion(const UnitConformation& unit, const RotatableBond& bond) {
    return measure_dihedral(unit.coords[static_cast<std::size_t>(bond.ref_anchor)],
                            unit.coords[static_cast<std::size_t>(bond.anchor)],
                            unit.coords[static_cast<std::size_t>(bond.moving)],
                            unit.coords[static_cast<std::size_t>(bond.ref_moving)]);
}

namespace {

UnitConformation rotate_about(const UnitConformation& unit, const RotatableBond& rb, double delta) {
    const Vec3& origin = unit.coords[static_cast<std::size_t>(rb.anchor)];
    Vec3 axis = (unit.coords[static_cast<std::size_t>(rb.moving)] - origin).normalized();
    geom::Rotation r = geom::so3_exp(axis * delta);

    UnitConformation out = unit;
    for (int local : rb.moving_side) {
        Vec3& c = out.coords[static_cast<std::size_t>(local)];
        c = origin + r.apply(c - origin);
    }
    return out;
}

} // namespace

UnitConformation rotate_torsion(const UnitConformation& unit, const UnitTopology& topo,
                                const Bond& bond, double delta) {
    int lo = std::min(bond.a, bond.b), hi = std::max(bond.a, bond.b);
    for (const RotatableBond& rb : list_rotatable_bonds(topo)) {
        if (std::min(rb.anchor, rb.moving) == lo && std::max(rb.anchor, rb.moving) == hi)
            return rotate_about(unit, rb, delta);
    }
    throw NotRotatableError("bond (" + std::to_string(bond.a) + ", " + std::to_string(bond.b) +
                            ") is not rotatable");
}

std::vector<double> measure_torsions(const UnitConformation& unit,
                                     const std::vector<RotatableBond>& bonds) {
    std::vector<double> out;
    out.reserve(bonds.size());
    for (const RotatableBond& b : bonds)
        out.push_back(measure_torsion(unit, b));
    return out;
}

UnitConformation apply_torsions(const UnitConformation& unit, const std::vector<RotatableBond>& bonds,
                                const std::vector<double>& targets) {
    if (bonds.size() != targets.size())
        throw SizeMismatchError("torsion target count does not match rotatable bond count");
    UnitConformation out = unit;
    for (std::size_t i = 0; i < bonds.size(); ++i) {
        double delta = wrap_angle(targets[i] - measure_torsion(out, bonds[i]));
        out = rotate_about(out, bonds[i], delta);
    }
    return out;
}

} // namespace polyconf::repr

#ifndef POLYCONF_TESTS_HELPERS_HPP
#define POLYCONF_TESTS_HELPERS_HPP

#include <vector>

#include "polyconf/assembly/assembly.hpp"
#include "polyconf/error.hpp"
#include "polyconf/geom/kabsch.hpp"
#include "polyconf/repr/decompose.hpp"
#include "polyconf/repr/frames.hpp"
#include "polyconf/repr/template_unit.hpp"
#include "polyconf/repr/torsion.hpp"
#include "polyconf/rng.hpp"

namespace polyconf::testing {

using geom::Rotation;
using geom::Vec3;

inline Vec3 random_vec(Rng& rng, double scale = 1.0) {
    return {scale * (2.0 * rng.uniform() - 1.0), scale * (2.0 * rng.uniform() - 1.0),
            scale * (2.0 * rng.uniform() - 1.0)};
}

// Polyethylene-like backbone fragment: C-C-C-C with the four key atoms on the
// chain. One rotatable bond (1,2).
inline repr::UnitTopology pe_unit() {
    repr::UnitTopology topo;
    topo.elements = {"C", "C", "C", "C"};
    topo.bonds = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}};
    topo.key_atoms = {0, 1, 2, 3};
    return topo;
}

// Backbone with an ether-like arm and substituents; two rotatable bonds:
// (1,2) and (1,4).
inline repr::UnitTopology branched_unit() {
    repr::UnitTopology topo;
    topo.elements = {"C", "C", "C", "C", "O", "H", "H", "C"};
    topo.bonds = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {1, 4, 1}, {4, 5, 1}, {2, 6, 1}, {2, 7, 1}};
    topo.key_atoms = {0, 1, 2, 3};
    return topo;
}

// Aromatic-like 6-ring; no rotatable bonds.
inline repr::UnitTopology ring_unit() {
    repr::UnitTopology topo;
    topo.elements = {"C", "C", "C", "C", "C", "C"};
    topo.bonds = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 0, 1}};
    topo.key_atoms = {0, 1, 3, 4};
    return topo;
}

// Random homopolymer unit: a random tree over 3..max_core_atoms core atoms
// with the two borrowed key atoms bonded on (k1 to atom-2, k4 to atom-3).
// Element constraints of the overlap convention are enforced.
inline repr::UnitTopology random_unit_topology(Rng& rng, int core_atoms) {
    static const char* elems[3] = {"C", "N", "O"};
    repr::UnitTopology topo;
    for (int i = 0; i < core_atoms; ++i)
        topo.elements.push_back(elems[rng.bounded(3)]);
    for (int i = 1; i < core_atoms; ++i)
        topo.bonds.push_back({static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i))), i, 1});

    int k2 = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(core_atoms)));
    int k3 = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(core_atoms)));
    while (k3 == k2)
        k3 = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(core_atoms)));

    int k1 = core_atoms;     // borrowed copy of the predecessor's atom-3
    int k4 = core_atoms + 1; // borrowed copy of the successor's atom-2
    topo.elements.push_back(topo.elements[static_cast<std::size_t>(k3)]);
    topo.elements.push_back(topo.elements[static_cast<std::size_t>(k2)]);
    topo.bonds.push_back({k1, k2, 1});
    topo.bonds.push_back({k3, k4, 1});
    topo.key_atoms = {k1, k2, k3, k4};
    return topo;
}

struct RandomChain {
    repr::PolymerGraph graph;
    repr::PolymerConformation conf;
    std::vector<repr::UnitConformation> std_units;
    std::vector<Rotation> rotations;
};

// Chain built from a unit topology: template geometry, random torsions per
// unit, random rotations, assembled. Throws DegenerateFrameError for the rare
// topology whose template frame degenerates (callers retry with a new seed).
inline RandomChain random_chain_from(const repr::UnitTopology& topo, int n_units, Rng& rng) {
    RandomChain chain{repr::PolymerGraph::build(topo, n_units), {}, {}, {}};
    repr::UnitConformation tmpl = repr::make_template_unit(topo);
    std::vector<repr::RotatableBond> bonds = repr::list_rotatable_bonds(topo);

    for (int i = 0; i < n_units; ++i) {
        std::vector<double> targets;
        targets.reserve(bonds.size());
        for (std::size_t b = 0; b < bonds.size(); ++b)
            targets.push_back(repr::wrap_angle((2.0 * rng.uniform() - 1.0) * geom::kPi));
        repr::UnitConformation shaped = repr::apply_torsions(tmpl, bonds, targets);
        shaped.unit_index = i;
        chain.std_units.push_back(
            repr::to_standard(shaped, repr::extract_frame(shaped, topo)));
        chain.rotations.push_back(geom::uniform_rotation(rng));
    }

    assembly::AssemblyInput input;
    input.std_units = chain.std_units;
    input.rotations = chain.rotations;
    input.graph = &chain.graph;
    chain.conf = assembly::assemble(input);
    return chain;
}

// Fresh conformation over an existing chain's graph (new torsions/rotations).
inline repr::PolymerConformation random_chain_from_graph(const RandomChain& chain, Rng& rng) {
    assembly::AssemblyInput input;
    input.graph = &chain.graph;
    for (int i = 0; i < chain.graph.n_units(); ++i) {
        const repr::UnitTopology& topo = chain.graph.unit(i);
        repr::UnitConformation tmpl = repr::make_template_unit(topo, i);
        std::vector<repr::RotatableBond> bonds = repr::list_rotatable_bonds(topo);
        std::vector<double> targets;
        for (std::size_t b = 0; b < bonds.size(); ++b)
            targets.push_back(repr::wrap_angle((2.0 * rng.uniform() - 1.0) * geom::kPi));
        repr::UnitConformation shaped = repr::apply_torsions(tmpl, bonds, targets);
        shaped.unit_index = i;
        input.std_units.push_back(repr::to_standard(shaped, repr::extract_frame(shaped, topo)));
        input.rotations.push_back(geom::uniform_rotation(rng));
    }
    return assembly::assemble(input);
}

// Random chain over a random topology; retries seeds until the geometry is
// non-degenerate.
inline RandomChain random_chain(Rng& rng, int n_units, int min_atoms = 5, int max_atoms = 12) {
    for (;;) {
        int core = min_atoms - 2 +
                   static_cast<int>(rng.bounded(static_cast<std::uint64_t>(max_atoms - min_atoms + 1)));
        repr::UnitTopology topo = random_unit_topology(rng, core);
        try {
            return random_chain_from(topo, n_units, rng);
        } catch (const DegenerateFrameError&) {
            continue;
        }
    }
}

} // namespace polyconf::testing

#endif

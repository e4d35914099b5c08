#ifndef POLYCONF_REPR_TOPOLOGY_HPP
#define POLYCONF_REPR_TOPOLOGY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace polyconf::repr {

// Key-atom roles of an extended repeating unit. Atom-1 is borrowed from the
// preceding unit (it coincides with that unit's atom-3), atom-4 from the
// following unit (it coincides with that unit's atom-2). Atom-3 anchors the
// unit frame.
enum KeyAtomRole : int { kAtom1 = 0, kAtom2 = 1, kAtom3 = 2, kAtom4 = 3 };

struct Bond {
    int a = 0;
    int b = 0;
    int order = 1;

    bool operator==(const Bond&) const = default;
};

// Topology of one extended repeating unit. Atom count covers the whole
// extended unit including the two borrowed overlap atoms.
struct UnitTopology {
    std::vector<std::string> elements;   // per local atom
    std::vector<Bond> bonds;             // local index pairs
    std::array<int, 4> key_atoms{0, 0, 0, 0}; // local index per KeyAtomRole

    int atom_count() const { return static_cast<int>(elements.size()); }
    int key(KeyAtomRole role) const { return key_atoms[static_cast<std::size_t>(role)]; }

    std::vector<std::vector<int>> adjacency() const;

    // Throws InvalidUnitSpecError on out-of-range indices, duplicate key
    // roles, or a disconnected bond graph.
    void validate() const;

    bool operator==(const UnitTopology&) const = default;
};

// Covalent chain of extended repeating units with the overlap bookkeeping
// resolved: each physical atom has one global index, and borrowed key atoms
// map to their owner's index.
class PolymerGraph {
public:
    // Homopolymer chain; head/tail may override the interior unit topology.
    // Requires n_units >= 2.
    static PolymerGraph build(const UnitTopology& unit, int n_units);
    static PolymerGraph build(const UnitTopology& interior, int n_units, const UnitTopology* head,
                              const UnitTopology* tail, double junction_threshold = 2.0);

    int n_units() const { return static_cast<int>(units_.size()); }
    int total_atoms() const { return total_atoms_; }
    const UnitTopology& unit(int i) const { return units_[static_cast<std::size_t>(i)]; }
    const std::vector<UnitTopology>& units() const { return units_; }
    double junction_threshold() const { return junction_threshold_; }

    // Global atom index of a unit's local atom (borrowed atoms resolve to the
    // owning neighbour's atom).
    int global_index(int unit, int local) const {
        return global_index_[static_cast<std::size_t>(unit)][static_cast<std::size_t>(local)];
    }
    // 0-based owner unit of each global atom.
    int owner_unit(int global_atom) const { return owner_unit_[static_cast<std::size_t>(global_atom)]; }
    // Local index of a global atom within its owner unit.
    int owner_local(int global_atom) const { return owner_local_[static_cast<std::size_t>(global_atom)]; }

    // True when the atom at `local` of `unit` is owned by that unit (not a
    // borrowed overlap copy).
    bool owns(int unit, int local) const;

    // Junction bonds: (atom-3 of unit i, atom-2 of unit i+1) as global indices.
    struct Junction {
        int atom_a = 0; // atom-3 of unit i
        int atom_b = 0; // atom-2 of unit i+1
    };
    const std::vector<Junction>& junctions() const { return junctions_; }

    // All covalent bonds of the polymer as global index pairs (deduplicated).
    const std::vector<Bond>& global_bonds() const { return global_bonds_; }

    // FNV-1a hash of the canonical topology serialization; binds conformation
    // files to the graph they were produced from.
    std::uint64_t spec_hash() const { return spec_hash_; }
    std::string spec_hash_hex() const;

    bool same_topology(const PolymerGraph& other) const { return spec_hash_ == other.spec_hash_; }

private:
    std::vector<UnitTopology> units_;
    int total_atoms_ = 0;
    double junction_threshold_ = 2.0;
    std::vector<std::vector<int>> global_index_;
    std::vector<int> owner_unit_;
    std::vector<int> owner_local_;
    std::vector<Junction> junctions_;
    std::vector<Bond> global_bonds_;
    std::uint64_t spec_hash_ = 0;
};

} // namespace polyconf::repr

#endif

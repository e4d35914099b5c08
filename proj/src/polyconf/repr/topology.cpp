#include "polyconf/repr/topology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "polyconf/error.hpp"

namespace polyconf::repr {

std::vector<std::vector<int>> UnitTopology::adjacency() const {
    std::vector<std::vector<int>> adj(elements.size());
    for (const Bond& b : bonds) {
        adj[static_cast<std::size_t>(b.a)].push_back(b.b);
        adj[static_cast<std::size_t>(b.b)].push_back(b.a);
    }
    for (auto& nb : adj)
        std::sort(nb.begin(), nb.end());
    return adj;
}

void UnitTopology::validate() const {
    const int n = atom_count();
    if (n < 4)
        throw InvalidUnitSpecError("extended unit needs at least 4 atoms (the key atoms)");
    for (const Bond& b : bonds) {
        if (b.a < 0 || b.a >= n || b.b < 0 || b.b >= n || b.a == b.b)
            throw InvalidUnitSpecError("bond references an invalid atom index");
        if (b.order < 1)
            throw InvalidUnitSpecError("bond order must be >= 1");
    }
    std::set<int> roles(key_atoms.begin(), key_atoms.end());
    if (roles.size() != 4)
        throw InvalidUnitSpecError("key-atom roles atom-1..atom-4 must be pairwise distinct");
    for (int k : key_atoms)
        if (k < 0 || k >= n)
            throw InvalidUnitSpecError("key-atom index out of range");

    // Connectivity.
    auto adj = adjacency();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b : adj[static_cast<std::size_t>(a)])
            if (!seen[static_cast<std::size_t>(b)]) {
                seen[static_cast<std::size_t>(b)] = 1;
                ++visited;
                stack.push_back(b);
            }
    }
    if (visited != n)
        throw InvalidUnitSpecError("unit bond graph is disconnected");
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t hash_graph(const std::vector<UnitTopology>& units) {
    std::ostringstream canon;
    canon << "polyconf-graph-v1\n" << units.size() << "\n";
    for (const UnitTopology& u : units) {
        canon << "unit " << u.atom_count() << "\n";
        for (const std::string& e : u.elements)
            canon << e << " ";
        canon << "\n";
        std::vector<Bond> sorted = u.bonds;
        for (Bond& b : sorted)
            if (b.a > b.b)
                std::swap(b.a, b.b);
        std::sort(sorted.begin(), sorted.end(), [](const Bond& x, const Bond& y) {
            return std::tie(x.a, x.b, x.order) < std::tie(y.a, y.b, y.order);
        });
        for (const Bond& b : sorted)
            canon << b.a << "," << b.b << "," << b.order << " ";
        canon << "\nkeys " << u.key(kAtom1) << " " << u.key(kAtom2) << " " << u.key(kAtom3) << " "
              << u.key(kAtom4) << "\n";
    }
    std::string s = canon.str();
    return fnv1a(0xcbf29ce484222325ULL, s.data(), s.size());
}

} // namespace

PolymerGraph PolymerGraph::build(const UnitTopology& unit, int n_units) {
    return build(unit, n_units, nullptr, nullptr);
}

PolymerGraph PolymerGraph::build(const UnitTopology& interior, int n_units, const UnitTopology* head,
                                 const UnitTopology* tail, double junction_threshold) {
    if (n_units < 2)
        throw InvalidUnitSpecError("a chain needs at least 2 repeating units");
    interior.validate();
    if (head)
        head->validate();
    if (tail)
        tail->validate();

    PolymerGraph g;
    g.junction_threshold_ = junction_threshold;
    g.units_.reserve(static_cast<std::size_t>(n_units));
    for (int i = 0; i < n_units; ++i) {
        if (i == 0 && head)
            g.units_.push_back(*head);
        else if (i == n_units - 1 && tail)
            g.units_.push_back(*tail);
        else
            g.units_.push_back(interior);
    }

    // Element consistency of the mirrored overlap atoms.
    for (int i = 0; i + 1 < n_units; ++i) {
        const UnitTopology& a = g.units_[static_cast<std::size_t>(i)];
        const UnitTopology& b = g.units_[static_cast<std::size_t>(i + 1)];
        if (a.elements[static_cast<std::size_t>(a.key(kAtom4))] !=
            b.elements[static_cast<std::size_t>(b.key(kAtom2))])
            throw InvalidUnitSpecError("atom-4 of unit " + std::to_string(i + 1) +
                                       " does not match atom-2 of the following unit");
        if (b.elements[static_cast<std::size_t>(b.key(kAtom1))] !=
            a.elements[static_cast<std::size_t>(a.key(kAtom3))])
            throw InvalidUnitSpecError("atom-1 of unit " + std::to_string(i + 2) +
                                       " does not match atom-3 of the preceding unit");
    }

    // First pass: assign global indices to owned atoms. A unit owns every
    // local atom except atom-1 (owned by the preceding unit as its atom-3)
    // and atom-4 (owned by the following unit as its atom-2); the chain head
    // keeps its atom-1 and the tail keeps its atom-4 as terminal caps.
    g.global_index_.assign(static_cast<std::size_t>(n_units), {});
    int next = 0;
    for (int i = 0; i < n_units; ++i) {
        const UnitTopology& u = g.units_[static_cast<std::size_t>(i)];
        auto& map = g.global_index_[static_cast<std::size_t>(i)];
        map.assign(static_cast<std::size_t>(u.atom_count()), -1);
        for (int local = 0; local < u.atom_count(); ++local) {
            bool borrowed_prev = (local == u.key(kAtom1)) && i > 0;
            bool borrowed_next = (local == u.key(kAtom4)) && i < n_units - 1;
            if (borrowed_prev || borrowed_next)
                continue;
            map[static_cast<std::size_t>(local)] = next;
            g.owner_unit_.push_back(i);
            g.owner_local_.push_back(local);
            ++next;
        }
    }
    g.total_atoms_ = next;

    // Second pass: resolve borrowed atoms to the owner's index.
    for (int i = 0; i < n_units; ++i) {
        const UnitTopology& u = g.units_[static_cast<std::size_t>(i)];
        auto& map = g.global_index_[static_cast<std::size_t>(i)];
        if (i > 0) {
            const UnitTopology& prev = g.units_[static_cast<std::size_t>(i - 1)];
            map[static_cast<std::size_t>(u.key(kAtom1))] =
                g.global_index_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(prev.key(kAtom3))];
        }
        if (i < n_units - 1) {
            const UnitTopology& nextu = g.units_[static_cast<std::size_t>(i + 1)];
            map[static_cast<std::size_t>(u.key(kAtom4))] =
                g.global_index_[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(nextu.key(kAtom2))];
        }
    }

    for (int i = 0; i + 1 < n_units; ++i) {
        const UnitTopology& u = g.units_[static_cast<std::size_t>(i)];
        g.junctions_.push_back({g.global_index(i, u.key(kAtom3)),
                                g.global_index(i + 1, g.units_[static_cast<std::size_t>(i + 1)].key(kAtom2))});
    }

    std::set<std::tuple<int, int, int>> bond_set;
    for (int i = 0; i < n_units; ++i)
        for (const Bond& b : g.units_[static_cast<std::size_t>(i)].bonds) {
            int ga = g.global_index(i, b.a);
            int gb = g.global_index(i, b.b);
            bond_set.insert({std::min(ga, gb), std::max(ga, gb), b.order});
        }
    for (const auto& [a, b, order] : bond_set)
        g.global_bonds_.push_back({a, b, order});

    g.spec_hash_ = hash_graph(g.units_);
    return g;
}

bool PolymerGraph::owns(int unit, int local) const {
    int ga = global_index(unit, local);
    return owner_unit_[static_cast<std::size_t>(ga)] == unit;
}

std::string PolymerGraph::spec_hash_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t h = spec_hash_;
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace polyconf::repr

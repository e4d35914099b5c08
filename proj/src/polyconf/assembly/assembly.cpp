#include "polyconf/assembly/assembly.hpp"

#include <string>

#include "polyconf/error.hpp"
#include "polyconf/geom/kabsch.hpp"
#include "polyconf/repr/frames.hpp"

namespace polyconf::assembly {

using geom::Rotation;
using geom::Vec3;
using repr::PolymerConformation;
using repr::PolymerGraph;
using repr::UnitConformation;
using repr::UnitTopology;

UnitConformation apply_rotation(const UnitConformation& std_unit, const Rotation& r,
                                const UnitTopology& topo) {
    if (repr::standard_pose_defect(std_unit, topo) > 1e-6)
        throw NotStandardizedError("unit " + std::to_string(std_unit.unit_index + 1) +
                                   " is not in standard coordinates");
    UnitConformation out;
    out.unit_index = std_unit.unit_index;
    out.coords.reserve(std_unit.coords.size());
    for (const Vec3& c : std_unit.coords)
        out.coords.push_back(r.apply(c));
    return out;
}

std::vector<Vec3> derive_translations(const std::vector<UnitConformation>& rotated_units,
                                      const PolymerGraph& graph) {
    if (static_cast<int>(rotated_units.size()) != graph.n_units())
        throw SizeMismatchError("rotated unit count does not match the graph");

    std::vector<Vec3> translations;
    translations.reserve(rotated_units.size());
    translations.push_back({0.0, 0.0, 0.0});
    for (int i = 1; i < graph.n_units(); ++i) {
        const UnitTopology& prev_topo = graph.unit(i - 1);
        const UnitTopology& topo = graph.unit(i);
        Vec3 placed_prev_a3 =
            rotated_units[static_cast<std::size_t>(i - 1)]
                .coords[static_cast<std::size_t>(prev_topo.key(repr::kAtom3))] +
            translations.back();
        Vec3 rotated_a1 =
            rotated_units[static_cast<std::size_t>(i)].coords[static_cast<std::size_t>(topo.key(repr::kAtom1))];
        translations.push_back(placed_prev_a3 - rotated_a1);
    }
    return translations;
}

PolymerConformation assemble(const AssemblyInput& input) {
    if (!input.graph)
        throw InvalidArgumentError("assembly input is missing the polymer graph");
    const PolymerGraph& graph = *input.graph;
    if (static_cast<int>(input.std_units.size()) != graph.n_units() ||
        static_cast<int>(input.rotations.size()) != graph.n_units())
        throw SizeMismatchError("assembly input lengths do not match the graph");

    std::vector<UnitConformation> rotated;
    rotated.reserve(input.std_units.size());
    for (int i = 0; i < graph.n_units(); ++i)
        rotated.push_back(apply_rotation(input.std_units[static_cast<std::size_t>(i)],
                                         input.rotations[static_cast<std::size_t>(i)], graph.unit(i)));

    std::vector<Vec3> translations = derive_translations(rotated, graph);

    // Each unit writes only the atoms it owns; the overlap copies (atom-1
    // borrowed from the predecessor, atom-4 from the successor) are dropped.
    PolymerConformation out;
    out.coords.assign(static_cast<std::size_t>(graph.total_atoms()), Vec3{});
    for (int i = 0; i < graph.n_units(); ++i) {
        const UnitTopology& topo = graph.unit(i);
        for (int local = 0; local < topo.atom_count(); ++local) {
            if (!graph.owns(i, local))
                continue;
            out.coords[static_cast<std::size_t>(graph.global_index(i, local))] =
                rotated[static_cast<std::size_t>(i)].coords[static_cast<std::size_t>(local)] +
                translations[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

double roundtrip_residual(const PolymerConformation& conf, const PolymerGraph& graph) {
    repr::DecompositionResult dec = repr::decompose(conf, graph);
    AssemblyInput input;
    input.std_units = std::move(dec.units);
    input.rotations.reserve(dec.frames.size());
    for (const geom::RigidTransform& f : dec.frames)
        input.rotations.push_back(f.rotation);
    input.graph = &graph;
    PolymerConformation rebuilt = assemble(input);
    return geom::aligned_rmsd(rebuilt.coords, conf.coords);
}

} // namespace polyconf::assembly

#include "polyconf/repr/decompose.hpp"

#include "polyconf/repr/frames.hpp"

namespace polyconf::repr {

DecompositionResult decompose(const PolymerConformation& conf, const PolymerGraph& graph) {
    validate_conformation(conf, graph);

    DecompositionResult out;
    out.units.reserve(static_cast<std::size_t>(graph.n_units()));
    out.frames.reserve(static_cast<std::size_t>(graph.n_units()));
    for (int i = 0; i < graph.n_units(); ++i) {
        UnitConformation slice = slice_unit(conf, graph, i);
        geom::RigidTransform frame = extract_frame(slice, graph.unit(i));
        out.units.push_back(to_standard(slice, frame));
        out.frames.push_back(frame);
    }
    return out;
}

} // namespace polyconf::repr

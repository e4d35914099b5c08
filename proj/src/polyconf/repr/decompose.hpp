#ifndef POLYCONF_REPR_DECOMPOSE_HPP
#define POLYCONF_REPR_DECOMPOSE_HPP

#include "polyconf/repr/conformation.hpp"

namespace polyconf::repr {

// Splits a full conformation into standardized unit conformations plus their
// frames. Applying each frame to its unit and stripping the overlap copies
// reproduces the input exactly. Throws JunctionViolationError when junction
// atoms are further apart than the graph threshold, DegenerateFrameError on
// collinear key atoms.
DecompositionResult decompose(const PolymerConformation& conf, const PolymerGraph& graph);

} // namespace polyconf::repr

#endif

#ifndef POLYCONF_GEOM_KABSCH_HPP
#define POLYCONF_GEOM_KABSCH_HPP

#include <span>

#include "polyconf/geom/rotation.hpp"
#include "polyconf/geom/vec3.hpp"

namespace polyconf::geom {

struct AlignmentResult {
    RigidTransform transform; // maps P onto Q
    double rmsd = 0.0;        // minimum RMSD of transform(P) against Q
    bool degenerate = false;  // set when the point set is (near-)collinear
};

// Optimal rigid superposition of P onto Q (index correspondence).
// Requires |P| == |Q| >= 3; throws SizeMismatchError otherwise. Reflections
// are repaired by flipping the smallest singular direction. Collinear input
// still yields an optimal transform but sets `degenerate`.
AlignmentResult kabsch_align(std::span<const Vec3> p, std::span<const Vec3> q);

// Plain RMSD without alignment. Requires |P| == |Q| >= 1.
double rmsd(std::span<const Vec3> p, std::span<const Vec3> q);

// Convenience: RMSD after optimal superposition.
double aligned_rmsd(std::span<const Vec3> p, std::span<const Vec3> q);

// Nearest rotation to an arbitrary matrix in the Frobenius sense (polar
// decomposition with the proper-rotation constraint). Throws
// ProjectionFailureError on rank-deficient input.
Rotation nearest_rotation(const Mat3& m);

} // namespace polyconf::geom

#endif

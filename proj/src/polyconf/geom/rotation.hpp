#ifndef POLYCONF_GEOM_ROTATION_HPP
#define POLYCONF_GEOM_ROTATION_HPP

#include "polyconf/geom/mat3.hpp"
#include "polyconf/geom/vec3.hpp"
#include "polyconf/rng.hpp"

namespace polyconf::geom {

inline constexpr double kPi = 3.14159265358979323846;

// Proper rotation (orthonormal, det +1). `from_matrix` validates the
// invariants; composition of validated rotations is not re-checked.
class Rotation {
public:
    Rotation() : m_(Mat3::identity()) {}

    static Rotation identity() { return Rotation(); }

    // Throws InvalidArgumentError when m^T m deviates from I or det from +1
    // by more than `tol` (default 1e-9).
    static Rotation from_matrix(const Mat3& m, double tol = 1e-9);

    // No validation; for internal use where the invariant holds by construction.
    static Rotation from_matrix_unchecked(const Mat3& m) { return Rotation(m); }

    const Mat3& matrix() const { return m_; }
    Vec3 apply(const Vec3& v) const { return m_ * v; }
    Vec3 apply_inverse(const Vec3& v) const { return m_.transpose() * v; }
    Rotation inverse() const { return Rotation(m_.transpose()); }
    Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_); }

    // Max deviation of m^T m from I plus |det - 1|; used by validity checks.
    double orthonormality_defect() const;

private:
    explicit Rotation(const Mat3& m) : m_(m) {}
    Mat3 m_;
};

struct RigidTransform {
    Rotation rotation;
    Vec3 translation;

    Vec3 apply(const Vec3& v) const { return rotation.apply(v) + translation; }
    Vec3 apply_inverse(const Vec3& v) const { return rotation.apply_inverse(v - translation); }

    // Composition: (this ∘ other)(x) = this(other(x)).
    RigidTransform compose(const RigidTransform& other) const {
        return {rotation * other.rotation, rotation.apply(other.translation) + translation};
    }
};

// Orthonormal frame from two non-parallel vectors: column 1 = v1 normalized,
// column 2 = the component of v2 orthogonal to v1 (normalized), column 3 =
// their cross product. Throws DegenerateFrameError if |v1| <= eps_len or the
// angle between v1 and v2 is <= eps_ang.
Rotation gram_schmidt_rotation(const Vec3& v1, const Vec3& v2, double eps_len = 1e-8,
                               double eps_ang = 1e-6);

// Rodrigues exponential of an axis-angle vector.
Rotation so3_exp(const Vec3& omega);

// Axis-angle logarithm. Angles within 1e-6 of pi are ambiguous up to axis
// sign; a canonical branch is returned (largest-magnitude axis component
// positive) and *near_pi, when provided, is set.
Vec3 so3_log(const Rotation& r, bool* near_pi = nullptr);

// || log(r1^T r2) || in [0, pi].
double geodesic_distance(const Rotation& r1, const Rotation& r2);

// Point at parameter s in [0,1] on the geodesic from r1 to r2.
Rotation geodesic_interpolate(const Rotation& r1, const Rotation& r2, double s);

// Haar-uniform random rotation (Shoemake quaternion method).
Rotation uniform_rotation(Rng& rng);

} // namespace polyconf::geom

#endif

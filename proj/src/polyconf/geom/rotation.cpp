#include "polyconf/geom/rotation.hpp"

#include <algorithm>
#include <cmath>

#include "polyconf/error.hpp"

namespace polyconf::geom {

double Rotation::orthonormality_defect() const {
    Mat3 gram = m_.transpose() * m_;
    double worst = gram.max_abs_diff(Mat3::identity());
    return std::max(worst, std::fabs(m_.det() - 1.0));
}

Rotation Rotation::from_matrix(const Mat3& m, double tol) {
    Rotation r(m);
    if (!m.all_finite() || r.orthonormality_defect() > tol)
        throw InvalidArgumentError("matrix is not a proper rotation within tolerance");
    return r;
}

Rotation gram_schmidt_rotation(const Vec3& v1, const Vec3& v2, double eps_len, double eps_ang) {
    double n1 = v1.norm();
    if (!(n1 > eps_len))
        throw DegenerateFrameError("frame vector v1 is too short");
    double ang = angle_between(v1, v2);
    if (!(ang > eps_ang) || !(kPi - ang > eps_ang))
        throw DegenerateFrameError("frame vectors v1 and v2 are parallel");

    Vec3 e1 = v1 / n1;
    Vec3 u2 = v2 - e1 * v2.dot(e1);
    Vec3 e2 = u2 / u2.norm();
    Vec3 e3 = e1.cross(e2);
    return Rotation::from_matrix_unchecked(Mat3::from_columns(e1, e2, e3));
}

Rotation so3_exp(const Vec3& omega) {
    double theta2 = omega.norm_sq();
    double theta = std::sqrt(theta2);
    double a, b; // sin(t)/t and (1-cos(t))/t^2
    if (theta < 1e-8) {
        a = 1.0 - theta2 / 6.0;
        b = 0.5 - theta2 / 24.0;
    } else {
        a = std::sin(theta) / theta;
        b = (1.0 - std::cos(theta)) / theta2;
    }
    Mat3 k;
    k(0, 1) = -omega.z;
    k(0, 2) = omega.y;
    k(1, 0) = omega.z;
    k(1, 2) = -omega.x;
    k(2, 0) = -omega.y;
    k(2, 1) = omega.x;
    Mat3 r = Mat3::identity() + k * a + (k * k) * b;
    return Rotation::from_matrix_unchecked(r);
}

namespace {

// Antisymmetric part of r mapped to a vector: vee((r - r^T)/2) = sin(theta) * axis.
Vec3 skew_vee(const Mat3& r) {
    return {0.5 * (r(2, 1) - r(1, 2)), 0.5 * (r(0, 2) - r(2, 0)), 0.5 * (r(1, 0) - r(0, 1))};
}

} // namespace

Vec3 so3_log(const Rotation& rot, bool* near_pi) {
    const Mat3& r = rot.matrix();
    if (near_pi)
        *near_pi = false;

    double cos_theta = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
    double theta = std::acos(cos_theta);
    Vec3 vee = skew_vee(r);

    if (theta < 1e-4) {
        // vee = sin(theta) * axis; theta/sin(theta) via series.
        double c = 1.0 + theta * theta / 6.0 + 7.0 * theta * theta * theta * theta / 360.0;
        return vee * c;
    }

    if (theta < kPi - 1e-3)
        return vee * (theta / std::sin(theta));

    // Near pi: recover the axis from the symmetric part. (r + r^T)/2 - I =
    // (1 - cos(theta)) (n n^T - I), so B below equals n n^T.
    double f = 1.0 - cos_theta;
    Mat3 b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double sym = 0.5 * (r(i, j) + r(j, i));
            b(i, j) = (sym - (i == j ? 1.0 : 0.0)) / f + (i == j ? 1.0 : 0.0);
        }
    int best = 0;
    for (int j = 1; j < 3; ++j)
        if (b(j, j) > b(best, best))
            best = j;
    Vec3 axis = b.col(best).normalized();

    // Canonical sign: largest-magnitude component positive.
    double ax = std::fabs(axis.x), ay = std::fabs(axis.y), az = std::fabs(axis.z);
    double dominant = (ax >= ay && ax >= az) ? axis.x : (ay >= az ? axis.y : axis.z);
    if (dominant < 0.0)
        axis = -axis;

    if (theta > kPi - 1e-6) {
        if (near_pi)
            *near_pi = true;
    } else if (vee.dot(axis) < 0.0) {
        // Angle still below pi: the antisymmetric part fixes the sign.
        axis = -axis;
    }
    return axis * theta;
}

double geodesic_distance(const Rotation& r1, const Rotation& r2) {
    return so3_log(r1.inverse() * r2).norm();
}

Rotation geodesic_interpolate(const Rotation& r1, const Rotation& r2, double s) {
    Vec3 w = so3_log(r1.inverse() * r2);
    return r1 * so3_exp(w * s);
}

Rotation uniform_rotation(Rng& rng) {
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    double u3 = rng.uniform();
    double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    double qx = a * std::sin(2.0 * kPi * u2);
    double qy = a * std::cos(2.0 * kPi * u2);
    double qz = b * std::sin(2.0 * kPi * u3);
    double qw = b * std::cos(2.0 * kPi * u3);

    Mat3 m;
    m(0, 0) = 1.0 - 2.0 * (qy * qy + qz * qz);
    m(0, 1) = 2.0 * (qx * qy - qz * qw);
    m(0, 2) = 2.0 * (qx * qz + qy * qw);
    m(1, 0) = 2.0 * (qx * qy + qz * qw);
    m(1, 1) = 1.0 - 2.0 * (qx * qx + qz * qz);
    m(1, 2) = 2.0 * (qy * qz - qx * qw);
    m(2, 0) = 2.0 * (qx * qz - qy * qw);
    m(2, 1) = 2.0 * (qy * qz + qx * qw);
    m(2, 2) = 1.0 - 2.0 * (qx * qx + qy * qy);
    return Rotation::from_matrix_unchecked(m);
}

} // namespace polyconf::geom

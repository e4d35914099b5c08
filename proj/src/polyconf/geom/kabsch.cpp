#include "polyconf/geom/kabsch.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "polyconf/error.hpp"

namespace polyconf::geom {

namespace {

Eigen::Matrix3d to_eigen(const Mat3& m) {
    Eigen::Matrix3d out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out(r, c) = m(r, c);
    return out;
}

Mat3 from_eigen(const Eigen::Matrix3d& m) {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out(r, c) = m(r, c);
    return out;
}

} // namespace

AlignmentResult kabsch_align(std::span<const Vec3> p, std::span<const Vec3> q) {
    if (p.size() != q.size())
        throw SizeMismatchError("point sets differ in size");
    if (p.size() < 3)
        throw SizeMismatchError("alignment needs at least 3 points");

    const double n = static_cast<double>(p.size());
    Vec3 pc{}, qc{};
    for (std::size_t i = 0; i < p.size(); ++i) {
        pc += p[i];
        qc += q[i];
    }
    pc = pc / n;
    qc = qc / n;

    // Cross-covariance H = sum (p - pc)(q - qc)^T.
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < p.size(); ++i) {
        Vec3 a = p[i] - pc;
        Vec3 b = q[i] - qc;
        const double av[3] = {a.x, a.y, a.z};
        const double bv[3] = {b.x, b.y, b.z};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                h(r, c) += av[r] * bv[c];
    }

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU();
    Eigen::Matrix3d v = svd.matrixV();
    double d = (v * u.transpose()).determinant();
    Eigen::Vector3d flip(1.0, 1.0, d < 0.0 ? -1.0 : 1.0);
    Eigen::Matrix3d r = v * flip.asDiagonal() * u.transpose();

    AlignmentResult out;
    out.transform.rotation = Rotation::from_matrix_unchecked(from_eigen(r));
    out.transform.translation = qc - out.transform.rotation.apply(pc);

    const Eigen::Vector3d sv = svd.singularValues();
    out.degenerate = sv(1) <= 1e-9 * std::max(1.0, sv(0));

    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        acc += (out.transform.apply(p[i]) - q[i]).norm_sq();
    out.rmsd = std::sqrt(acc / n);
    return out;
}

double rmsd(std::span<const Vec3> p, std::span<const Vec3> q) {
    if (p.size() != q.size())
        throw SizeMismatchError("point sets differ in size");
    if (p.empty())
        throw SizeMismatchError("rmsd needs at least 1 point");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        acc += (p[i] - q[i]).norm_sq();
    return std::sqrt(acc / static_cast<double>(p.size()));
}

double aligned_rmsd(std::span<const Vec3> p, std::span<const Vec3> q) {
    return kabsch_align(p, q).rmsd;
}

Rotation nearest_rotation(const Mat3& m) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d sv = svd.singularValues();
    if (!(sv(2) > 1e-9 * std::max(1.0, sv(0))))
        throw ProjectionFailureError("matrix is rank-deficient; no unique nearest rotation");
    Eigen::Matrix3d u = svd.matrixU();
    Eigen::Matrix3d v = svd.matrixV();
    double d = (u * v.transpose()).determinant();
    Eigen::Vector3d flip(1.0, 1.0, d < 0.0 ? -1.0 : 1.0);
    return Rotation::from_matrix_unchecked(from_eigen(u * flip.asDiagonal() * v.transpose()));
}

} // namespace polyconf::geom

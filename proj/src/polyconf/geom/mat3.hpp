#ifndef POLYCONF_GEOM_MAT3_HPP
#define POLYCONF_GEOM_MAT3_HPP

#include <array>
#include <cmath>

#include "polyconf/geom/vec3.hpp"

namespace polyconf::geom {

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }

    static Mat3 identity() {
        Mat3 out;
        out(0, 0) = out(1, 1) = out(2, 2) = 1.0;
        return out;
    }

    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 out;
        out(0, 0) = c0.x;
        out(1, 0) = c0.y;
        out(2, 0) = c0.z;
        out(0, 1) = c1.x;
        out(1, 1) = c1.y;
        out(2, 1) = c1.z;
        out(0, 2) = c2.x;
        out(1, 2) = c2.y;
        out(2, 2) = c2.z;
        return out;
    }

    Vec3 col(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
    Vec3 row(int r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}; }

    Mat3 transpose() const {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                out(c, r) = (*this)(r, c);
        return out;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                out(r, c) = (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c) + (*this)(r, 2) * o(2, c);
        return out;
    }

    Vec3 operator*(const Vec3& v) const {
        return {(*this)(0, 0) * v.x + (*this)(0, 1) * v.y + (*this)(0, 2) * v.z,
                (*this)(1, 0) * v.x + (*this)(1, 1) * v.y + (*this)(1, 2) * v.z,
                (*this)(2, 0) * v.x + (*this)(2, 1) * v.y + (*this)(2, 2) * v.z};
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 out;
        for (int i = 0; i < 9; ++i)
            out.m[static_cast<std::size_t>(i)] =
                m[static_cast<std::size_t>(i)] + o.m[static_cast<std::size_t>(i)];
        return out;
    }

    Mat3 operator-(const Mat3& o) const {
        Mat3 out;
        for (int i = 0; i < 9; ++i)
            out.m[static_cast<std::size_t>(i)] =
                m[static_cast<std::size_t>(i)] - o.m[static_cast<std::size_t>(i)];
        return out;
    }

    Mat3 operator*(double s) const {
        Mat3 out;
        for (int i = 0; i < 9; ++i)
            out.m[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)] * s;
        return out;
    }

    double det() const {
        const Mat3& a = *this;
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    }

    double trace() const { return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2); }

    double max_abs_diff(const Mat3& o) const {
        double worst = 0.0;
        for (int i = 0; i < 9; ++i)
            worst = std::max(worst, std::fabs(m[static_cast<std::size_t>(i)] -
                                              o.m[static_cast<std::size_t>(i)]));
        return worst;
    }

    bool all_finite() const {
        for (double v : m)
            if (!std::isfinite(v))
                return false;
        return true;
    }
};

} // namespace polyconf::geom

#endif

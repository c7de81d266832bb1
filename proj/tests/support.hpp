#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include <tripanel/geometry.hpp>

namespace test {

using tripanel::Mat3;
using tripanel::Triangle3;
using tripanel::Vec2;
using tripanel::Vec3;

inline double rel_err(double got, double want, double floor = 0.0)
{
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

inline double rel_err(const Vec3& got, const Vec3& want, double floor = 0.0)
{
    return (got - want).norm() / std::max(want.norm(), floor);
}

inline double rel_err(const Mat3& got, const Mat3& want, double floor = 0.0)
{
    return (got - want).norm() / std::max(want.norm(), floor);
}

struct Rng
{
    std::mt19937_64 gen;
    explicit Rng(unsigned long seed) : gen(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
    Vec3 point(double r = 1.0) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }

    Triangle3 triangle(double r = 1.0)
    {
        for (;;) {
            Triangle3 t{point(r), point(r), point(r)};
            const Vec3 n = (t.v2 - t.v1).cross(t.v3 - t.v1);
            // Avoid slivers: area comparable to the squared diameter.
            if (n.norm() > 0.2 * t.diameter() * t.diameter())
                return t;
        }
    }

    Mat3 rotation()
    {
        Eigen::Quaterniond q(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
        q.normalize();
        return q.toRotationMatrix();
    }
};

/// Field point at least `rel` element diameters from the triangle's vertices and plane.
inline Vec3 field_near(Rng& rng, const Triangle3& t, double rel = 0.05)
{
    const Vec3 c = (t.v1 + t.v2 + t.v3) / 3.0;
    const double d = t.diameter();
    const Vec3 n = t.unit_normal();
    for (;;) {
        const Vec3 p = c + rng.point(1.5 * d);
        if (std::abs((p - c).dot(n)) >= rel * d && (p - t.v1).norm() >= rel * d && (p - t.v2).norm() >= rel * d
            && (p - t.v3).norm() >= rel * d)
            return p;
    }
}

} // namespace test

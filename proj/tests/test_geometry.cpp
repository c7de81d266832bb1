#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <tripanel/errors.hpp>
#include <tripanel/geometry.hpp>
#include <tripanel/predicates.hpp>

#include "support.hpp"

using namespace tripanel;
using test::rel_err;

constexpr double pi = std::numbers::pi;

TEST_CASE("orient2d basic signs")
{
    CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) == 1);
    CHECK(orient2d({0, 0}, {1, 1}, {2, 2}) == 0);
    CHECK(orient2d({0, 0}, {0, 1}, {1, 0}) == -1);
}

TEST_CASE("orient2d is exact near collinearity")
{
    // Points on a line through (0.5, 0.5) with slope 1, perturbed by single ulps.
    const double h = std::ldexp(1.0, -53);
    int wrong = 0;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            const Vec2 p(0.5 + i * h, 0.5 + j * h);
            const int got = orient2d(p, {12.0, 12.0}, {24.0, 24.0});
            const int want = (i > j) - (i < j); // sign of (y - x) seen clockwise
            if (got != -want)
                ++wrong;
        }
    CHECK(wrong == 0);
}

TEST_CASE("orient2d antisymmetry and cyclic invariance")
{
    test::Rng rng(11);
    for (int k = 0; k < 500; ++k) {
        const Vec2 a(rng.uniform(-1, 1), rng.uniform(-1, 1)), b(rng.uniform(-1, 1), rng.uniform(-1, 1));
        const Vec2 c = k % 2 ? Vec2(a + 0.37 * (b - a)) : Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1));
        const int s = orient2d(a, b, c);
        CHECK(orient2d(b, c, a) == s);
        CHECK(orient2d(c, a, b) == s);
        CHECK(orient2d(b, a, c) == -s);
        CHECK(orient2d(a, c, b) == -s);
    }
}

TEST_CASE("plane_frame keeps a z = 0 triangle in place")
{
    const Triangle3 t{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const PlaneProjection p = plane_frame(t, {0, 0, 1});
    CHECK((p.frame.rotation - Mat3::Identity()).norm() < 1e-15);
    CHECK(p.field_local.z() == doctest::Approx(1.0));
    CHECK_FALSE(p.in_plane);
}

TEST_CASE("plane_frame of a translated plane")
{
    const Triangle3 t{{0.2, 0.1, 3}, {1, -0.3, 3}, {0.4, 1, 3}};
    const PlaneProjection p = plane_frame(t, {0, 0, 0});
    CHECK(p.field_local.z() == doctest::Approx(-3.0).epsilon(1e-14));
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(p.tri2[i].x() - t[i].x()) < 1e-14);
        CHECK(std::abs(p.tri2[i].y() - t[i].y()) < 1e-14);
    }
}

TEST_CASE("plane_frame rejects zero area")
{
    CHECK_THROWS_AS(plane_frame({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}, {0, 0, 1}), DegenerateElement);
    CHECK_THROWS_AS(plane_frame({{1, 2, 3}, {1, 2, 3}, {0, 0, 1}}, {0, 0, 1}), DegenerateElement);
}

TEST_CASE("plane_frame frame invariants and round trip")
{
    test::Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        const Triangle3 t = rng.triangle(2.0);
        const Vec3 f = rng.point(3.0);
        const PlaneProjection p = plane_frame(t, f);
        const Mat3& R = p.frame.rotation;
        CHECK((R * R.transpose() - Mat3::Identity()).norm() < 1e-12);
        CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-12));
        for (int i = 0; i < 3; ++i) {
            const Vec3 q = p.frame.to_local(t[i]);
            CHECK(std::abs(q.z()) < 1e-12 * t.diameter());
            CHECK(rel_err(p.frame.to_global(q), t[i], 1.0) < 1e-12);
        }
        CHECK(rel_err(p.frame.to_global(p.field_local), f, 1.0) < 1e-12);
        CHECK(std::abs(p.field_local.z() - (f - t.v1).dot(t.unit_normal())) < 1e-12 * (1 + f.norm()));
    }
}

TEST_CASE("plane_frame is covariant under rigid motions")
{
    // The frame is fixed only up to an in-plane rotation, so compare congruence:
    // distances between the projected point and the vertices, and the height.
    test::Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        const Triangle3 t = rng.triangle();
        const Vec3 f = rng.point(2.0);
        const Mat3 Q = rng.rotation();
        const Vec3 shift = rng.point(5.0);
        auto move = [&](const Vec3& v) -> Vec3 { return Q * v + shift; };
        const PlaneProjection a = plane_frame(t, f);
        const PlaneProjection b = plane_frame({move(t.v1), move(t.v2), move(t.v3)}, move(f));
        CHECK(std::abs(a.field_local.z() - b.field_local.z()) < 1e-12 * 8);
        const Vec2 pa(a.field_local.x(), a.field_local.y()), pb(b.field_local.x(), b.field_local.y());
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs((a.tri2[i] - pa).norm() - (b.tri2[i] - pb).norm()) < 1e-12 * 8);
            CHECK(std::abs((a.tri2[i] - a.tri2[(i + 1) % 3]).norm() - (b.tri2[i] - b.tri2[(i + 1) % 3]).norm())
                  < 1e-12 * 8);
        }
        CHECK(orient2d(a.tri2[0], a.tri2[1], a.tri2[2]) == orient2d(b.tri2[0], b.tri2[1], b.tri2[2]));
    }
}

TEST_CASE("plane_frame classifies in-plane points")
{
    const Triangle3 t{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    CHECK(plane_frame(t, {0.2, 0.2, 1e-14}).in_plane);
    CHECK(plane_frame(t, {0.2, 0.2, 1e-14}).field_local.z() == 0.0);
    CHECK_FALSE(plane_frame(t, {0.2, 0.2, 1e-10}).in_plane);
}

TEST_CASE("decompose about the centroid of an equilateral triangle")
{
    const Triangle2 t{Vec2(1, 0), Vec2(std::cos(2 * pi / 3), std::sin(2 * pi / 3)),
                      Vec2(std::cos(4 * pi / 3), std::sin(4 * pi / 3))};
    const auto fr = decompose(t, Vec2(0, 0));
    for (const auto& f : fr) {
        CHECK(f.sign == 1);
        CHECK(f.theta == doctest::Approx(2 * pi / 3).epsilon(1e-14));
        CHECK(f.r1 == doctest::Approx(f.r2).epsilon(1e-14));
    }
}

TEST_CASE("decompose about a vertex leaves one subtriangle")
{
    const Triangle2 t{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
    const auto fr = decompose(t, t[0]);
    CHECK(fr[0].sign == 0);
    CHECK(fr[1].sign == 1);
    CHECK(fr[2].sign == 0);
}

TEST_CASE("decompose outside the triangle")
{
    const Triangle2 t{Vec2(0, 0), Vec2(1, 0), Vec2(0.3, 0.8)};
    const auto fr = decompose(t, Vec2(1.2, 0.9));
    int negative = 0;
    double area = 0.0;
    for (const auto& f : fr) {
        negative += f.theta < 0;
        area += f.sign * 0.5 * f.r1 * f.r2 * std::abs(std::sin(f.theta));
    }
    CHECK(negative == 1);
    CHECK(rel_err(area, shoelace_area(t)) < 1e-12);
}

TEST_CASE("decompose signed areas sum to the triangle area")
{
    test::Rng rng(7);
    for (int k = 0; k < 500; ++k) {
        const Triangle2 t{Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1)), Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                          Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        if (std::abs(shoelace_area(t)) < 0.05)
            continue;
        const Vec2 p0(rng.uniform(-2, 2), rng.uniform(-2, 2));
        double area = 0.0;
        for (const auto& f : decompose(t, p0)) {
            CHECK(f.r1 >= 0.0);
            CHECK(f.r2 >= 0.0);
            CHECK(std::abs(f.theta) <= pi);
            CHECK(f.sign == (f.theta > 0) - (f.theta < 0));
            area += f.sign * 0.5 * f.r1 * f.r2 * std::abs(std::sin(f.theta));
        }
        CHECK(rel_err(area, shoelace_area(t)) < 1e-12);
    }
}

TEST_CASE("subtriangle frame: psi is the azimuth of the vertex after p0")
{
    const SubTriangleFrame f = make_frame(Vec2(1, 1), Vec2(1, 3), Vec2(0, 1));
    CHECK(f.psi == doctest::Approx(pi / 2));
    CHECK(f.r1 == doctest::Approx(2.0));
    CHECK(f.r2 == doctest::Approx(1.0));
    CHECK(f.theta == doctest::Approx(pi / 2));
}

TEST_CASE("rbar reaches both vertices")
{
    test::Rng rng(9);
    for (int k = 0; k < 200; ++k) {
        const SubTriangleFrame f = make_frame(Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                                              Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                                              Vec2(rng.uniform(-1, 1), rng.uniform(-1, 1)));
        if (f.sign == 0 || std::abs(std::sin(f.theta)) < 0.05)
            continue;
        CHECK(rel_err(f.rbar(0.0), f.r1) < 1e-12);
        CHECK(rel_err(f.rbar(f.theta), f.r2) < 1e-12);
        // The third side satisfies x = r1 + a y in the frame with A on the x axis.
        const double x = f.r2 * std::cos(f.theta), y = f.r2 * std::sin(f.theta);
        CHECK(std::abs(x - (f.r1 + f.a * y)) < 1e-12 * (1 + std::abs(x)));
    }
}

TEST_CASE("angular_geometry examples")
{
    SUBCASE("right angle slope")
    {
        const AngularGeometry g = angular_geometry(SubTriangleFrame::from_polar(1, 1, pi / 2), 0.0);
        const SubTriangleFrame f = SubTriangleFrame::from_polar(1, 1, pi / 2);
        CHECK(f.a == doctest::Approx(-1.0));
        CHECK(f.phi == doctest::Approx(-pi / 4));
        CHECK(g.beta == doctest::Approx(1 / std::sqrt(2.0)));
        CHECK(g.alpha == 0.0);
        CHECK(g.alpha_p == 1.0);
        CHECK(g.lower.theta == doctest::Approx(-pi / 4));
        CHECK(g.upper.theta == doctest::Approx(pi / 4));
    }
    SUBCASE("first vertex over the projection")
    {
        // r1 = 0 is a collinear (skipped) frame; beta still reduces to |z|.
        CHECK(reference_beta(0.0, 0.7, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(reference_beta(0.0, -2.0, -0.3) == doctest::Approx(0.3).epsilon(1e-15));
        CHECK_THROWS_AS(angular_geometry(SubTriangleFrame::from_polar(0.0, 1.0, 0.8), 0.3), DegenerateFrame);
    }
    SUBCASE("collinear frame")
    {
        CHECK_THROWS_AS(angular_geometry(SubTriangleFrame::from_polar(1.0, 2.0, 0.0), 0.3), DegenerateFrame);
    }
}

TEST_CASE("angular_geometry invariants")
{
    test::Rng rng(13);
    for (int k = 0; k < 300; ++k) {
        const SubTriangleFrame f =
            SubTriangleFrame::from_polar(rng.uniform(0.01, 2), rng.uniform(0.01, 2), rng.uniform(-3.0, 3.0));
        if (std::abs(std::sin(f.theta)) < 1e-3)
            continue;
        const double z = k % 3 == 0 ? 0.0 : rng.uniform(-2, 2);
        const AngularGeometry g = angular_geometry(f, z);
        CHECK(std::abs(g.alpha * g.alpha + g.alpha_p * g.alpha_p - 1.0) < 1e-14);
        CHECK(g.beta >= std::abs(z));
        CHECK(g.beta == doctest::Approx(reference_beta(f.r1, f.a, z)).epsilon(1e-14));
        for (double t = g.lower.theta; t <= g.upper.theta; t += 0.01) {
            const double dl = std::sqrt(1 - g.alpha * g.alpha * std::sin(t) * std::sin(t));
            CHECK(dl >= g.alpha_p - 1e-15);
            CHECK(dl <= 1.0);
        }
    }
}

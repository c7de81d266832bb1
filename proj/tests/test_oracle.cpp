#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <tripanel/errors.hpp>
#include <tripanel/oracle.hpp>

using namespace tripanel;

namespace {

constexpr double pi = std::numbers::pi;

const Triangle2 right{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};

} // namespace

TEST_CASE("vertex potential by the polar transform")
{
    const QuadResult q = quad_triangle(0, 0, -1, right, Vec3(0, 0, 0));
    CHECK(std::abs(q.value - 1.2464504802804610) < 1e-12);
    CHECK(std::abs(q.value - std::sqrt(2.0) * std::log(1 + std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("region integral whatever the vertex order")
{
    const Triangle2 cw{right[0], right[2], right[1]};
    for (const Vec3& f : {Vec3(0.2, 0.3, 0.0), Vec3(0.2, 0.3, 0.4), Vec3(1.5, -0.5, 0.0)}) {
        const double a = quad_triangle(0, 0, -1, right, f).value, b = quad_triangle(0, 0, -1, cw, f).value;
        CHECK(a > 0.0);
        CHECK(std::abs(a - b) < 1e-13);
    }
}

TEST_CASE("zero area gives zero")
{
    const Triangle2 flat{Vec2(0, 0), Vec2(1, 1), Vec2(2, 2)};
    CHECK(quad_triangle(0, 0, -3, flat, Vec3(0.3, 0.1, 0.2)).value == 0.0);
    CHECK(quad_triangle(0, 0, -1, flat, Vec3(0.3, 0.1, 0.0)).value == 0.0);
    const SubTriangleFrame f = make_frame(Vec2(0, 0), Vec2(1, 0), Vec2(2, 0));
    CHECK(finite_part_oracle(0, 0, -3, f) == 0.0);
}

TEST_CASE("solid angle of half a cube face")
{
    const Triangle2 half{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1)};
    const QuadResult q = quad_triangle(0, 0, -3, half, Vec3(0.5, 0.5, 0.5));
    CHECK(std::abs(0.5 * q.value - pi / 3) < 1e-12);
}

TEST_CASE("tightening the tolerance stays within the error estimate")
{
    const Triangle2 half{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1)};
    QuadratureConfig loose;
    loose.rel_tol = 1e-8;
    QuadratureConfig tight;
    tight.rel_tol = 5e-9;
    QuadratureConfig exact;
    exact.rel_tol = 1e-13;
    for (const Vec3& f : {Vec3(0.5, 0.5, 0.05), Vec3(0.9, 0.2, 0.01), Vec3(2.0, 1.0, 0.3)}) {
        const QuadResult a = quad_triangle(1, 0, -3, half, f, loose);
        const QuadResult b = quad_triangle(1, 0, -3, half, f, tight);
        const QuadResult c = quad_triangle(1, 0, -3, half, f, exact);
        CHECK(b.error <= a.error);
        CHECK(std::abs(a.value - c.value) <= a.error + 1e-15);
        CHECK(std::abs(b.value - c.value) <= b.error + 1e-15);
    }
}

TEST_CASE("budgets and configuration")
{
    QuadratureConfig cfg;
    cfg.max_cells = 40;
    CHECK_THROWS_AS(quad_triangle(0, 0, -5, right, Vec3(0.3, 0.3, 1e-4), cfg), NoConvergence);
    cfg = {};
    cfg.max_depth = 3;
    CHECK_THROWS_AS(quad_triangle(0, 0, -5, right, Vec3(0.3, 0.3, 1e-4), cfg), NoConvergence);

    QuadratureConfig bad;
    bad.rel_tol = 1e-15;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.max_depth = 41;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_NOTHROW(QuadratureConfig{}.validate());
    CHECK_THROWS_AS(quad_triangle(0, 0, -3, right, Vec3(0.2, 0.2, 0.0)), DomainError);
}

TEST_CASE("finite-part oracle on the right isosceles vertex")
{
    // Hadamard part of integral of 1/r^3 over the triangle about its right-angle
    // vertex: the ray length is 1 / (cos u + sin u), the radial part is -1/rbar.
    const SubTriangleFrame f = SubTriangleFrame::from_polar(1, 1, pi / 2);
    CHECK(std::abs(finite_part_oracle(0, 0, -3, f) + 2.0) < 1e-12);
}

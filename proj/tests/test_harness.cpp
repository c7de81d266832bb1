#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <tripanel/errors.hpp>
#include <tripanel/harness.hpp>

using namespace tripanel;

namespace {

constexpr double pi = std::numbers::pi;

int vertex_index(const MeshSurface& mesh, const Vec3& p)
{
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        if ((mesh.vertices[i] - p).norm() < 1e-15)
            return static_cast<int>(i);
    return -1;
}

} // namespace

TEST_CASE("point source boundary data")
{
    const MeshSurface mesh = cube_mesh(2);
    const BoundaryData bc = point_source_bc(mesh, Vec3(0, 0, 0));
    const int v = vertex_index(mesh, Vec3(0.5, 0, 0));
    REQUIRE(v >= 0);
    CHECK(bc.phi[v] == doctest::Approx(1 / (2 * pi)).epsilon(1e-15));
    int corners = 0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        for (int k = 0; k < 3; ++k)
            if (mesh.triangles[t][k] == v) {
                CHECK(bc.dphi_dn[t][k] == doctest::Approx(-1 / pi).epsilon(1e-15));
                ++corners;
            }
    CHECK(corners > 0);
    for (double p : bc.phi)
        CHECK(p > 0.0);

    CHECK_THROWS_AS(point_source_bc(mesh, Vec3(2, 0, 0)), SourceOutside);
    CHECK_THROWS_AS(point_source_bc(mesh, Vec3(0.5, 0.1, 0.1)), SourceOutside);
    CHECK_NOTHROW(point_source_bc(mesh, Vec3(0.25, 0.25, 0.25)));
}

TEST_CASE("point source field")
{
    const Vec3 s(0.25, 0.25, 0.25), x(1.0, -0.5, 2.0);
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
        const Vec3 e = Vec3::Unit(j) * h;
        const double fd = (point_source_potential(s, x + e) - point_source_potential(s, x - e)) / (2 * h);
        CHECK(std::abs(fd - point_source_gradient(s, x)[j]) < 1e-9);
    }
}

TEST_CASE("power-law fit")
{
    const PowerFit f = fit_power_law({0.5, 0.25, 0.125, 0.0625}, {0.25, 0.0625, 0.015625, 0.00390625});
    CHECK(f.p == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.C == doctest::Approx(1.0).epsilon(1e-13));
    const PowerFit g = fit_power_law({0.5, 0.1}, {2.72 * std::pow(0.5, 2.12), 2.72 * std::pow(0.1, 2.12)});
    CHECK(g.p == doctest::Approx(2.12).epsilon(1e-13));
    CHECK(g.C == doctest::Approx(2.72).epsilon(1e-13));
    CHECK_THROWS_AS(fit_power_law({0.5}, {0.1}), std::invalid_argument);
}

TEST_CASE("representation reproduces the exterior field and vanishes inside")
{
    const MeshSurface mesh = cube_mesh(4);
    const Vec3 s(0.25, 0.25, 0.25);
    const BoundaryData bc = point_source_bc(mesh, s);
    const std::vector<Vec3> out = {Vec3(1.5, 0, 0), Vec3(-1, 1, 0.5), Vec3(0, 0, -2)};
    const auto g = field_gradient(mesh, bc, out);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Vec3 want = point_source_gradient(s, out[i]);
        CHECK((g[i] - want).norm() < 0.05 * want.norm());
    }
    const auto inside = representation_gradient(mesh, bc, {Vec3(-0.2, -0.1, 0.0)});
    CHECK(inside[0].norm() < 0.05 * point_source_gradient(s, Vec3(-0.2, -0.1, 0.0)).norm());

    CHECK_THROWS_AS(field_gradient(mesh, bc, {Vec3(0, 0, 0)}), EvalPointInsideOrOnSurface);
    CHECK_THROWS_AS(field_gradient(mesh, bc, {Vec3(0.5, 0.1, 0.2)}), EvalPointInsideOrOnSurface);
}

TEST_CASE("threaded evaluation is bit-identical")
{
    const MeshSurface mesh = cube_mesh(2);
    const BoundaryData bc = point_source_bc(mesh, Vec3(0.25, 0.25, 0.25));
    CubeStudyConfig cfg;
    cfg.grid = 8;
    const auto pts = cube_study_points(cfg);
    const auto a = representation_gradient(mesh, bc, pts, 1);
    const auto b = representation_gradient(mesh, bc, pts, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == b[i]);
}

TEST_CASE("cube study grid and a coarse row")
{
    const CubeStudyConfig cfg;
    const auto pts = cube_study_points(cfg);
    CHECK(pts.size() == 960);
    for (const Vec3& p : pts)
        CHECK(std::max(std::abs(p.x()), std::abs(p.y())) > 0.5);

    const CubeStudyRow row = cube_gradient_error(0.5, cfg);
    CHECK(row.triangles == 48);
    CHECK(row.points == 960);
    CHECK(row.epsilon > 0.0);
    CHECK(row.epsilon < 1.0);
    CHECK_THROWS_AS(cube_gradient_error(0.3, cfg), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study({0.25, 0.5}, cfg), std::invalid_argument);
}

TEST_CASE("single-triangle study")
{
    const auto rows = single_triangle_study();
    REQUIRE(rows.size() == 5);
    const auto pts = study_points();
    double e2 = 0.0;
    for (const TriangleStudyRow& r : rows) {
        CHECK(r.xy == pts[r.point - 1]);
        CAPTURE(r.point);
        CHECK(r.eps[0] <= 1e-9);
        CHECK(r.eps[1] <= 1e-8);
        CHECK(r.eps[2] <= 1e-7);
        e2 = std::max(e2, r.eps[1]);
    }
    CHECK(rows[4].eps[0] <= 1e-12);
    CHECK(rows[0].eps[1] <= 1e-10);
    CHECK(e2 <= 7e-9);
    // Point 1 is a vertex of the study triangle.
    const Triangle3 t = study_triangle();
    CHECK(Vec2(t.v1.x(), t.v1.y()) == pts[0]);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <tripanel/errors.hpp>
#include <tripanel/mesh.hpp>

using namespace tripanel;

TEST_CASE("cube mesh counts")
{
    const MeshCheck one = check_mesh(cube_mesh(1));
    CHECK(one.vertices == 8);
    CHECK(one.faces == 12);
    const MeshCheck two = check_mesh(cube_mesh(2));
    CHECK(two.vertices == 26);
    CHECK(two.faces == 48);
    CHECK(two.edges == 72);
    CHECK_THROWS_AS(cube_mesh(0), std::invalid_argument);
}

TEST_CASE("cube mesh is closed, oriented and outward")
{
    for (int n : {1, 2, 3, 5, 8}) {
        const MeshSurface mesh = cube_mesh(n);
        const MeshCheck c = check_mesh(mesh);
        CAPTURE(n);
        CHECK(c.closed);
        CHECK(c.consistently_oriented);
        CHECK(c.euler() == 2);
        CHECK(c.faces == 12L * n * n);
        for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
            const Triangle3 tri = mesh.triangle(t);
            const Vec3 centroid = (tri.v1 + tri.v2 + tri.v3) / 3.0;
            CHECK(tri.unit_normal().dot(centroid) > 0.0);
        }
        CHECK(std::abs(winding_number(mesh, Vec3(0.1, 0.2, -0.3)) - 1.0) < 1e-12);
        CHECK(std::abs(winding_number(mesh, Vec3(1.1, 0.2, -0.3))) < 1e-12);
    }
}

TEST_CASE("surface distance")
{
    const MeshSurface mesh = cube_mesh(2);
    CHECK(surface_distance(mesh, Vec3(0, 0, 0)) == doctest::Approx(0.5));
    CHECK(surface_distance(mesh, Vec3(2, 0, 0)) == doctest::Approx(1.5));
    CHECK(surface_distance(mesh, Vec3(1.5, 1.5, 0)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(surface_distance(mesh, Vec3(0.5, 0.1, 0.2)) < 1e-15);
}

TEST_CASE("open and flipped meshes fail the checks")
{
    MeshSurface mesh = cube_mesh(1);
    mesh.triangles.pop_back();
    CHECK_FALSE(check_mesh(mesh).closed);
    mesh = cube_mesh(1);
    std::swap(mesh.triangles[0][1], mesh.triangles[0][2]);
    const MeshCheck c = check_mesh(mesh);
    CHECK(c.closed);
    CHECK_FALSE(c.consistently_oriented);
}

TEST_CASE("OFF round trip")
{
    const MeshSurface mesh = cube_mesh(3);
    std::stringstream s;
    write_off(mesh, s);
    const MeshSurface back = read_off(s);
    REQUIRE(back.vertices.size() == mesh.vertices.size());
    REQUIRE(back.triangles == mesh.triangles);
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        CHECK(back.vertices[i] == mesh.vertices[i]);

    std::istringstream commented("OFF\n# a comment\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
    CHECK(read_off(commented).triangles.size() == 1);
}

TEST_CASE("OFF parse errors")
{
    for (const char* text : {"", "PLY\n3 1 0\n", "OFF\n3 1 0\n0 0 0\n1 0 0\n", "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2 0\n",
                             "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n", "OFF\nx y z\n"}) {
        std::istringstream in(text);
        CAPTURE(text);
        CHECK_THROWS_AS(read_off(in), ParseError);
    }
}

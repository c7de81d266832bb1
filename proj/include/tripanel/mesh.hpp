#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <tripanel/geometry.hpp>

namespace tripanel {

/// Triangulated surface; triangle vertex order gives the normal by the right-hand rule.
struct MeshSurface
{
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    bool outward = true;

    Triangle3 triangle(std::size_t t) const
    {
        const auto& f = triangles[t];
        return {vertices[f[0]], vertices[f[1]], vertices[f[2]]};
    }
};

/// Unit cube centred at the origin, each face split into 2 n^2 right triangles,
/// shared vertices merged, outward winding. Requires n >= 1.
MeshSurface cube_mesh(int n);

struct MeshCheck
{
    long vertices = 0;
    long edges = 0;
    long faces = 0;
    bool closed = false;                ///< every edge shared by exactly two triangles
    bool consistently_oriented = false; ///< the two uses of each edge run opposite ways
    long euler() const { return vertices - edges + faces; }
};

MeshCheck check_mesh(const MeshSurface& mesh);

/// Generalized winding number (total solid angle / 4 pi) of a closed mesh about p:
/// 1 inside an outward-oriented surface, 0 outside.
double winding_number(const MeshSurface& mesh, const Vec3& p);

/// Euclidean distance from p to the nearest point of the surface.
double surface_distance(const MeshSurface& mesh, const Vec3& p);

/// ASCII OFF: "OFF", counts line "V F 0", vertex lines, face lines "3 i j k".
void write_off(const MeshSurface& mesh, std::ostream& out);
/// Throws ParseError on malformed input or non-triangular faces.
MeshSurface read_off(std::istream& in);

} // namespace tripanel

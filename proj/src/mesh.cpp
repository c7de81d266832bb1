#include <tripanel/mesh.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Geometry>

#include <tripanel/errors.hpp>

namespace tripanel {

MeshSurface cube_mesh(int n)
{
    if (n < 1)
        throw std::invalid_argument("cube_mesh: n must be at least 1");

    MeshSurface mesh;
    std::map<std::array<int, 3>, int> index;
    auto vertex = [&](std::array<int, 3> g) {
        auto [it, inserted] = index.try_emplace(g, static_cast<int>(mesh.vertices.size()));
        if (inserted)
            mesh.vertices.emplace_back(g[0] / double(n) - 0.5, g[1] / double(n) - 0.5, g[2] / double(n) - 0.5);
        return it->second;
    };

    for (int axis = 0; axis < 3; ++axis)
        for (int side = 0; side < 2; ++side) {
            // (u, v) span the face with u x v along the outward normal.
            int u = (axis + 1) % 3, v = (axis + 2) % 3;
            if (side == 0)
                std::swap(u, v);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    auto at = [&](int di, int dj) {
                        std::array<int, 3> g{};
                        g[axis] = side * n;
                        g[u] = i + di;
                        g[v] = j + dj;
                        return vertex(g);
                    };
                    const int a = at(0, 0), b = at(1, 0), c = at(1, 1), d = at(0, 1);
                    mesh.triangles.push_back({a, b, c});
                    mesh.triangles.push_back({a, c, d});
                }
        }
    return mesh;
}

MeshCheck check_mesh(const MeshSurface& mesh)
{
    // Directed edge counts keyed by the undirected pair.
    std::map<std::pair<int, int>, std::pair<int, int>> uses;
    for (const auto& f : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            const int a = f[k], b = f[(k + 1) % 3];
            auto& u = uses[{std::min(a, b), std::max(a, b)}];
            (a < b ? u.first : u.second) += 1;
        }

    MeshCheck c;
    c.vertices = static_cast<long>(mesh.vertices.size());
    c.faces = static_cast<long>(mesh.triangles.size());
    c.edges = static_cast<long>(uses.size());
    c.closed = true;
    c.consistently_oriented = true;
    for (const auto& [edge, u] : uses) {
        if (u.first + u.second != 2)
            c.closed = false;
        if (u.first != 1 || u.second != 1)
            c.consistently_oriented = false;
    }
    return c;
}

double winding_number(const MeshSurface& mesh, const Vec3& p)
{
    double total = 0.0;
    for (const auto& f : mesh.triangles) {
        const Vec3 a = mesh.vertices[f[0]] - p, b = mesh.vertices[f[1]] - p, c = mesh.vertices[f[2]] - p;
        const double la = a.norm(), lb = b.norm(), lc = c.norm();
        const double num = a.dot(b.cross(c));
        const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
        total += 2.0 * std::atan2(num, den);
    }
    return total / (4.0 * std::numbers::pi);
}

namespace {

// Closest point on triangle abc to p (region-based projection).
Vec3 closest_point(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c)
{
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0)
        return a;
    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3)
        return b;
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0)
        return a + d1 / (d1 - d3) * ab;
    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6)
        return c;
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0)
        return a + d2 / (d2 - d6) * ac;
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && d4 - d3 >= 0.0 && d5 - d6 >= 0.0)
        return b + (d4 - d3) / ((d4 - d3) + (d5 - d6)) * (c - b);
    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

} // namespace

double surface_distance(const MeshSurface& mesh, const Vec3& p)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : mesh.triangles) {
        const Vec3 q = closest_point(p, mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
        best = std::min(best, (q - p).norm());
    }
    return best;
}

void write_off(const MeshSurface& mesh, std::ostream& out)
{
    out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
    out.precision(17);
    for (const Vec3& v : mesh.vertices)
        out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (const auto& f : mesh.triangles)
        out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

namespace {

// Next line with content, comments (#) stripped.
bool next_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return true;
    }
    return false;
}

} // namespace

MeshSurface read_off(std::istream& in)
{
    std::string line;
    if (!next_line(in, line) || line.substr(0, 3) != "OFF")
        throw ParseError("OFF: missing header");
    std::string rest = line.substr(3);
    if (rest.find_first_not_of(" \t\r") == std::string::npos && !next_line(in, rest))
        throw ParseError("OFF: missing counts line");

    long nv = -1, nf = -1, ne = 0;
    {
        std::istringstream counts(rest);
        if (!(counts >> nv >> nf) || nv < 0 || nf < 0)
            throw ParseError("OFF: bad counts line");
        counts >> ne;
    }

    MeshSurface mesh;
    mesh.vertices.reserve(nv);
    for (long i = 0; i < nv; ++i) {
        if (!next_line(in, line))
            throw ParseError("OFF: truncated vertex list");
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x >> y >> z) || !std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw ParseError("OFF: bad vertex line " + std::to_string(i));
        mesh.vertices.emplace_back(x, y, z);
    }
    for (long i = 0; i < nf; ++i) {
        if (!next_line(in, line))
            throw ParseError("OFF: truncated face list");
        std::istringstream ls(line);
        int k, a, b, c;
        if (!(ls >> k) || k != 3)
            throw ParseError("OFF: face " + std::to_string(i) + " is not a triangle");
        if (!(ls >> a >> b >> c))
            throw ParseError("OFF: bad face line " + std::to_string(i));
        for (int idx : {a, b, c})
            if (idx < 0 || idx >= nv)
                throw ParseError("OFF: face " + std::to_string(i) + " index out of range");
        mesh.triangles.push_back({a, b, c});
    }
    return mesh;
}

} // namespace tripanel

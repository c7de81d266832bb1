#include <tripanel/geometry.hpp>

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

#include <tripanel/errors.hpp>

namespace tripanel {

double Triangle3::diameter() const
{
    return std::max({(v2 - v1).norm(), (v3 - v2).norm(), (v1 - v3).norm()});
}

Vec3 Triangle3::unit_normal() const
{
    return (v2 - v1).cross(v3 - v1).normalized();
}

namespace {

Mat3 skew(const Vec3& v)
{
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
         -v.y(), v.x(), 0.0;
    return m;
}

// Smallest rotation taking the unit vector n onto +z. For normals in the lower
// hemisphere a half turn about x is applied first so the Rodrigues denominator
// stays away from zero.
Mat3 align_with_z(const Vec3& n)
{
    Mat3 flip = Mat3::Identity();
    Vec3 m = n;
    if (n.z() < 0.0) {
        flip.diagonal() << 1.0, -1.0, -1.0;
        m = flip * n;
    }
    const Vec3 v = m.cross(Vec3::UnitZ());
    const double c = m.z();
    const Mat3 k = skew(v);
    const Mat3 r = Mat3::Identity() + k + k * k / (1.0 + c);
    return r * flip;
}

bool projections_collinear(const Triangle3& t)
{
    auto proj = [](const Vec3& p, int i, int j) { return Vec2(p[i], p[j]); };
    const int planes[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (const auto& ij : planes) {
        if (orient2d(proj(t.v1, ij[0], ij[1]), proj(t.v2, ij[0], ij[1]), proj(t.v3, ij[0], ij[1])) != 0)
            return false;
    }
    return true;
}

} // namespace

PlaneProjection plane_frame(const Triangle3& tri, const Vec3& field)
{
    if (projections_collinear(tri))
        throw DegenerateElement();

    const Vec3 n = tri.unit_normal();
    PlaneProjection out;
    PlaneFrame& f = out.frame;
    f.rotation = align_with_z(n);
    f.plane_z = (n.dot(tri.v1) + n.dot(tri.v2) + n.dot(tri.v3)) / 3.0;
    f.origin_offset = f.plane_z * n;

    for (int i = 0; i < 3; ++i) {
        const Vec3 q = f.to_local(tri[i]);
        out.tri2[i] = Vec2(q.x(), q.y());
    }
    out.field_local = f.to_local(field);
    if (std::abs(out.field_local.z()) <= in_plane_tolerance * tri.diameter()) {
        out.field_local.z() = 0.0;
        out.in_plane = true;
    }
    return out;
}

double SubTriangleFrame::rbar(double theta_prime) const
{
    return r1 / (std::sqrt(1.0 + a * a) * std::cos(theta_prime + phi));
}

SubTriangleFrame SubTriangleFrame::from_polar(double r1, double r2, double theta)
{
    return make_frame(Vec2::Zero(), Vec2(r1, 0.0), Vec2(r2 * std::cos(theta), r2 * std::sin(theta)));
}

SubTriangleFrame make_frame(const Vec2& p0, const Vec2& A, const Vec2& B)
{
    SubTriangleFrame f;
    f.edge1 = A - p0;
    f.edge2 = B - p0;
    f.r1 = f.edge1.norm();
    f.r2 = f.edge2.norm();
    f.psi = std::atan2(f.edge1.y(), f.edge1.x());
    f.sign = orient2d(p0, A, B);
    if (f.sign == 0)
        return f;

    const double cross = std::abs(orient2d_value(p0, A, B));
    const Vec2 side = B - A;
    const double length = side.norm();
    f.d = cross / length;
    f.t1 = f.sign * f.edge1.dot(side) / length;
    f.t2 = f.sign * f.edge2.dot(side) / length;
    f.theta = f.sign * std::atan2(cross, f.edge1.dot(f.edge2));
    f.phi = std::atan2(f.t1, f.d);
    f.a = f.t1 / f.d;
    return f;
}

std::array<SubTriangleFrame, 3> decompose(const Triangle2& tri2, const Vec2& p0)
{
    return {make_frame(p0, tri2[0], tri2[1]),
            make_frame(p0, tri2[1], tri2[2]),
            make_frame(p0, tri2[2], tri2[0])};
}

Angle Angle::of(double theta)
{
    return {theta, std::sin(theta), std::cos(theta)};
}

AngularGeometry angular_geometry(const SubTriangleFrame& frame, double z)
{
    if (frame.sign == 0 || frame.r2 * std::abs(std::sin(frame.theta)) == 0.0)
        throw DegenerateFrame();

    AngularGeometry g;
    g.z = z;
    g.height = std::abs(z);
    g.d = frame.d;
    g.beta = std::hypot(frame.d, g.height);
    if (g.beta == 0.0)
        throw DegenerateFrame("degenerate subtriangle frame: field point on the third side's line");
    g.alpha = g.height / g.beta;
    g.alpha_p = frame.d / g.beta;
    g.phi = frame.phi;
    g.theta = frame.theta;
    g.r1 = frame.r1;
    g.r2 = frame.r2;
    g.lower = frame.r1 > 0.0 ? Angle{frame.phi, frame.t1 / frame.r1, frame.d / frame.r1}
                             : Angle::of(frame.phi);
    g.upper = Angle{frame.phi + frame.theta, frame.t2 / frame.r2, frame.d / frame.r2};
    return g;
}

double reference_beta(double r1, double a, double z)
{
    const double k = 1.0 + a * a;
    return std::sqrt((r1 * r1 + z * z * k) / k);
}

double shoelace_area(const Triangle2& t)
{
    return 0.5 * ((t[1].x() - t[0].x()) * (t[2].y() - t[0].y())
                  - (t[2].x() - t[0].x()) * (t[1].y() - t[0].y()));
}

} // namespace tripanel

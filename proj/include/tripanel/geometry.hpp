#pragma once

#include <array>

#include <Eigen/Core>

#include <tripanel/predicates.hpp>

namespace tripanel {

using Mat3 = Eigen::Matrix3d;

/// Field points closer than this fraction of the element diameter to the element
/// plane are classified as in-plane and snapped to z = 0.
inline constexpr double in_plane_tolerance = 1e-12;

/// An element as supplied by the caller. The vertex order fixes the normal
/// (v2 - v1) x (v3 - v1) and therefore the sign of every normal derivative.
struct Triangle3
{
    Vec3 v1, v2, v3;

    const Vec3& operator[](int i) const { return i == 0 ? v1 : (i == 1 ? v2 : v3); }
    double diameter() const;
    Vec3 unit_normal() const;
};

using Triangle2 = std::array<Vec2, 3>;

/**
   Rigid map placing an element in a plane of constant third coordinate.

   local(p) = rotation * (p - origin_offset). The rotation is the smallest one
   carrying the element normal onto +z, so an element already lying in a plane
   z = const with counter-clockwise winding keeps its in-plane coordinates.
   origin_offset is the foot of the perpendicular from the global origin to the
   element plane, so the element lies at local z = 0; plane_z is its signed
   height along the normal.
*/
struct PlaneFrame
{
    Mat3 rotation = Mat3::Identity();
    Vec3 origin_offset = Vec3::Zero();
    double plane_z = 0.0;

    Vec3 to_local(const Vec3& p) const { return rotation * (p - origin_offset); }
    Vec3 to_global(const Vec3& q) const { return rotation.transpose() * q + origin_offset; }
};

/// Output of plane_frame: the element in its plane and the field point above it.
struct PlaneProjection
{
    PlaneFrame frame;
    Triangle2 tri2;
    Vec3 field_local; ///< (x0, y0, z); z is the signed distance from the plane
    bool in_plane = false;
};

/**
   Rotates the element into a z = 0 plane and expresses the field point there.
   Throws DegenerateElement when all three coordinate-plane projections of the
   triangle are exactly collinear.
*/
PlaneProjection plane_frame(const Triangle3& tri, const Vec3& field);

/**
   One subtriangle (p0, A, B) of the decomposition about the projected field
   point p0, in reference form: A lies at distance r1, B at distance r2, and the
   signed angle from A to B is theta.

   The third side AB lies at perpendicular distance d from p0. Along that side, t
   is the coordinate measured from the foot of the perpendicular in the
   counter-clockwise sense; t1 and t2 locate A and B. a = tan(phi) is the slope of
   the third side x = r1 + a y in the frame with A on the x axis, and psi is the
   azimuth of A seen from p0.
*/
struct SubTriangleFrame
{
    double r1 = 0.0;
    double r2 = 0.0;
    double theta = 0.0;
    double a = 0.0;
    double phi = 0.0;
    double psi = 0.0;
    int sign = 0;

    double d = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    Vec2 edge1 = Vec2::Zero(); ///< A - p0
    Vec2 edge2 = Vec2::Zero(); ///< B - p0

    bool degenerate() const { return sign == 0; }

    /// Distance from p0 to the third side along the ray at angle theta' from A.
    double rbar(double theta_prime) const;

    /// Frame for p0 = origin, A = (r1, 0), B = r2 (cos theta, sin theta).
    static SubTriangleFrame from_polar(double r1, double r2, double theta);
};

/// Builds the frame of the oriented subtriangle (p0, A, B).
SubTriangleFrame make_frame(const Vec2& p0, const Vec2& A, const Vec2& B);

/// Frames for (p0,1,2), (p0,2,3), (p0,3,1) in the caller's vertex order.
std::array<SubTriangleFrame, 3> decompose(const Triangle2& tri2, const Vec2& p0);

/// Angle together with its sine and cosine, which callers may supply from
/// geometry rather than from the angle itself.
struct Angle
{
    double theta = 0.0;
    double sin = 0.0;
    double cos = 1.0;

    static Angle of(double theta);
};

/**
   Parameters of the polar integrals over one reference subtriangle. The
   integration variable runs from lower.theta = phi to upper.theta = phi + theta.
*/
struct AngularGeometry
{
    double z = 0.0;
    double height = 0.0; ///< |z|
    double alpha = 0.0;
    double alpha_p = 1.0;
    double beta = 0.0;
    double d = 0.0; ///< beta * alpha_p, perpendicular distance to the third side
    double phi = 0.0;
    double theta = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    Angle lower;
    Angle upper;

    bool in_plane() const { return height == 0.0; }
};

/**
   Throws DegenerateFrame when the frame is collinear or r2 sin|theta| = 0.
   d may be zero (r1 = 0), giving alpha = 1 and alpha_p = 0.
*/
AngularGeometry angular_geometry(const SubTriangleFrame& frame, double z);

/// beta^2 = (r1^2 + z^2 (1 + a^2)) / (1 + a^2).
double reference_beta(double r1, double a, double z);

double shoelace_area(const Triangle2& tri);

} // namespace tripanel

#pragma once

#include <functional>
#include <vector>

#include <tripanel/geometry.hpp>

/**
   Numerical reference values for the analytic path, sharing none of its
   formulas: adaptive triangle cubature for z != 0, a polar (Duffy) transform for
   the weakly singular in-plane 1/R kernel, and a finite-part oracle that does the
   radial integral in closed form and only the angle numerically.
*/
namespace tripanel {

struct QuadratureConfig
{
    double rel_tol = 1e-12;
    double abs_tol = 1e-15;
    int max_depth = 30;
    long max_cells = 2'000'000;

    /// Throws std::invalid_argument if rel_tol < 1e-14 or max_depth > 40.
    void validate() const;
};

struct QuadResult
{
    double value = 0.0;
    double error = 0.0;
};

/// Integrand evaluated at a point of the element plane, writing `count` values.
using PlaneIntegrand = std::function<void(const Vec2& p, double* out)>;

struct VectorQuadResult
{
    std::vector<double> value;
    double error = 0.0; ///< max over components
    long cells = 0;
};

/**
   Globally adaptive cubature: symmetric 7-point degree-5 rule, 4-way congruent
   subdivision, error estimate |children - parent| per cell. Cells are always
   split while their diameter exceeds half their distance to the field point
   (x0, y0, z), then by largest error until the summed estimate meets
   max(abs_tol, rel_tol * integral of |f|), per component. Throws NoConvergence when a cell needing
   refinement sits at max_depth or the cell budget is exhausted.
*/
VectorQuadResult adaptive_triangle(const PlaneIntegrand& f, int count, const Triangle2& tri,
                                   const Vec3& field_local, const QuadratureConfig& cfg);

/**
   integral of w(p) / |p - p0| over the triangle in its plane, by the polar
   transform about p0 on each signed subtriangle: Gauss-Legendre along the ray
   (the transformed integrand is smooth there) and adaptive Gauss-Kronrod across.
   Like adaptive_triangle, the result is the integral over the region whatever
   the vertex order.
*/
VectorQuadResult polar_inverse_distance(const PlaneIntegrand& w, int count, const Triangle2& tri,
                                        const Vec2& p0, const QuadratureConfig& cfg);

/**
   integral of x^m y^n R^gamma dA with (x, y) measured from the projection of the
   field point. z = 0 is accepted only for gamma = -1 (polar transform); zero-area
   triangles give 0.
*/
QuadResult quad_triangle(int m, int n, int gamma, const Triangle2& tri2, const Vec3& field_local,
                         const QuadratureConfig& cfg = {});

/**
   In-plane finite part of integral over the subtriangle of X'^n Y'^m R^gamma dA
   (the reference-integral convention, X' towards the third side). For each ray
   from p0 the length rbar comes from a ray/segment intersection and the radial
   finite part is taken in closed form; the angle is integrated adaptively.
*/
double finite_part_oracle(int m, int n, int gamma, const SubTriangleFrame& frame,
                          const QuadratureConfig& cfg = {});

} // namespace tripanel

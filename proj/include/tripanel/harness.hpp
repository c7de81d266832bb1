#pragma once

#include <array>
#include <optional>
#include <vector>

#include <tripanel/geometry.hpp>
#include <tripanel/mesh.hpp>
#include <tripanel/oracle.hpp>

namespace tripanel {

/// Free-space unit point source: phi = 1 / (4 pi |x - s|).
double point_source_potential(const Vec3& source, const Vec3& x);
Vec3 point_source_gradient(const Vec3& source, const Vec3& x);

/**
   Dirichlet and Neumann data of a point source on a mesh. phi is per vertex;
   dphi_dn is per triangle corner, taken with that triangle's own normal so that
   vertices on cube edges and corners carry one value per incident face.
*/
struct BoundaryData
{
    Vec3 source = Vec3::Zero();
    std::vector<double> phi;
    std::vector<std::array<double, 3>> dphi_dn;
};

/// Throws SourceOutside unless the source is strictly inside the closed mesh.
BoundaryData point_source_bc(const MeshSurface& mesh, const Vec3& source);

/**
   Gradient of the exterior representation

     phi(x) = integral over S of [ phi dG/dn_y - G dphi/dn ] dS_y,

   n outward, with both densities interpolated linearly on each triangle. Points
   are split into contiguous chunks over `jobs` threads; each point's sum runs in
   triangle order, so results do not depend on `jobs`.
*/
std::vector<Vec3> representation_gradient(const MeshSurface& mesh, const BoundaryData& bc,
                                          const std::vector<Vec3>& points, int jobs = 1);

/// As representation_gradient, after checking every point is strictly outside the
/// surface. Throws EvalPointInsideOrOnSurface.
std::vector<Vec3> field_gradient(const MeshSurface& mesh, const BoundaryData& bc,
                                 const std::vector<Vec3>& points, int jobs = 1);

struct PowerFit
{
    double C = 0.0;
    double p = 0.0;
};

/// Least-squares line through (log h, log eps): eps = C h^p. Needs two or more positive pairs.
PowerFit fit_power_law(const std::vector<double>& h, const std::vector<double>& eps);

struct CubeStudyConfig
{
    Vec3 source{0.25, 0.25, 0.25};
    int grid = 32;             ///< grid points per side
    double extent = 2.0;       ///< grid spans [-extent, extent]^2 on z = 0
    double mask = 0.5 + 1e-9;  ///< points with max(|x|, |y|) <= mask are inside and skipped
    int jobs = 1;
};

/// Unmasked grid points of the study plane.
std::vector<Vec3> cube_study_points(const CubeStudyConfig& cfg);

struct CubeStudyRow
{
    double h = 0.0;
    double epsilon = 0.0; ///< max component error over the grid / max |exact gradient|
    long triangles = 0;
    long points = 0;
};

struct ConvergenceStudy
{
    std::vector<CubeStudyRow> rows;
    std::optional<PowerFit> fit; ///< present with two or more rows
    bool monotone = true;        ///< epsilon decreases along the rows
};

/// Cube gradient error for one mesh size; h must be 1/n for an integer n.
CubeStudyRow cube_gradient_error(double h, const CubeStudyConfig& cfg = {});

/// h_list sorted descending. Throws std::invalid_argument otherwise.
ConvergenceStudy convergence_study(const std::vector<double>& h_list, const CubeStudyConfig& cfg = {});

/// The study triangle and its five projected test points.
Triangle3 study_triangle();
std::array<Vec2, 5> study_points();

struct TriangleStudyConfig
{
    QuadratureConfig quad;
    int samples = 33; ///< z samples per sweep
    int jobs = 1;
};

/**
   Per test point, the max over shape functions and z samples of
   |analytic - oracle| for

     I1 = integral L_i / (4 pi R),  I2 = z integral L_i / (4 pi R^3),  I3 = integral L_i / (4 pi R^5),

   with z in [0, 1] for I1 and I2 and z in [1/8, 1] for I3. I2 is taken as 0 at z = 0.
*/
struct TriangleStudyRow
{
    int point = 0; ///< 1-based
    Vec2 xy = Vec2::Zero();
    std::array<double, 3> eps{};
};

/// Throws NoConvergence from the oracle.
std::vector<TriangleStudyRow> single_triangle_study(const TriangleStudyConfig& cfg = {});

} // namespace tripanel

#pragma once

#include <array>
#include <vector>

#include <tripanel/geometry.hpp>

namespace tripanel {

/// Index of the kernel R^gamma in per-kernel arrays: -1 -> 0, -3 -> 1, -5 -> 2.
int kernel_index(int gamma);

/**
   Element-plane moments about the projected field point:

     moment(gamma, a, b) = integral over the element of x^a y^b R^gamma dA

   with (x, y) measured from the projection of the field point and R the distance
   to the field point at height z. Entries are computed up to the requested
   degree per kernel; at z = 0 the gamma <= -3 entries are finite parts. No 1/4pi.
*/
struct IntegralSet
{
    static constexpr int max_degree = 3;

    double z = 0.0;
    std::array<int, 3> degree{-1, -1, -1};
    std::array<bool, 3> finite_part{};
    std::array<std::array<std::array<double, max_degree + 1>, max_degree + 1>, 3> mu{};

    double moment(int gamma, int a, int b) const;
    double w00(int gamma) const { return moment(gamma, 0, 0); }
    double w10(int gamma) const { return moment(gamma, 1, 0); }
    double w01(int gamma) const { return moment(gamma, 0, 1); }
};

/// Highest moment degree computed per kernel; negative skips the kernel.
struct MomentDegrees
{
    int gamma_m1 = 1;
    int gamma_m3 = 2;
    int gamma_m5 = 3;
};

/// tri2 in plane coordinates; field_local = (x0, y0, z). A clockwise tri2 gives the
/// negated integrals (the sign follows the caller's winding). Throws DegenerateElement.
IntegralSet triangle_integral_set(const Triangle2& tri2, const Vec3& field_local,
                                  const MomentDegrees& degrees = {});

enum class SourceOrder { constant, linear };

struct SourceSpec
{
    SourceOrder order = SourceOrder::constant;
    std::vector<double> node_values{1.0}; ///< one value (constant) or three (linear)

    static SourceSpec constant(double value = 1.0) { return {SourceOrder::constant, {value}}; }
    static SourceSpec linear(double v1 = 1.0, double v2 = 1.0, double v3 = 1.0)
    {
        return {SourceOrder::linear, {v1, v2, v3}};
    }
};

/// Requested outputs, combined with |.
enum Want : unsigned { want_potential = 1u, want_gradient = 2u, want_hessian = 4u, want_all = 7u };

struct PanelOptions
{
    /// Accept finite-part gradient/Hessian values for in-plane field points.
    bool allow_finite_part = false;
};

/// Field quantities of one density over the element, 1/4pi included, global frame.
struct FieldValues
{
    double potential = 0.0;
    Vec3 gradient = Vec3::Zero();
    Mat3 hessian = Mat3::Zero();
};

struct PanelResult
{
    std::vector<FieldValues> shapes; ///< one per shape function (1 constant, 3 linear)
    FieldValues total;               ///< shapes weighted by the source node values
    bool in_plane = false;
    bool finite_part = false;
};

/**
   An element with its plane frame and shape functions precomputed, for repeated
   evaluation at many field points.
*/
class PreparedPanel
{
public:
    explicit PreparedPanel(const Triangle3& tri);

    const Triangle3& triangle() const { return tri_; }
    const PlaneFrame& frame() const { return frame_; }
    const Triangle2& plane_triangle() const { return tri2_; }
    /// Unit normal of the caller's winding.
    const Vec3& normal() const { return normal_; }

    /// Local field point, snapped to z = 0 when in-plane.
    Vec3 local_field(const Vec3& field, bool* in_plane = nullptr) const;

    PanelResult evaluate(const Vec3& field, const SourceSpec& src, unsigned want,
                         const PanelOptions& opt = {}) const;

    /// integral of L_i R^gamma dA for the three linear shape functions (no 1/4pi).
    std::array<double, 3> shape_integrals(const Vec3& field, int gamma) const;

private:
    // L_i = shape_(i,0) + shape_(i,1) X + shape_(i,2) Y in absolute plane coordinates.
    Triangle3 tri_;
    PlaneFrame frame_;
    Triangle2 tri2_;
    double diameter_ = 0.0;
    Vec3 normal_;
    Mat3 shape_;
};

/// One-shot evaluation; throws DegenerateElement and FinitePartRequested.
PanelResult panel_potential(const Triangle3& tri, const Vec3& field, const SourceSpec& src,
                            unsigned want, const PanelOptions& opt = {});

/**
   Reversing the vertex order must leave potentials unchanged and flip the sign of
   the normal derivative (normal of the respective winding). Throws
   DegenerateElement.
*/
bool winding_antisymmetry_check(const Triangle3& tri, const Vec3& field);

} // namespace tripanel

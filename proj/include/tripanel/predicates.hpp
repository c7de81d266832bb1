#pragma once

#include <Eigen/Core>

namespace tripanel {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/**
   Exact sign of twice the signed area of the triangle (a, b, c):
   +1 counter-clockwise, -1 clockwise, 0 collinear.

   A floating-point filter answers the easy cases; ambiguous cases are settled
   with error-free product/sum expansions, so the sign is exact for any inputs
   whose products neither overflow nor underflow.
*/
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

/// The determinant (b - a) x (c - a), evaluated exactly and rounded once to double.
double orient2d_value(const Vec2& a, const Vec2& b, const Vec2& c);

} // namespace tripanel

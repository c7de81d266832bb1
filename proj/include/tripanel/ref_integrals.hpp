#pragma once

#include <tripanel/geometry.hpp>
#include <tripanel/primitives.hpp>

/**
   Integrals over one reference subtriangle in its polar frame:

     K(gamma, m, n) = integral over the subtriangle of X'^n Y'^m R^gamma dA

   where X' = r cos u points from the field-point projection p0 towards the third
   side, Y' = r sin u runs along it, R^2 = r^2 + z^2, and u runs from phi to
   phi + Theta (signed, so a clockwise subtriangle contributes with a minus sign).
   In the angle theta measured from the first vertex, X' = r cos(theta + phi),
   which is the weight convention of the constant/linear/second-order tables.

   At z = 0 the kernels with gamma <= -3 are interpreted as finite parts: the
   radial integral from 0 keeps only the regular remainder (the power terms at 0
   are dropped and a 1/r integral contributes ln r). The flag is_finite_part
   marks those values.

   Supported: m + n <= 1 for gamma = -1, <= 2 for gamma = -3, <= 3 for gamma = -5.
*/
namespace tripanel {

struct RefIntegralValue
{
    double value = 0.0;
    bool is_finite_part = false;
};

enum class Component { cos, sin };

/// Antiderivatives at both integration limits of one subtriangle; shared by all
/// kernels and weights evaluated for it.
class RefEvaluator
{
public:
    explicit RefEvaluator(const AngularGeometry& g);

    const AngularGeometry& geometry() const { return g_; }

    /// K(gamma, m, n); throws UnsupportedKey outside the supported set.
    RefIntegralValue integral(int gamma, int m, int n) const;

    /// Off-plane constant weight without its -|z|^(gamma+2) Theta / (gamma+2) term.
    /// Summed over a decomposition that term only depends on the total angle, which
    /// callers can supply exactly instead of accumulating cancelling atan2 values.
    double constant_without_angle_term(int gamma) const;

private:
    double dI(int m, int n, int p) const { return hi_.I(m, n, p) - lo_.I(m, n, p); }
    double dJ(int m, int n) const { return hi_.J(m, n) - lo_.J(m, n); }

    double off_plane(int gamma, int m, int n) const;
    double in_plane(int gamma, int m, int n) const;

    AngularGeometry g_;
    prim::Modulus k_;
    prim::Antiderivatives lo_, hi_;
};

inline bool ref_key_supported(int gamma, int m, int n)
{
    const int k = m + n;
    if (m < 0 || n < 0)
        return false;
    switch (gamma) {
    case -1: return k <= 1;
    case -3: return k <= 2;
    case -5: return k <= 3;
    default: return false;
    }
}

RefIntegralValue ref_integral(int gamma, int m, int n, const AngularGeometry& g);

RefIntegralValue ref_constant(int gamma, const AngularGeometry& g);
RefIntegralValue ref_linear(int gamma, Component c, const AngularGeometry& g);
/// m + n = 2: (0,2) is r^2 cos^2(theta + phi), (1,1) the mixed term, (2,0) sin^2.
RefIntegralValue ref_second(int gamma, int m, int n, const AngularGeometry& g);

} // namespace tripanel

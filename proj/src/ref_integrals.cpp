#include <tripanel/ref_integrals.hpp>

#include <cmath>
#include <string>

#include <tripanel/errors.hpp>

namespace tripanel {

namespace {

// S with S' = sin^m cos^n, at one limit; the boundary factor of every by-parts step.
double by_parts_factor(int m, int n, const Angle& t)
{
    const double s = t.sin, c = t.cos;
    switch (m * 4 + n) {
    case 0 * 4 + 1: return s;
    case 1 * 4 + 0: return -c;
    case 0 * 4 + 3: return s - s * s * s / 3.0;
    case 1 * 4 + 2: return -c * c * c / 3.0;
    case 2 * 4 + 1: return s * s * s / 3.0;
    case 3 * 4 + 0: return -c + c * c * c / 3.0;
    }
    throw UnsupportedKey("no by-parts factor for weight (" + std::to_string(m) + "," + std::to_string(n) + ")");
}

std::string weight_name(int gamma, int m, int n)
{
    return "(gamma=" + std::to_string(gamma) + ", m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")";
}

} // namespace

RefEvaluator::RefEvaluator(const AngularGeometry& g)
    : g_(g), k_{g.alpha, g.alpha_p}, lo_(k_, g.lower), hi_(k_, g.upper)
{
}

RefIntegralValue RefEvaluator::integral(int gamma, int m, int n) const
{
    if (!ref_key_supported(gamma, m, n))
        throw UnsupportedKey("unsupported reference integral " + weight_name(gamma, m, n));
    if (g_.in_plane())
        return {in_plane(gamma, m, n), gamma <= -3};
    return {off_plane(gamma, m, n), false};
}

double RefEvaluator::constant_without_angle_term(int gamma) const
{
    if (g_.in_plane() || !ref_key_supported(gamma, 0, 0))
        throw UnsupportedKey("angle-term split needs an off-plane supported kernel");
    const int p = gamma + 2;
    return std::pow(g_.beta, p) * dI(0, -p, p) / p;
}

double RefEvaluator::off_plane(int gamma, int m, int n) const
{
    const double h = g_.height, beta = g_.beta, ap = g_.alpha_p;
    const int k = m + n;

    auto boundary_log = [&] {
        const double L1 = std::asinh(g_.r1 / h), L2 = std::asinh(g_.r2 / h);
        return by_parts_factor(m, n, g_.upper) * L2 - by_parts_factor(m, n, g_.lower) * L1;
    };

    if (k == 0) {
        const int p = gamma + 2;
        return (std::pow(beta, p) * dI(0, -p, p) - std::pow(h, p) * g_.theta) / p;
    }

    if (k == 1) {
        const bool cos_weight = n == 1;
        switch (gamma) {
        case -1: {
            const double s_tan = cos_weight ? dI(2, -1, -1) : -dI(1, 0, -1);
            return 0.5 * beta * beta * ap * dI(m, n - 2, 1) - 0.5 * h * h * (boundary_log() - ap * s_tan);
        }
        case -3: {
            const double combo = cos_weight ? dI(0, 1, -1) + dI(2, -1, -1) : 0.0;
            return boundary_log() - ap * combo;
        }
        case -5:
            return ap * ap * ap / (3.0 * h * h) * dI(m, n, -3);
        }
    }

    if (k == 2) {
        if (gamma == -3)
            return beta * dI(m, n - 1, 1) + h * h / beta * dI(m, n + 1, -1) - 2.0 * h * dJ(m, n);
        if (gamma == -5)
            return -dI(m, n + 1, -1) / beta + h * h / (3.0 * beta * beta * beta) * dI(m, n + 3, -3)
                   + 2.0 / (3.0 * h) * dJ(m, n);
    }

    if (k == 3 && gamma == -5) {
        double combo = 0.0;
        switch (m) {
        case 0: combo = 2.0 / 3.0 * dI(2, -1, -1) + dI(2, 1, -1) / 3.0 + dI(0, 3, -1); break;
        case 1: combo = 2.0 / 3.0 * dI(1, 2, -1); break;
        case 2: combo = dI(2, -1, -1) / 3.0 + 2.0 / 3.0 * dI(2, 1, -1); break;
        case 3: combo = -2.0 / 3.0 * dI(1, 2, -1); break;
        }
        return boundary_log() - ap * combo - ap * ap * ap / 3.0 * dI(m, n, -3);
    }

    throw UnsupportedKey("unsupported reference integral " + weight_name(gamma, m, n));
}

double RefEvaluator::in_plane(int gamma, int m, int n) const
{
    const double d = g_.d;
    const int k = m + n;
    const int e = 1 + k + gamma; // radial integrand r^e

    if (e != -1)
        return std::pow(d, e + 1) / (e + 1) * dJ(m, n - e - 1);

    // Finite part of the radial 1/r integral is ln rbar; rbar equals r1, r2 at the limits.
    const double boundary = by_parts_factor(m, n, g_.upper) * std::log(g_.r2)
                            - by_parts_factor(m, n, g_.lower) * std::log(g_.r1);
    double s_tan = 0.0;
    switch (m * 4 + n) {
    case 0 * 4 + 1: s_tan = dJ(2, -1); break;
    case 1 * 4 + 0: s_tan = -dJ(1, 0); break;
    case 0 * 4 + 3: s_tan = 2.0 / 3.0 * dJ(2, -1) + dJ(2, 1) / 3.0; break;
    case 1 * 4 + 2: s_tan = -dJ(1, 2) / 3.0; break;
    case 2 * 4 + 1: s_tan = (dJ(2, -1) - dJ(2, 1)) / 3.0; break;
    case 3 * 4 + 0: s_tan = -dJ(1, 0) + dJ(1, 2) / 3.0; break;
    default: throw UnsupportedKey("unsupported reference integral " + weight_name(gamma, m, n));
    }
    return boundary - s_tan;
}

RefIntegralValue ref_integral(int gamma, int m, int n, const AngularGeometry& g)
{
    return RefEvaluator(g).integral(gamma, m, n);
}

RefIntegralValue ref_constant(int gamma, const AngularGeometry& g)
{
    return ref_integral(gamma, 0, 0, g);
}

RefIntegralValue ref_linear(int gamma, Component c, const AngularGeometry& g)
{
    return c == Component::cos ? ref_integral(gamma, 0, 1, g) : ref_integral(gamma, 1, 0, g);
}

RefIntegralValue ref_second(int gamma, int m, int n, const AngularGeometry& g)
{
    if (m + n != 2 || (gamma != -3 && gamma != -5))
        throw UnsupportedKey("ref_second requires m + n = 2 and gamma in {-3, -5}");
    return ref_integral(gamma, m, n, g);
}

} // namespace tripanel

#include <tripanel/predicates.hpp>

#include <array>
#include <cmath>
#include <limits>

namespace tripanel {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon() / 2; // 2^-53
constexpr double ccw_bound = (3.0 + 16.0 * eps) * eps;

// Knuth's branch-free two-sum: a + b = s + e exactly.
inline void two_sum(double a, double b, double& s, double& e)
{
    s = a + b;
    const double bv = s - a;
    const double av = s - bv;
    e = (a - av) + (b - bv);
}

// a * b = p + e exactly (requires a correctly rounded fma).
inline void two_product(double a, double b, double& p, double& e)
{
    p = a * b;
    e = std::fma(a, b, -p);
}

// Growable nonoverlapping expansion, components in increasing magnitude.
struct Expansion
{
    std::array<double, 16> c{};
    int size = 0;

    void grow(double b)
    {
        double q = b;
        int out = 0;
        for (int i = 0; i < size; ++i) {
            double s, e;
            two_sum(q, c[i], s, e);
            q = s;
            if (e != 0.0)
                c[out++] = e;
        }
        if (q != 0.0 || out == 0)
            c[out++] = q;
        size = out;
    }

    double approximate() const
    {
        double s = 0.0;
        for (int i = 0; i < size; ++i)
            s += c[i];
        return s;
    }

    int sign() const
    {
        for (int i = size - 1; i >= 0; --i) {
            if (c[i] > 0.0)
                return 1;
            if (c[i] < 0.0)
                return -1;
        }
        return 0;
    }
};

// det = ax*by - ax*cy - ay*bx + ay*cx + bx*cy - by*cx, every product split exactly.
Expansion exact_determinant(const Vec2& a, const Vec2& b, const Vec2& c)
{
    const std::array<std::array<double, 3>, 6> terms{{
        {a.x(), b.y(), 1.0},
        {a.x(), c.y(), -1.0},
        {a.y(), b.x(), -1.0},
        {a.y(), c.x(), 1.0},
        {b.x(), c.y(), 1.0},
        {b.y(), c.x(), -1.0},
    }};
    Expansion sum;
    for (const auto& t : terms) {
        double p, e;
        two_product(t[0], t[1], p, e);
        sum.grow(t[2] * p);
        sum.grow(t[2] * e);
    }
    return sum;
}

} // namespace

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c)
{
    const double left = (a.x() - c.x()) * (b.y() - c.y());
    const double right = (a.y() - c.y()) * (b.x() - c.x());
    const double det = left - right;
    const double bound = ccw_bound * (std::abs(left) + std::abs(right));
    if (det > bound)
        return 1;
    if (-det > bound)
        return -1;
    return exact_determinant(a, b, c).sign();
}

double orient2d_value(const Vec2& a, const Vec2& b, const Vec2& c)
{
    return exact_determinant(a, b, c).approximate();
}

} // namespace tripanel

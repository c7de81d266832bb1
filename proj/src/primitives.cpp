#include <tripanel/primitives.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <tripanel/errors.hpp>

namespace tripanel::prim {

namespace {

struct Key
{
    int m, n;
};

constexpr Key j_keys[] = {{0, 0}, {0, -1}, {0, 1}, {1, 0}, {0, 3}, {1, -2},
                          {1, 2}, {2, -1}, {0, 2}, {1, 1}, {2, 0}, {2, 1}};
constexpr Key i_keys_p1[] = {{0, -1}, {1, -2}, {2, -1}, {1, 0}, {0, 1}};
constexpr Key i_keys_m1[] = {{0, 1}, {1, 0}, {2, -1}, {0, 3}, {1, 2}, {2, 1}};
constexpr Key i_keys_m3[] = {{0, 1}, {1, 0}, {0, 3}, {1, 2}, {2, 1},
                             {3, 0}, {0, 5}, {1, 4}, {2, 3}};

template <std::size_t N>
bool contains(const Key (&keys)[N], int m, int n)
{
    return std::any_of(std::begin(keys), std::end(keys), [&](Key k) { return k.m == m && k.n == n; });
}

std::string key_name(int m, int n, int p)
{
    return "(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(p) + ")";
}

double ipow(double x, int k)
{
    double r = 1.0;
    for (int i = 0; i < k; ++i)
        r *= x;
    return r;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// atanh(s) for cos > 0, switching to the log form when |s| is near 1.
double stable_atanh_sin(double s, double c)
{
    if (std::abs(s) < 0.5)
        return std::atanh(s);
    return sign_of(s) * std::log((1.0 + std::abs(s)) / std::abs(c));
}

long binomial(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

Modulus Modulus::of(double alpha)
{
    return {alpha, std::sqrt((1.0 - alpha) * (1.0 + alpha))};
}

double delta(double alpha, double theta)
{
    const double s = alpha * std::sin(theta);
    return std::sqrt(std::max(0.0, (1.0 - s) * (1.0 + s)));
}

double delta(const Modulus& k, const Angle& t)
{
    return std::hypot(t.cos, k.alpha_p * t.sin);
}

bool admissible_J(int m, int n) { return contains(j_keys, m, n); }

bool admissible_I(int m, int n, int p)
{
    switch (p) {
    case 1: return contains(i_keys_p1, m, n);
    case -1: return contains(i_keys_m1, m, n);
    case -3: return contains(i_keys_m3, m, n);
    default: return false;
    }
}

Antiderivatives::Antiderivatives(const Modulus& k, const Angle& t)
    : k_(k), t_(t), delta_(prim::delta(k, t))
{
    const double a = k.alpha, ap = k.alpha_p, s = t.sin, c = t.cos;
    // asin through atan2 with the accurately computed Delta: asin is ill-conditioned
    // near |alpha sin| = 1.
    asin_ratio_ = a == 0.0 ? s : std::atan2(a * s, delta_) / a;

    if (c >= 0.0)
        log_c_ = std::log(a * c + delta_);
    else
        log_c_ = std::log(ap * ap) - std::log(delta_ - a * c);

    atanh_w_ = std::numeric_limits<double>::quiet_NaN();
    if (c != 0.0 && delta_ > 0.0) {
        const double w = ap * s / delta_;
        atanh_w_ = std::abs(w) < 0.5 ? std::atanh(w)
                                     : sign_of(s) * std::log((delta_ + ap * std::abs(s)) / std::abs(c));
    }
    atanh_s_ = c > 0.0 ? stable_atanh_sin(s, c) : std::numeric_limits<double>::quiet_NaN();
}

double Antiderivatives::half_log_ratio() const
{
    return std::log((delta_ + k_.alpha_p) / (k_.alpha * t_.cos));
}

double Antiderivatives::J(int m, int n) const
{
    if (!admissible_J(m, n))
        throw UnsupportedKey("unsupported J key (" + std::to_string(m) + "," + std::to_string(n) + ")");
    const double u = t_.theta, s = t_.sin, c = t_.cos;
    if (n < 0 && !(c > 0.0))
        throw DomainError("J key with negative cosine power evaluated where cos <= 0");

    switch (m * 16 + (n + 4)) {
    case 0 * 16 + 4: return u;
    case 0 * 16 + 3: return atanh_s_;
    case 0 * 16 + 5: return s;
    case 1 * 16 + 4: return -c;
    case 0 * 16 + 7: return s - s * s * s / 3.0;
    case 1 * 16 + 2: return 1.0 / c;
    case 1 * 16 + 6: return -c * c * c / 3.0;
    case 2 * 16 + 3: return -s + atanh_s_;
    case 0 * 16 + 6: return 0.5 * (u + s * c);
    case 1 * 16 + 5: return 0.5 * s * s;
    case 2 * 16 + 4: return 0.5 * (u - s * c);
    case 2 * 16 + 5: return s * s * s / 3.0;
    }
    throw UnsupportedKey("unsupported J key");
}

double Antiderivatives::I(int m, int n, int p) const
{
    if (!admissible_I(m, n, p))
        throw UnsupportedKey("unsupported I key " + key_name(m, n, p));
    if (n < 0 && !(t_.cos > 0.0))
        throw DomainError("I key " + key_name(m, n, p) + " evaluated where cos <= 0");
    if (p < 0 && !(delta_ > 0.0))
        throw DomainError("I key " + key_name(m, n, p) + " evaluated where Delta = 0");
    if (n >= 0 && k_.alpha <= series_threshold)
        return series_I(m, n, p);
    return closed_I(m, n, p);
}

double Antiderivatives::closed_I(int m, int n, int p) const
{
    const double a = k_.alpha, ap = k_.alpha_p, a2 = a * a;
    const double s = t_.sin, c = t_.cos, D = delta_;
    const double A = asin_ratio_, Lc = log_c_, W = atanh_w_;

    auto need_ap = [&] {
        if (!(ap > 0.0))
            throw DomainError("I key " + key_name(m, n, p) + " requires alpha' > 0");
    };

    if (p == 1) {
        if (m == 0 && n == -1) return ap * W + a2 * A;
        if (m == 1 && n == -2) return D / c - a * Lc;
        if (m == 2 && n == -1) return -0.5 * D * s + 0.5 * (2.0 * a2 - 1.0) * A + ap * W;
        if (m == 1 && n == 0) return -0.5 * D * c - ap * ap / (2.0 * a) * Lc;
        if (m == 0 && n == 1) return 0.5 * (s * D + A);
    }
    else if (p == -1) {
        if (m == 0 && n == 1) return A;
        if (m == 1 && n == 0) return -Lc / a;
        if (m == 2 && n == -1) {
            need_ap();
            return W / ap - A;
        }
        if (m == 0 && n == 3) return A - (A - s * D) / (2.0 * a2);
        if (m == 2 && n == 1) return (A - s * D) / (2.0 * a2);
        if (m == 1 && n == 2) return -c * D / (2.0 * a2) + ap * ap / (2.0 * a2 * a) * Lc;
    }
    else if (p == -3) {
        if (m == 0 && n == 1) return s / D;
        if (m == 1 && n == 0) {
            need_ap();
            return -c / (ap * ap * D);
        }
        if (m == 0 && n == 3) return (-(ap * ap) * s / D + A) / a2;
        if (m == 1 && n == 2) return (c / D + closed_I(1, 0, -1)) / a2;
        if (m == 2 && n == 1) return (s / D - A) / a2;
        if (m == 1 && n == 4) return (c * c * c / D + 3.0 * closed_I(1, 2, -1)) / a2;
        if (m == 2 && n == 3) return (s * c * c / D - closed_I(0, 3, -1) + 2.0 * closed_I(2, 1, -1)) / a2;
        if (m == 3 && n == 0) return closed_I(1, 0, -3) - closed_I(1, 2, -3);
        if (m == 0 && n == 5) return closed_I(0, 3, -3) - closed_I(2, 3, -3);
    }
    throw UnsupportedKey("unsupported I key " + key_name(m, n, p));
}

// Binomial series of Delta^p about alpha = 0. One of m, n is odd, so after writing
// the even power of the other factor in terms of the odd one's partner every term
// integrates to a power of sin (n odd) or cos (m odd).
double Antiderivatives::series_I(int m, int n, int p) const
{
    const double a2 = k_.alpha * k_.alpha;
    const double half_p = 0.5 * p;
    constexpr int max_terms = 200;

    if (n % 2 != 0) {
        const int h = (n - 1) / 2;
        const double x = t_.sin, x2 = x * x;
        double sum = 0.0, b = 1.0, scale = 1.0; // scale = (-alpha^2)^k
        for (int k = 0; k < max_terms; ++k) {
            double inner = 0.0, xp = ipow(x, m + 2 * k + 1);
            for (int j = 0; j <= h; ++j) {
                const int e = m + 2 * k + 2 * j + 1;
                inner += (j % 2 ? -1.0 : 1.0) * binomial(h, j) * xp / e;
                xp *= x2;
            }
            const double term = b * scale * inner;
            sum += term;
            b *= (half_p - k) / (k + 1);
            scale *= -a2;
            if (std::abs(term) <= 1e-17 * std::abs(sum) || term == 0.0 || b == 0.0)
                break;
        }
        return sum;
    }

    const int h = (m - 1) / 2;
    const double y = t_.cos, y2 = y * y;
    const double ap2 = k_.alpha_p * k_.alpha_p;
    const double rho2 = a2 / ap2;
    double sum = 0.0, b = 1.0, r = 1.0; // r = rho^(2k)
    for (int k = 0; k < max_terms; ++k) {
        double inner = 0.0, yp = ipow(y, n + 2 * k + 1);
        for (int j = 0; j <= h; ++j) {
            const int e = n + 2 * k + 2 * j + 1;
            inner += (j % 2 ? -1.0 : 1.0) * binomial(h, j) * yp / e;
            yp *= y2;
        }
        const double term = -b * r * inner;
        sum += term;
        b *= (half_p - k) / (k + 1);
        r *= rho2;
        if (std::abs(term) <= 1e-17 * std::abs(sum) || term == 0.0 || b == 0.0)
            break;
    }
    return std::pow(k_.alpha_p, p) * sum;
}

double eval_J(int m, int n, double theta)
{
    if (!admissible_J(m, n))
        throw UnsupportedKey("unsupported J key (" + std::to_string(m) + "," + std::to_string(n) + ")");
    if (n < 0 && std::abs(theta) >= std::numbers::pi / 2)
        throw DomainError("J key with negative cosine power integrated across cos = 0");
    const Modulus k = Modulus::of(0.0);
    return Antiderivatives(k, Angle::of(theta)).J(m, n) - Antiderivatives(k, Angle::of(0.0)).J(m, n);
}

double eval_I(int m, int n, int p, double alpha, double theta)
{
    if (!admissible_I(m, n, p))
        throw UnsupportedKey("unsupported I key " + key_name(m, n, p));
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("alpha outside [0, 1]");
    if (n < 0 && std::abs(theta) >= std::numbers::pi / 2)
        throw DomainError("I key with negative cosine power integrated across cos = 0");
    if (p < 0 && alpha == 1.0 && std::abs(theta) >= std::numbers::pi / 2)
        throw DomainError("I key with negative Delta power integrated across Delta = 0");
    const Modulus k = Modulus::of(alpha);
    return Antiderivatives(k, Angle::of(theta)).I(m, n, p) - Antiderivatives(k, Angle::of(0.0)).I(m, n, p);
}

} // namespace tripanel::prim

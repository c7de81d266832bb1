#include <tripanel/oracle.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <tripanel/errors.hpp>

namespace tripanel {

namespace {

namespace bq = boost::math::quadrature;

struct RulePoint
{
    double l1, l2, l3, w;
};

std::array<RulePoint, 7> make_rule()
{
    const double r = std::sqrt(15.0);
    const double a1 = (6.0 - r) / 21.0, b1 = (9.0 + 2.0 * r) / 21.0, w1 = (155.0 - r) / 1200.0;
    const double a2 = (6.0 + r) / 21.0, b2 = (9.0 - 2.0 * r) / 21.0, w2 = (155.0 + r) / 1200.0;
    return {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
             {a1, a1, b1, w1}, {a1, b1, a1, w1}, {b1, a1, a1, w1},
             {a2, a2, b2, w2}, {a2, b2, a2, w2}, {b2, a2, a2, w2}}};
}

const std::array<RulePoint, 7> rule = make_rule();

constexpr int max_components = 10;
using Values = std::array<double, max_components>;

struct Cell
{
    Triangle2 v;
    int depth = 0;
    Values coarse{};   // the cell's own rule value
    Values fine{};     // sum of its four children's rule values
    Values fine_abs{}; // the same for |f|, the scale of the relative tolerance
    std::array<Values, 4> child{};
    double error = 0.0;
    bool forced = false;
    long order = 0;    // creation index, for deterministic tie-breaking and summation
};

Values apply_rule(const PlaneIntegrand& f, int count, const Triangle2& t, Values* abs_sum = nullptr)
{
    const double area = 0.5 * std::abs((t[1].x() - t[0].x()) * (t[2].y() - t[0].y())
                                       - (t[2].x() - t[0].x()) * (t[1].y() - t[0].y()));
    Values sum{}, sum_abs{}, out{};
    for (const RulePoint& q : rule) {
        const Vec2 p = q.l1 * t[0] + q.l2 * t[1] + q.l3 * t[2];
        f(p, out.data());
        for (int c = 0; c < count; ++c) {
            sum[c] += q.w * out[c];
            sum_abs[c] += q.w * std::abs(out[c]);
        }
    }
    for (int c = 0; c < count; ++c) {
        sum[c] *= area;
        sum_abs[c] *= area;
    }
    if (abs_sum)
        *abs_sum = sum_abs;
    return sum;
}

std::array<Triangle2, 4> split(const Triangle2& t)
{
    const Vec2 m01 = 0.5 * (t[0] + t[1]), m12 = 0.5 * (t[1] + t[2]), m20 = 0.5 * (t[2] + t[0]);
    return {Triangle2{t[0], m01, m20}, Triangle2{m01, t[1], m12}, Triangle2{m20, m12, t[2]},
            Triangle2{m12, m20, m01}};
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b)
{
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (p - (a + t * ab)).norm();
}

double point_triangle_distance(const Vec2& p, const Triangle2& t)
{
    const int s0 = orient2d(t[0], t[1], p), s1 = orient2d(t[1], t[2], p), s2 = orient2d(t[2], t[0], p);
    const bool has_neg = s0 < 0 || s1 < 0 || s2 < 0, has_pos = s0 > 0 || s1 > 0 || s2 > 0;
    if (!(has_neg && has_pos))
        return 0.0;
    return std::min({segment_distance(p, t[0], t[1]), segment_distance(p, t[1], t[2]),
                     segment_distance(p, t[2], t[0])});
}

double diameter(const Triangle2& t)
{
    return std::max({(t[1] - t[0]).norm(), (t[2] - t[1]).norm(), (t[0] - t[2]).norm()});
}

struct CellOrder
{
    bool operator()(const Cell& a, const Cell& b) const
    {
        if (a.forced != b.forced)
            return !a.forced;
        if (a.error != b.error)
            return a.error < b.error;
        return a.order > b.order;
    }
};

double max_abs(const Values& v, int count)
{
    double m = 0.0;
    for (int c = 0; c < count; ++c)
        m = std::max(m, v[c]);
    return m;
}

} // namespace

void QuadratureConfig::validate() const
{
    if (!(rel_tol >= 1e-14))
        throw std::invalid_argument("rel_tol must be at least 1e-14");
    if (max_depth > 40 || max_depth < 1)
        throw std::invalid_argument("max_depth must lie in [1, 40]");
}

VectorQuadResult adaptive_triangle(const PlaneIntegrand& f, int count, const Triangle2& tri,
                                   const Vec3& field_local, const QuadratureConfig& cfg)
{
    cfg.validate();
    if (count < 1 || count > max_components)
        throw std::invalid_argument("adaptive_triangle: unsupported component count");

    VectorQuadResult res;
    res.value.assign(count, 0.0);
    if (orient2d(tri[0], tri[1], tri[2]) == 0)
        return res;

    const Vec2 p0(field_local.x(), field_local.y());
    const double z = std::abs(field_local.z());
    long next_order = 0;

    auto make_cell = [&](const Triangle2& t, int depth, const Values& coarse) {
        Cell c;
        c.v = t;
        c.depth = depth;
        c.coarse = coarse;
        c.order = next_order++;
        const auto kids = split(t);
        for (int k = 0; k < 4; ++k) {
            Values abs_part;
            c.child[k] = apply_rule(f, count, kids[k], &abs_part);
            for (int i = 0; i < count; ++i) {
                c.fine[i] += c.child[k][i];
                c.fine_abs[i] += abs_part[i];
            }
        }
        double err = 0.0;
        for (int i = 0; i < count; ++i)
            err = std::max(err, std::abs(c.fine[i] - c.coarse[i]));
        c.error = err;
        const double dist = std::hypot(point_triangle_distance(p0, t), z);
        c.forced = diameter(t) > 0.5 * dist;
        return c;
    };

    std::priority_queue<Cell, std::vector<Cell>, CellOrder> queue;
    queue.push(make_cell(tri, 0, apply_rule(f, count, tri)));
    Values total = queue.top().fine, total_abs = queue.top().fine_abs;
    double total_error = queue.top().error;
    long cells = 1;

    while (!queue.empty()) {
        const Cell& top = queue.top();
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * max_abs(total_abs, count));
        if (!top.forced && total_error <= tol)
            break;
        if (top.depth >= cfg.max_depth)
            throw NoConvergence("adaptive_triangle: maximum depth " + std::to_string(cfg.max_depth) + " reached");
        if (cells + 3 > cfg.max_cells)
            throw NoConvergence("adaptive_triangle: cell budget of " + std::to_string(cfg.max_cells) + " exhausted");

        const Cell parent = top;
        queue.pop();
        for (int i = 0; i < count; ++i) {
            total[i] -= parent.fine[i];
            total_abs[i] -= parent.fine_abs[i];
        }
        total_error -= parent.error;
        const auto kids = split(parent.v);
        for (int k = 0; k < 4; ++k) {
            Cell c = make_cell(kids[k], parent.depth + 1, parent.child[k]);
            for (int i = 0; i < count; ++i) {
                total[i] += c.fine[i];
                total_abs[i] += c.fine_abs[i];
            }
            total_error += c.error;
            queue.push(std::move(c));
        }
        cells += 3;
        total_error = std::max(total_error, 0.0);
    }

    // Deterministic final sum in creation order.
    std::vector<Cell> leaves;
    leaves.reserve(queue.size());
    double err = 0.0;
    while (!queue.empty()) {
        leaves.push_back(queue.top());
        queue.pop();
    }
    std::sort(leaves.begin(), leaves.end(), [](const Cell& a, const Cell& b) { return a.order < b.order; });
    for (const Cell& c : leaves) {
        for (int i = 0; i < count; ++i)
            res.value[i] += c.fine[i];
        err += c.error;
    }
    res.error = err;
    res.cells = cells;
    return res;
}

VectorQuadResult polar_inverse_distance(const PlaneIntegrand& w, int count, const Triangle2& tri,
                                        const Vec2& p0, const QuadratureConfig& cfg)
{
    cfg.validate();
    if (count < 1 || count > max_components)
        throw std::invalid_argument("polar_inverse_distance: unsupported component count");
    VectorQuadResult res;
    res.value.assign(count, 0.0);
    const int winding = orient2d(tri[0], tri[1], tri[2]);
    if (winding == 0)
        return res;

    using radial_rule = bq::gauss<double, 10>;
    for (int e = 0; e < 3; ++e) {
        const Vec2& A = tri[e];
        const Vec2& B = tri[(e + 1) % 3];
        if (orient2d(p0, A, B) == 0)
            continue;
        const Vec2 ea = A - p0, ab = B - A;
        const double cross = ea.x() * ab.y() - ea.y() * ab.x(); // signed Jacobian factor

        // p = p0 + s e(t), e(t) = ea + t ab; dA = s |cross| ds dt and R = s |e(t)|.
        // With t = tf + (d / L) sinh(u), tf the foot of the perpendicular from p0 and d its
        // length, |e(t)| = d cosh(u) cancels dt / du, leaving a smooth integrand in u.
        const double len = ab.norm();
        const double d = std::abs(cross) / len;
        const double tf = -ea.dot(ab) / (len * len);
        const double u0 = std::asinh((0.0 - tf) * len / d), u1 = std::asinh((1.0 - tf) * len / d);

        for (int c = 0; c < count; ++c) {
            auto across = [&](double u) {
                const Vec2 dir = ea + (tf + d / len * std::sinh(u)) * ab;
                auto along = [&](double s) {
                    double out[max_components];
                    w(p0 + s * dir, out);
                    return out[c];
                };
                return radial_rule::integrate(along, 0.0, 1.0) * winding * cross / len;
            };
            double err = 0.0, l1 = 0.0;
            const double v = bq::gauss_kronrod<double, 31>::integrate(across, u0, u1, 20, cfg.rel_tol * 0.1,
                                                                     &err, &l1);
            if (err > std::max(cfg.abs_tol, cfg.rel_tol * l1) * 10.0)
                throw NoConvergence("polar_inverse_distance: angular quadrature did not converge");
            res.value[c] += v;
            res.error = std::max(res.error, err);
        }
    }
    return res;
}

QuadResult quad_triangle(int m, int n, int gamma, const Triangle2& tri2, const Vec3& field_local,
                         const QuadratureConfig& cfg)
{
    const Vec2 p0(field_local.x(), field_local.y());
    const double z = field_local.z();
    auto weight = [&](const Vec2& p) {
        const Vec2 q = p - p0;
        return std::pow(q.x(), m) * std::pow(q.y(), n);
    };

    VectorQuadResult r;
    if (z == 0.0) {
        if (gamma != -1)
            throw DomainError("quad_triangle: in-plane field point is only supported for gamma = -1");
        r = polar_inverse_distance([&](const Vec2& p, double* out) { out[0] = weight(p); }, 1, tri2, p0, cfg);
    }
    else {
        r = adaptive_triangle(
            [&](const Vec2& p, double* out) {
                const double R2 = (p - p0).squaredNorm() + z * z;
                out[0] = weight(p) * std::pow(R2, 0.5 * gamma);
            },
            1, tri2, field_local, cfg);
    }
    return {r.value[0], r.error};
}

double finite_part_oracle(int m, int n, int gamma, const SubTriangleFrame& frame, const QuadratureConfig& cfg)
{
    cfg.validate();
    if (frame.sign == 0 || frame.theta == 0.0)
        return 0.0;

    const Vec2 ea = frame.edge1, eb = frame.edge2, ab = eb - ea;
    // Unit normal from p0 towards the third side and the tangent completing a
    // right-handed pair, from the foot of the perpendicular.
    const Vec2 foot = ea - (ea.dot(ab) / ab.squaredNorm()) * ab;
    const double d = foot.norm();
    const Vec2 nhat = foot / d;
    const Vec2 shat(-nhat.y(), nhat.x());
    const int k = m + n;
    const int e = 1 + k + gamma;

    // The ray at angle u from nhat meets the side at rbar = d / cos u. With
    // tan u = sinh v, rbar = d cosh v and du = dv / cosh v: smooth in v even when
    // the side passes close to p0.
    auto integrand = [&](double v) {
        const double ch = std::cosh(v);
        const double cu = 1.0 / ch, su = std::tanh(v);
        const double radial = e == -1 ? std::log(d) + std::log(ch) : std::pow(d * ch, e + 1) / (e + 1);
        return std::pow(cu, n) * std::pow(su, m) * radial / ch;
    };
    const double v0 = std::asinh(ea.dot(shat) / d), v1 = std::asinh(eb.dot(shat) / d);

    double err = 0.0, l1 = 0.0;
    const double v = bq::gauss_kronrod<double, 31>::integrate(integrand, v0, v1, 20, cfg.rel_tol * 0.1, &err, &l1);
    if (err > std::max(cfg.abs_tol, cfg.rel_tol * l1) * 10.0)
        throw NoConvergence("finite_part_oracle: angular quadrature did not converge");
    return v;
}

} // namespace tripanel

#include <tripanel/assembly.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include <tripanel/errors.hpp>
#include <tripanel/ref_integrals.hpp>

namespace tripanel {

namespace {

constexpr int gammas[3] = {-1, -3, -5};
constexpr int deg_cap = IntegralSet::max_degree;

// Bivariate polynomial in (X', Y'): c[i][j] multiplies X'^i Y'^j.
using Poly = std::array<std::array<double, deg_cap + 1>, deg_cap + 1>;

Poly multiply(const Poly& p, const Poly& q)
{
    Poly r{};
    for (int i = 0; i <= deg_cap; ++i)
        for (int j = 0; i + j <= deg_cap; ++j) {
            if (p[i][j] == 0.0)
                continue;
            for (int k = 0; i + k <= deg_cap; ++k)
                for (int l = 0; i + j + k + l <= deg_cap; ++l)
                    r[i + k][j + l] += p[i][j] * q[k][l];
        }
    return r;
}

Poly linear_poly(double cx, double cy)
{
    Poly p{};
    p[1][0] = cx;
    p[0][1] = cy;
    return p;
}

void accumulate_subtriangle(const SubTriangleFrame& fr, double z, IntegralSet& out)
{
    const AngularGeometry g = angular_geometry(fr, z);
    const RefEvaluator ref(g);

    // x = X' nx + Y' sx, y = X' ny + Y' sy with n towards the third side, s along it.
    const Vec2 side = (fr.edge2 - fr.edge1).normalized();
    const Vec2 s = fr.sign * side;
    const Vec2 n = fr.sign * Vec2(side.y(), -side.x());

    const int top = std::max({out.degree[0], out.degree[1], out.degree[2]});
    std::array<Poly, deg_cap + 1> xp, yp;
    xp[0] = Poly{};
    xp[0][0][0] = 1.0;
    yp[0] = xp[0];
    const Poly px = linear_poly(n.x(), s.x()), py = linear_poly(n.y(), s.y());
    for (int i = 1; i <= top; ++i) {
        xp[i] = multiply(xp[i - 1], px);
        yp[i] = multiply(yp[i - 1], py);
    }

    for (int gi = 0; gi < 3; ++gi) {
        const int deg = out.degree[gi];
        if (deg < 0)
            continue;
        // K[k][j]: weight X'^(k-j) Y'^j.
        std::array<std::array<double, deg_cap + 1>, deg_cap + 1> K{};
        for (int k = 0; k <= deg; ++k)
            for (int j = 0; j <= k; ++j) {
                if (k == 0 && !g.in_plane()) {
                    K[0][0] = ref.constant_without_angle_term(gammas[gi]);
                    continue;
                }
                const RefIntegralValue v = ref.integral(gammas[gi], j, k - j);
                K[k][j] = v.value;
                out.finite_part[gi] = out.finite_part[gi] || v.is_finite_part;
            }
        for (int a = 0; a <= deg; ++a)
            for (int b = 0; a + b <= deg; ++b) {
                const Poly p = multiply(xp[a], yp[b]);
                double sum = 0.0;
                for (int i = 0; i <= a + b; ++i)
                    sum += p[i][a + b - i] * K[a + b][a + b - i];
                out.mu[gi][a][b] += sum;
            }
    }
}

// Sum of the signed opening angles, which is 2 pi, pi or 0 (times the winding
// sign) for a projection inside, on an edge of, or outside the triangle. Only at a
// vertex does it take the one surviving frame's angle.
double total_angle(const Triangle2& tri2, const std::array<SubTriangleFrame, 3>& frames)
{
    const int sigma = orient2d(tri2[0], tri2[1], tri2[2]);
    int zeros = 0, agree = 0;
    double vertex_angle = 0.0;
    for (const SubTriangleFrame& fr : frames) {
        if (fr.sign == 0)
            ++zeros;
        else {
            agree += fr.sign == sigma;
            vertex_angle += fr.theta;
        }
    }
    if (zeros >= 2)
        return vertex_angle;
    if (agree + zeros < 3)
        return 0.0;
    return sigma * (zeros == 0 ? 2.0 : 1.0) * std::numbers::pi;
}

} // namespace

int kernel_index(int gamma)
{
    switch (gamma) {
    case -1: return 0;
    case -3: return 1;
    case -5: return 2;
    }
    throw UnsupportedKey("kernel power must be -1, -3 or -5, got " + std::to_string(gamma));
}

double IntegralSet::moment(int gamma, int a, int b) const
{
    const int gi = kernel_index(gamma);
    if (a < 0 || b < 0 || a + b > degree[gi])
        throw UnsupportedKey("moment (" + std::to_string(a) + "," + std::to_string(b)
                             + ") not computed for gamma = " + std::to_string(gamma));
    return mu[gi][a][b];
}

IntegralSet triangle_integral_set(const Triangle2& tri2, const Vec3& field_local, const MomentDegrees& degrees)
{
    if (orient2d(tri2[0], tri2[1], tri2[2]) == 0)
        throw DegenerateElement();
    IntegralSet out;
    out.z = field_local.z();
    out.degree = {std::min(degrees.gamma_m1, 1), std::min(degrees.gamma_m3, 2), std::min(degrees.gamma_m5, 3)};

    const Vec2 p0(field_local.x(), field_local.y());
    const auto frames = decompose(tri2, p0);
    for (const SubTriangleFrame& fr : frames) {
        if (fr.degenerate())
            continue;
        accumulate_subtriangle(fr, out.z, out);
    }

    // Off-plane constant weights: the -|z|^p Theta / p terms summed exactly.
    if (out.z != 0.0) {
        const double angle = total_angle(tri2, frames);
        const double h = std::abs(out.z);
        for (int gi = 0; gi < 3; ++gi) {
            if (out.degree[gi] < 0)
                continue;
            const int p = gammas[gi] + 2;
            out.mu[gi][0][0] -= std::pow(h, p) * angle / p;
        }
    }
    return out;
}

PreparedPanel::PreparedPanel(const Triangle3& tri) : tri_(tri)
{
    const PlaneProjection proj = plane_frame(tri, Vec3::Zero());
    frame_ = proj.frame;
    tri2_ = proj.tri2;
    diameter_ = tri.diameter();
    normal_ = tri.unit_normal();

    Mat3 m;
    m << 1.0, 1.0, 1.0,
         tri2_[0].x(), tri2_[1].x(), tri2_[2].x(),
         tri2_[0].y(), tri2_[1].y(), tri2_[2].y();
    shape_ = m.inverse();
}

Vec3 PreparedPanel::local_field(const Vec3& field, bool* in_plane) const
{
    Vec3 q = frame_.to_local(field);
    const bool on = std::abs(q.z()) <= in_plane_tolerance * diameter_;
    if (on)
        q.z() = 0.0;
    if (in_plane)
        *in_plane = on;
    return q;
}

PanelResult PreparedPanel::evaluate(const Vec3& field, const SourceSpec& src, unsigned want,
                                    const PanelOptions& opt) const
{
    const bool linear = src.order == SourceOrder::linear;
    if (src.node_values.size() != (linear ? 3u : 1u))
        throw std::invalid_argument("source node value count does not match its order");

    PanelResult res;
    const Vec3 f = local_field(field, &res.in_plane);
    const bool derivatives = (want & (want_gradient | want_hessian)) != 0;
    if (res.in_plane && derivatives && !opt.allow_finite_part)
        throw FinitePartRequested();
    res.finite_part = res.in_plane && derivatives;

    const int lin = linear ? 1 : 0;
    MomentDegrees deg{-1, -1, -1};
    if (want & want_potential)
        deg.gamma_m1 = lin;
    if (want & want_gradient)
        deg.gamma_m3 = 1 + lin;
    if (want & want_hessian) {
        deg.gamma_m3 = std::max(deg.gamma_m3, lin);
        deg.gamma_m5 = 2 + lin;
    }
    const IntegralSet set = triangle_integral_set(tri2_, f, deg);

    const double x0 = f.x(), y0 = f.y(), z = f.z();
    const double scale = 1.0 / (4.0 * std::numbers::pi);
    const Mat3& rot = frame_.rotation;
    const int count = linear ? 3 : 1;

    for (int i = 0; i < count; ++i) {
        double A = 1.0, B = 0.0, C = 0.0;
        if (linear) {
            B = shape_(i, 1);
            C = shape_(i, 2);
            A = shape_(i, 0) + B * x0 + C * y0;
        }
        auto F = [&](int gamma, int a, int b) {
            double v = A * set.moment(gamma, a, b);
            if (linear)
                v += B * set.moment(gamma, a + 1, b) + C * set.moment(gamma, a, b + 1);
            return v;
        };

        FieldValues fv;
        if (want & want_potential)
            fv.potential = scale * F(-1, 0, 0);
        if (want & want_gradient) {
            const Vec3 g(F(-3, 1, 0), F(-3, 0, 1), -z * F(-3, 0, 0));
            fv.gradient = rot.transpose() * (scale * g);
        }
        if (want & want_hessian) {
            const double f3 = F(-3, 0, 0);
            Mat3 h;
            h(0, 0) = 3.0 * F(-5, 2, 0) - f3;
            h(1, 1) = 3.0 * F(-5, 0, 2) - f3;
            h(2, 2) = 3.0 * z * z * F(-5, 0, 0) - f3;
            h(0, 1) = h(1, 0) = 3.0 * F(-5, 1, 1);
            h(0, 2) = h(2, 0) = -3.0 * z * F(-5, 1, 0);
            h(1, 2) = h(2, 1) = -3.0 * z * F(-5, 0, 1);
            fv.hessian = rot.transpose() * (scale * h) * rot;
        }

        const double w = src.node_values[i];
        res.total.potential += w * fv.potential;
        res.total.gradient += w * fv.gradient;
        res.total.hessian += w * fv.hessian;
        res.shapes.push_back(fv);
    }
    return res;
}

std::array<double, 3> PreparedPanel::shape_integrals(const Vec3& field, int gamma) const
{
    const Vec3 f = local_field(field);
    MomentDegrees deg{-1, -1, -1};
    (gamma == -1 ? deg.gamma_m1 : gamma == -3 ? deg.gamma_m3 : deg.gamma_m5) = 1;
    kernel_index(gamma);
    const IntegralSet set = triangle_integral_set(tri2_, f, deg);

    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) {
        const double B = shape_(i, 1), C = shape_(i, 2);
        const double A = shape_(i, 0) + B * f.x() + C * f.y();
        out[i] = A * set.moment(gamma, 0, 0) + B * set.moment(gamma, 1, 0) + C * set.moment(gamma, 0, 1);
    }
    return out;
}

PanelResult panel_potential(const Triangle3& tri, const Vec3& field, const SourceSpec& src, unsigned want,
                            const PanelOptions& opt)
{
    return PreparedPanel(tri).evaluate(field, src, want, opt);
}

bool winding_antisymmetry_check(const Triangle3& tri, const Vec3& field)
{
    const Triangle3 flipped{tri.v1, tri.v3, tri.v2};
    const PreparedPanel a(tri), b(flipped);
    const PanelOptions opt{true};
    const unsigned want = want_potential | want_gradient;

    auto close = [](double x, double y) {
        return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
    };

    const PanelResult ca = a.evaluate(field, SourceSpec::constant(), want, opt);
    const PanelResult cb = b.evaluate(field, SourceSpec::constant(), want, opt);
    if (!close(ca.total.potential, cb.total.potential))
        return false;
    if (!close(a.normal().dot(ca.total.gradient), -b.normal().dot(cb.total.gradient)))
        return false;

    // Linear shape functions follow their vertices: flipped shape 2 is original shape 3.
    const PanelResult la = a.evaluate(field, SourceSpec::linear(), want, opt);
    const PanelResult lb = b.evaluate(field, SourceSpec::linear(), want, opt);
    constexpr int perm[3] = {0, 2, 1};
    for (int i = 0; i < 3; ++i) {
        const FieldValues& x = la.shapes[i];
        const FieldValues& y = lb.shapes[perm[i]];
        if (!close(x.potential, y.potential))
            return false;
        if (!close(a.normal().dot(x.gradient), -b.normal().dot(y.gradient)))
            return false;
    }
    return true;
}

} // namespace tripanel

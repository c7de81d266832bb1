#include <tripanel/harness.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <tripanel/assembly.hpp>
#include <tripanel/errors.hpp>

namespace tripanel {

namespace {

constexpr double inv_4pi = 0.25 / std::numbers::pi;

// Runs body(i) for i in [0, count) over up to `jobs` threads in contiguous chunks.
// The first exception thrown by any chunk is rethrown.
template <class Body>
void parallel_for(std::size_t count, int jobs, Body body)
{
    const std::size_t workers = std::clamp<std::size_t>(jobs < 1 ? 1 : jobs, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w * chunk; i < std::min(count, (w + 1) * chunk); ++i)
                    body(i);
            }
            catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

int divisions_for(double h)
{
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("mesh size h must be positive");
    const double n = std::round(1.0 / h);
    if (n < 1.0 || std::abs(n * h - 1.0) > 1e-9)
        throw std::invalid_argument("mesh size h must be 1/n for an integer n");
    return static_cast<int>(n);
}

} // namespace

double point_source_potential(const Vec3& source, const Vec3& x)
{
    return inv_4pi / (x - source).norm();
}

Vec3 point_source_gradient(const Vec3& source, const Vec3& x)
{
    const Vec3 r = x - source;
    const double d = r.norm();
    return -inv_4pi / (d * d * d) * r;
}

BoundaryData point_source_bc(const MeshSurface& mesh, const Vec3& source)
{
    if (!source.allFinite() || std::abs(winding_number(mesh, source) - 1.0) > 1e-6
        || surface_distance(mesh, source) <= 1e-12)
        throw SourceOutside();

    BoundaryData bc;
    bc.source = source;
    bc.phi.reserve(mesh.vertices.size());
    for (const Vec3& v : mesh.vertices)
        bc.phi.push_back(point_source_potential(source, v));

    bc.dphi_dn.reserve(mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const Vec3 n = mesh.triangle(t).unit_normal();
        std::array<double, 3> q{};
        for (int k = 0; k < 3; ++k)
            q[k] = point_source_gradient(source, mesh.vertices[mesh.triangles[t][k]]).dot(n);
        bc.dphi_dn.push_back(q);
    }
    return bc;
}

std::vector<Vec3> representation_gradient(const MeshSurface& mesh, const BoundaryData& bc,
                                          const std::vector<Vec3>& points, int jobs)
{
    if (bc.phi.size() != mesh.vertices.size() || bc.dphi_dn.size() != mesh.triangles.size())
        throw std::invalid_argument("boundary data does not match the mesh");

    std::vector<PreparedPanel> panels;
    panels.reserve(mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        panels.emplace_back(mesh.triangle(t));

    const SourceSpec unit = SourceSpec::linear();
    const PanelOptions opt{true};
    std::vector<Vec3> out(points.size(), Vec3::Zero());
    parallel_for(points.size(), jobs, [&](std::size_t k) {
        Vec3 g = Vec3::Zero();
        for (std::size_t t = 0; t < panels.size(); ++t) {
            const PanelResult r = panels[t].evaluate(points[k], unit, want_gradient | want_hessian, opt);
            const Vec3& n = panels[t].normal();
            for (int i = 0; i < 3; ++i) {
                const double phi = bc.phi[mesh.triangles[t][i]];
                g -= phi * (r.shapes[i].hessian * n) + bc.dphi_dn[t][i] * r.shapes[i].gradient;
            }
        }
        out[k] = g;
    });
    return out;
}

std::vector<Vec3> field_gradient(const MeshSurface& mesh, const BoundaryData& bc,
                                 const std::vector<Vec3>& points, int jobs)
{
    for (const Vec3& p : points)
        if (!p.allFinite() || winding_number(mesh, p) > 0.5 || surface_distance(mesh, p) <= 1e-12)
            throw EvalPointInsideOrOnSurface();
    return representation_gradient(mesh, bc, points, jobs);
}

PowerFit fit_power_law(const std::vector<double>& h, const std::vector<double>& eps)
{
    if (h.size() != eps.size() || h.size() < 2)
        throw std::invalid_argument("power-law fit needs two or more (h, eps) pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0) || !(eps[i] > 0.0))
            throw std::invalid_argument("power-law fit needs positive values");
        const double x = std::log(h[i]), y = std::log(eps[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw std::invalid_argument("power-law fit needs distinct h values");
    const double p = (n * sxy - sx * sy) / denom;
    return {std::exp((sy - p * sx) / n), p};
}

std::vector<Vec3> cube_study_points(const CubeStudyConfig& cfg)
{
    if (cfg.grid < 2)
        throw std::invalid_argument("study grid needs at least 2 points per side");
    std::vector<Vec3> pts;
    for (int j = 0; j < cfg.grid; ++j)
        for (int i = 0; i < cfg.grid; ++i) {
            const double x = -cfg.extent + 2.0 * cfg.extent * i / (cfg.grid - 1);
            const double y = -cfg.extent + 2.0 * cfg.extent * j / (cfg.grid - 1);
            if (std::max(std::abs(x), std::abs(y)) > cfg.mask)
                pts.emplace_back(x, y, 0.0);
        }
    return pts;
}

CubeStudyRow cube_gradient_error(double h, const CubeStudyConfig& cfg)
{
    const MeshSurface mesh = cube_mesh(divisions_for(h));
    const BoundaryData bc = point_source_bc(mesh, cfg.source);
    const std::vector<Vec3> pts = cube_study_points(cfg);
    const std::vector<Vec3> g = field_gradient(mesh, bc, pts, cfg.jobs);

    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Vec3 exact = point_source_gradient(cfg.source, pts[k]);
        err = std::max(err, (g[k] - exact).cwiseAbs().maxCoeff());
        scale = std::max(scale, exact.norm());
    }
    return {h, err / scale, static_cast<long>(mesh.triangles.size()), static_cast<long>(pts.size())};
}

ConvergenceStudy convergence_study(const std::vector<double>& h_list, const CubeStudyConfig& cfg)
{
    if (h_list.empty())
        throw std::invalid_argument("convergence study needs at least one h");
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1]))
            throw std::invalid_argument("h list must be sorted descending");

    ConvergenceStudy s;
    std::vector<double> hs, es;
    for (double h : h_list) {
        s.rows.push_back(cube_gradient_error(h, cfg));
        hs.push_back(h);
        es.push_back(s.rows.back().epsilon);
        if (s.rows.size() > 1 && !(es.back() < es[es.size() - 2]))
            s.monotone = false;
    }
    if (hs.size() >= 2)
        s.fit = fit_power_law(hs, es);
    return s;
}

Triangle3 study_triangle()
{
    return {Vec3(-0.5, -0.1, 0.0), Vec3(0.5, -0.1, 0.0), Vec3(0.0, 0.5, 0.0)};
}

std::array<Vec2, 5> study_points()
{
    return {Vec2(-0.5, -0.1), Vec2(0.1, 0.1), Vec2(0.1, -0.101), Vec2(-0.1, -0.099), Vec2(0.3, 0.2)};
}

std::vector<TriangleStudyRow> single_triangle_study(const TriangleStudyConfig& cfg)
{
    if (cfg.samples < 2)
        throw std::invalid_argument("z sweep needs at least 2 samples");
    cfg.quad.validate();

    const PreparedPanel panel(study_triangle());
    const Triangle2 tri = panel.plane_triangle();
    const double area2 = (tri[1] - tri[0]).x() * (tri[2] - tri[0]).y() - (tri[1] - tri[0]).y() * (tri[2] - tri[0]).x();

    // Barycentric coordinates from sub-areas, independent of the assembly's shape map.
    auto bary = [&](const Vec2& p, double* L) {
        for (int i = 0; i < 3; ++i) {
            const Vec2& a = tri[(i + 1) % 3];
            const Vec2& b = tri[(i + 2) % 3];
            L[i] = ((a - p).x() * (b - p).y() - (a - p).y() * (b - p).x()) / area2;
        }
    };

    const auto pts = study_points();
    std::vector<TriangleStudyRow> rows(pts.size());
    parallel_for(pts.size(), cfg.jobs, [&](std::size_t k) {
        TriangleStudyRow& row = rows[k];
        row.point = static_cast<int>(k) + 1;
        row.xy = pts[k];

        for (int s = 0; s < cfg.samples; ++s) {
            const double t = static_cast<double>(s) / (cfg.samples - 1);

            // I1 and I2 over z in [0, 1].
            {
                const Vec3 field(pts[k].x(), pts[k].y(), t);
                const Vec3 f = panel.local_field(field);
                const double z = f.z();
                const auto a1 = panel.shape_integrals(field, -1);
                std::array<double, 3> a2{};
                if (z != 0.0)
                    a2 = panel.shape_integrals(field, -3);

                std::vector<double> o(6, 0.0);
                const Vec2 p0(f.x(), f.y());
                if (z == 0.0) {
                    o = polar_inverse_distance([&](const Vec2& p, double* out) { bary(p, out); }, 3, tri, p0,
                                               cfg.quad)
                            .value;
                    o.resize(6, 0.0);
                }
                else {
                    o = adaptive_triangle(
                            [&](const Vec2& p, double* out) {
                                double L[3];
                                bary(p, L);
                                const double R2 = (p - p0).squaredNorm() + z * z;
                                const double R = std::sqrt(R2);
                                for (int i = 0; i < 3; ++i) {
                                    out[i] = L[i] / R;
                                    out[3 + i] = L[i] / (R2 * R);
                                }
                            },
                            6, tri, f, cfg.quad)
                            .value;
                }
                for (int i = 0; i < 3; ++i) {
                    row.eps[0] = std::max(row.eps[0], inv_4pi * std::abs(a1[i] - o[i]));
                    row.eps[1] = std::max(row.eps[1], inv_4pi * std::abs(z * (a2[i] - o[3 + i])));
                }
            }

            // I3 over z in [1/8, 1].
            {
                const Vec3 field(pts[k].x(), pts[k].y(), 0.125 + 0.875 * t);
                const Vec3 f = panel.local_field(field);
                const double z = f.z();
                const auto a3 = panel.shape_integrals(field, -5);
                const Vec2 p0(f.x(), f.y());
                const auto o = adaptive_triangle(
                                   [&](const Vec2& p, double* out) {
                                       double L[3];
                                       bary(p, L);
                                       const double R2 = (p - p0).squaredNorm() + z * z;
                                       const double R5 = R2 * R2 * std::sqrt(R2);
                                       for (int i = 0; i < 3; ++i)
                                           out[i] = L[i] / R5;
                                   },
                                   3, tri, f, cfg.quad)
                                   .value;
                for (int i = 0; i < 3; ++i)
                    row.eps[2] = std::max(row.eps[2], inv_4pi * std::abs(a3[i] - o[i]));
            }
        }
    });
    return rows;
}

} // namespace tripanel

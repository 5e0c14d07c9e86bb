#include "spikewalk/geom/gaussian_mass.hpp"

#include <array>
#include <cmath>

#include "spikewalk/error.hpp"

namespace spikewalk::geom {

namespace {

// 12-point Gauss-Legendre nodes/weights on [0,1].
struct GaussRule {
    std::array<double, 12> x{};
    std::array<double, 12> w{};
    GaussRule() {
        // Symmetric nodes on [-1,1], mapped to [0,1].
        const double n[6] = {0.1252334085114689, 0.3678314989981802,
                             0.5873179542866175, 0.7699026741943047,
                             0.9041172563704749, 0.9815606342467192};
        const double ww[6] = {0.2491470458134028, 0.2334925365383548,
                              0.2031674267230659, 0.1600783285433462,
                              0.1069393259953184, 0.0471753363865118};
        for (int i = 0; i < 6; ++i) {
            x[2 * i] = 0.5 * (1.0 - n[i]);
            x[2 * i + 1] = 0.5 * (1.0 + n[i]);
            w[2 * i] = w[2 * i + 1] = 0.5 * ww[i];
        }
    }
};
const GaussRule kGauss;

struct Tri {
    Eigen::Vector2d a, b, c;
};

double density(const Eigen::Vector2d& p, double inv2v, double norm) {
    return norm * std::exp(-p.squaredNorm() * inv2v);
}

// Tensor rule over the triangle via the degenerate-quad map
// x(u,v) = (1-u) a + u ((1-v) b + v c), |J| = 2 A u.
double tri_quad(const Tri& t, double inv2v, double norm) {
    const double area2 =
        (t.b.x() - t.a.x()) * (t.c.y() - t.a.y()) -
        (t.b.y() - t.a.y()) * (t.c.x() - t.a.x());
    double sum = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double u = kGauss.x[i];
        double inner = 0.0;
        for (int j = 0; j < 12; ++j) {
            const double v = kGauss.x[j];
            Eigen::Vector2d p =
                (1.0 - u) * t.a + u * ((1.0 - v) * t.b + v * t.c);
            inner += kGauss.w[j] * density(p, inv2v, norm);
        }
        sum += kGauss.w[i] * u * inner;
    }
    return area2 * sum;
}

double tri_adaptive(const Tri& t, double inv2v, double norm, double coarse,
                    double tol, int depth) {
    Eigen::Vector2d ab = 0.5 * (t.a + t.b);
    Eigen::Vector2d bc = 0.5 * (t.b + t.c);
    Eigen::Vector2d ca = 0.5 * (t.c + t.a);
    const Tri kids[4] = {{t.a, ab, ca}, {ab, t.b, bc}, {ca, bc, t.c}, {ab, bc, ca}};
    double fine = 0.0;
    double kid_vals[4];
    for (int k = 0; k < 4; ++k) {
        kid_vals[k] = tri_quad(kids[k], inv2v, norm);
        fine += kid_vals[k];
    }
    if (std::abs(fine - coarse) < tol || depth >= 14) return fine;
    double out = 0.0;
    for (int k = 0; k < 4; ++k)
        out += tri_adaptive(kids[k], inv2v, norm, kid_vals[k], 0.25 * tol,
                            depth + 1);
    return out;
}

} // namespace

double gaussian_polygon_mass(const std::vector<Eigen::Vector2d>& polygon,
                             double variance, double tol) {
    if (variance <= 0.0)
        raise(ErrorKind::domain, "gaussian mass requires positive variance");
    if (polygon.size() < 3) return 0.0;
    const double inv2v = 0.5 / variance;
    const double norm = inv2v / M_PI; // 1 / (2 pi variance)
    double total = 0.0;
    const double tri_tol = tol / static_cast<double>(polygon.size() - 2);
    for (size_t k = 1; k + 1 < polygon.size(); ++k) {
        // Signed fan triangulation handles non-convex simple polygons.
        Tri t{polygon[0], polygon[k], polygon[k + 1]};
        const double coarse = tri_quad(t, inv2v, norm);
        total += tri_adaptive(t, inv2v, norm, coarse, tri_tol, 0);
    }
    // The fan integral is signed by the traversal orientation; the enclosed
    // mass itself does not depend on winding.
    double area2 = 0.0;
    for (size_t k = 0; k < polygon.size(); ++k) {
        const Eigen::Vector2d& p = polygon[k];
        const Eigen::Vector2d& q = polygon[(k + 1) % polygon.size()];
        area2 += p.x() * q.y() - p.y() * q.x();
    }
    return area2 < 0.0 ? -total : total;
}

double gaussian_rect_mass(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi,
                          const Eigen::Vector2d& center, double variance) {
    if (variance <= 0.0)
        raise(ErrorKind::domain, "gaussian mass requires positive variance");
    const double s = 1.0 / std::sqrt(2.0 * variance);
    const double mx = 0.5 * (std::erf((hi.x() - center.x()) * s) -
                             std::erf((lo.x() - center.x()) * s));
    const double my = 0.5 * (std::erf((hi.y() - center.y()) * s) -
                             std::erf((lo.y() - center.y()) * s));
    return mx * my;
}

double gaussian_quadrant_mass(double dx, double dy, double variance) {
    if (variance <= 0.0)
        raise(ErrorKind::domain, "gaussian mass requires positive variance");
    const double s = 1.0 / std::sqrt(2.0 * variance);
    return 0.25 * std::erfc(dx * s) * std::erfc(dy * s);
}

} // namespace spikewalk::geom

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "spikewalk/error.hpp"
#include "spikewalk/geom/gaussian_mass.hpp"
#include "spikewalk/geom/gnomonic.hpp"
#include "spikewalk/geom/surface_chains.hpp"
#include "spikewalk/geom/surface_mesh.hpp"
#include "spikewalk/rng.hpp"

using namespace spikewalk;
using namespace spikewalk::geom;

namespace {

double triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                     const Eigen::Vector3d& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

Eigen::Vector3d random_unit(uint64_t seed, uint64_t stream) {
    // Box-Muller-free rejection-free construction from spherical angles.
    const double z = 2.0 * rng::draw_unit(seed, stream, 0) - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng::draw_unit(seed, stream, 1);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

std::vector<double> sorted_nonzeros(const Eigen::MatrixXd& p, int row) {
    std::vector<double> v;
    for (int j = 0; j < p.cols(); ++j)
        if (p(row, j) != 0.0) v.push_back(p(row, j));
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("torus mesh wires a four-neighbor wraparound grid") {
    const SurfaceMesh m = build_torus_mesh(5);
    CHECK(m.n_states() == 25);
    for (int s = 0; s < 25; ++s) {
        CHECK(m.kinds[static_cast<size_t>(s)] == "cell");
        CHECK(m.adjacency[static_cast<size_t>(s)].size() == 4);
    }
    // State (0,0) wraps to (4,0), (1,0), (0,4), (0,1).
    const std::set<int> n0(m.adjacency[0].begin(), m.adjacency[0].end());
    CHECK(n0 == std::set<int>{20, 5, 4, 1});
    CHECK(m.states(7, 0) == 1.0); // state 7 = (1, 2)
    CHECK(m.states(7, 1) == 2.0);

    CHECK_THROWS_AS(build_torus_mesh(1), Error);
}

TEST_CASE("twice-subdivided icosahedral sphere has the expected combinatorics") {
    const SurfaceMesh m = build_geodesic_sphere(2);
    CHECK(m.n_states() == 320);
    CHECK(m.vertices.rows() == 162);

    // Vertex degrees: the 12 original icosahedron vertices keep degree 5.
    std::vector<int> degree(static_cast<size_t>(m.vertices.rows()), 0);
    for (const auto& el : m.elements) {
        CHECK(el.size() == 3);
        for (int v : el) ++degree[static_cast<size_t>(v)];
    }
    int fives = 0, sixes = 0;
    for (int d : degree) {
        if (d == 5) ++fives;
        if (d == 6) ++sixes;
    }
    CHECK(fives == 12);
    CHECK(sixes == 150);

    // Adjacency split: triangles touching a degree-5 vertex have 11
    // vertex-sharing neighbors, the rest have 12.
    int eleven = 0, twelve = 0;
    for (int s = 0; s < 320; ++s) {
        const size_t n = m.adjacency[static_cast<size_t>(s)].size();
        if (n == 11) ++eleven;
        if (n == 12) ++twelve;
    }
    CHECK(eleven == 60);
    CHECK(twelve == 260);

    for (int s = 0; s < 320; ++s)
        CHECK(std::abs(m.states.row(s).norm() - 1.0) <= 1e-12);

    double total_area = 0.0;
    for (const auto& el : m.elements)
        total_area += triangle_area(m.vertices.row(el[0]), m.vertices.row(el[1]),
                                    m.vertices.row(el[2]));
    CHECK(total_area > 12.2); // flat triangles slightly under-cover 4*pi
    CHECK(total_area < 4.0 * std::numbers::pi);

    CHECK_THROWS_AS(build_geodesic_sphere(1), Error);
}

TEST_CASE("tangent frames are honest rotations") {
    for (uint64_t i = 0; i < 8; ++i) {
        const Eigen::Vector3d r = random_unit(42, i);
        const ProjectionFrame f = make_frame(r);
        CHECK((f.rotation * f.rotation.transpose() - Eigen::Matrix3d::Identity()).norm() <=
              1e-12);
        CHECK(f.rotation.determinant() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((f.rotation * r - Eigen::Vector3d(0, 0, 1)).norm() <= 1e-12);
    }

    // The antipodal special case still produces a proper rotation.
    const Eigen::Matrix3d r =
        rotation_between(Eigen::Vector3d(0, 0, -1), Eigen::Vector3d(0, 0, 1));
    CHECK((r * Eigen::Vector3d(0, 0, -1) - Eigen::Vector3d(0, 0, 1)).norm() <= 1e-12);
    CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() <= 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("central projection round-trips and maps great circles to lines") {
    const ProjectionFrame f = make_frame(random_unit(7, 0));

    for (uint64_t i = 1; i <= 10; ++i) {
        // A point in the open hemisphere around the frame center.
        Eigen::Vector3d p = (f.center + 0.8 * random_unit(7, i)).normalized();
        if (p.dot(f.center) <= 0.05) continue;
        const Eigen::Vector2d q = gnomonic_project(f, p);
        CHECK((gnomonic_unproject(f, q) - p).norm() <= 1e-10);
    }

    // Points of one great circle project to one straight line.
    const Eigen::Vector3d a = (f.center + Eigen::Vector3d(0.3, 0.1, 0.0)).normalized();
    const Eigen::Vector3d b = (f.center + Eigen::Vector3d(-0.1, 0.25, 0.1)).normalized();
    const Eigen::Vector2d qa = gnomonic_project(f, a);
    const Eigen::Vector2d qb = gnomonic_project(f, b);
    for (double t : {0.2, 0.5, 0.8}) {
        const Eigen::Vector3d mid = ((1.0 - t) * a + t * b).normalized(); // on the arc
        const Eigen::Vector2d qm = gnomonic_project(f, mid);
        const Eigen::Vector2d u = qb - qa, v = qm - qa;
        CHECK(std::abs(u.x() * v.y() - u.y() * v.x()) <= 1e-10);
    }

    // The far hemisphere is outside the chart.
    CHECK_THROWS_AS(gnomonic_project(f, -f.center), Error);
    const Eigen::Vector3d back = gnomonic_unproject(f, {3.7, -1.2});
    CHECK(back.dot(f.center) > 0.0);
    CHECK(std::abs(back.norm() - 1.0) <= 1e-12);
}

TEST_CASE("polygon mass agrees with closed forms and is winding-invariant") {
    const double var = 0.37;
    const double s10 = 10.0 * std::sqrt(var);

    const std::vector<Eigen::Vector2d> big{{-s10, -s10}, {s10, -s10}, {s10, s10}, {-s10, s10}};
    CHECK(gaussian_polygon_mass(big, var) == doctest::Approx(1.0).epsilon(1e-6));

    const std::vector<Eigen::Vector2d> quarter{{0, 0}, {s10, 0}, {s10, s10}, {0, s10}};
    CHECK(gaussian_polygon_mass(quarter, var) == doctest::Approx(0.25).epsilon(1e-6));

    // Orientation of the boundary must not matter.
    std::vector<Eigen::Vector2d> reversed(quarter.rbegin(), quarter.rend());
    CHECK(gaussian_polygon_mass(reversed, var) ==
          doctest::Approx(gaussian_polygon_mass(quarter, var)).epsilon(1e-12));

    // Rectangle quadrature against the erf closed form.
    const Eigen::Vector2d lo(-0.3, 0.15), hi(0.8, 0.9);
    const std::vector<Eigen::Vector2d> rect{{lo.x(), lo.y()}, {hi.x(), lo.y()},
                                            {hi.x(), hi.y()}, {lo.x(), hi.y()}};
    CHECK(gaussian_polygon_mass(rect, var) ==
          doctest::Approx(gaussian_rect_mass(lo, hi, {0, 0}, var)).epsilon(1e-9));

    // Splitting a triangle preserves the total.
    const Eigen::Vector2d a(0.1, 0.2), b(0.9, -0.3), c(0.4, 0.8);
    const Eigen::Vector2d mbc = 0.5 * (b + c);
    const double whole = gaussian_polygon_mass({a, b, c}, var);
    const double parts =
        gaussian_polygon_mass({a, b, mbc}, var) + gaussian_polygon_mass({a, mbc, c}, var);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-8));

    // Degenerate polygons carry no mass.
    CHECK(gaussian_polygon_mass({{0, 0}, {1, 1}, {2, 2}}, var) == 0.0);
}

TEST_CASE("triangle mass matches Monte Carlo integration") {
    const double var = 0.5;
    const Eigen::Vector2d a(0.1, 0.2), b(0.9, -0.3), c(0.4, 0.8);
    const double area = 0.5 * std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());

    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = rng::draw_unit(1234, 0, static_cast<uint64_t>(2 * i));
        double v = rng::draw_unit(1234, 0, static_cast<uint64_t>(2 * i + 1));
        if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        const Eigen::Vector2d p = a + u * (b - a) + v * (c - a);
        const double pdf =
            std::exp(-p.squaredNorm() / (2.0 * var)) / (2.0 * std::numbers::pi * var);
        sum += pdf;
        sum_sq += pdf * pdf;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    const double mc = area * mean;
    const double quad = gaussian_polygon_mass({a, b, c}, var);
    CHECK(std::abs(quad - mc) <= 4.0 * area * se);
}

TEST_CASE("closed-form rectangle and quadrant masses") {
    CHECK(gaussian_quadrant_mass(0.0, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(gaussian_quadrant_mass(0.3, -0.2, 0.8) ==
          doctest::Approx(gaussian_rect_mass({0.3, -0.2}, {100.0, 100.0}, {0, 0}, 0.8))
              .epsilon(1e-10));

    const double var = 0.6;
    const double byhand =
        0.25 * (std::erf(0.5 / std::sqrt(2.0 * var)) - std::erf(-0.2 / std::sqrt(2.0 * var))) *
        (std::erf(0.9 / std::sqrt(2.0 * var)) - std::erf(0.1 / std::sqrt(2.0 * var)));
    CHECK(gaussian_rect_mass({-0.2, 0.1}, {0.5, 0.9}, {0, 0}, var) ==
          doctest::Approx(byhand).epsilon(1e-14));
}

TEST_CASE("sphere diffusion chain is a valid near-reversible random walk") {
    const SurfaceMesh mesh = build_geodesic_sphere(2);
    ChainDiagnostics diag;
    const dtmc::TransitionModel chain =
        sphere_transition_matrix(mesh, 1.0 / 42.0, 0.1, &diag);
    chain.validate();
    CHECK(!diag.warned);
    CHECK(diag.max_leftover < 0.05);
    CHECK(chain.dt == 0.1);

    const Eigen::MatrixXd& p = chain.matrix();
    for (int s = 0; s < 320; ++s) {
        CHECK(p(s, s) > 0.0);
        CHECK(p(s, s) < 1.0);
    }

    // The isotropic kernel makes the walk nearly doubly stochastic; the
    // pentagon fans carry the largest asymmetry (about 0.056).
    double mean_dev = 0.0;
    for (int j = 0; j < 320; ++j) {
        const double dev = std::abs(p.col(j).sum() - 1.0);
        CHECK(dev <= 0.07);
        mean_dev += dev / 320.0;
    }
    CHECK(mean_dev <= 0.04); // observed ~0.029 at these parameters
}

TEST_CASE("sphere chain rows respect the icosahedral symmetry") {
    const SurfaceMesh mesh = build_geodesic_sphere(2);
    const dtmc::TransitionModel chain = sphere_transition_matrix(mesh, 1.0 / 42.0, 0.1);
    const Eigen::MatrixXd& p = chain.matrix();

    std::vector<int> pentagon_states, hex_states;
    for (int s = 0; s < 320; ++s) {
        (mesh.adjacency[static_cast<size_t>(s)].size() == 11 ? pentagon_states : hex_states)
            .push_back(s);
    }
    REQUIRE(pentagon_states.size() == 60);

    // All 60 pentagon-fan triangles are equivalent, so their transition
    // rows agree as multisets.
    const std::vector<double> reference = sorted_nonzeros(p, pentagon_states[0]);
    REQUIRE(reference.size() == 12); // self plus 11 neighbors
    for (int s : pentagon_states) {
        const std::vector<double> row = sorted_nonzeros(p, s);
        REQUIRE(row.size() == reference.size());
        for (size_t i = 0; i < row.size(); ++i)
            CHECK(std::abs(row[i] - reference[i]) <= 1e-9);
    }

    // Hex-class triangles fall into a handful of congruence classes; within
    // a class both the row multiset and the incoming column mass agree.
    std::vector<std::vector<double>> signatures;
    std::vector<std::vector<int>> groups;
    for (int s : hex_states) {
        const std::vector<double> sig = sorted_nonzeros(p, s);
        bool placed = false;
        for (size_t g = 0; g < groups.size(); ++g) {
            if (signatures[g].size() != sig.size()) continue;
            double worst = 0.0;
            for (size_t i = 0; i < sig.size(); ++i)
                worst = std::max(worst, std::abs(signatures[g][i] - sig[i]));
            if (worst <= 1e-8) {
                groups[g].push_back(s);
                placed = true;
                break;
            }
        }
        if (!placed) {
            signatures.push_back(sig);
            groups.push_back({s});
        }
    }
    CHECK(groups.size() >= 2);
    for (const auto& group : groups) {
        CHECK(group.size() >= 10); // symmetry orbits, not singleton noise
        const double ref_col = p.col(group[0]).sum();
        for (int s : group) CHECK(std::abs(p.col(s).sum() - ref_col) <= 1e-6);
    }
}

TEST_CASE("two spheres joined by a hexagonal prism have the documented layout") {
    const SurfaceMesh m = build_barbell_mesh();
    REQUIRE(m.barbell.has_value());
    const BarbellLayout& lay = *m.barbell;

    CHECK(m.n_states() == 748);
    CHECK(lay.n_sphere_states == 314);
    CHECK(lay.rings == 20);
    int triangles = 0, rectangles = 0;
    for (const auto& k : m.kinds) {
        if (k == "triangle") ++triangles;
        if (k == "rectangle") ++rectangles;
    }
    CHECK(triangles == 628);
    CHECK(rectangles == 120);

    int removed = 0;
    for (int t : lay.triangle_state)
        if (t == -1) ++removed;
    CHECK(removed == 6);

    // Sphere centroids sit on unit spheres centered at -/+ 2 on the join
    // axis; the right sphere is the exact mirror image of the left.
    const Eigen::Vector3d left_center(0, -lay.sphere_center, 0);
    for (int s = 0; s < lay.n_sphere_states; ++s) {
        CHECK(std::abs((m.states.row(s).transpose() - left_center).norm() - 1.0) <= 1e-12);
        const int r = lay.right_state(s);
        CHECK(m.states(r, 0) == m.states(s, 0));
        CHECK(m.states(r, 1) == -m.states(s, 1));
        CHECK(m.states(r, 2) == m.states(s, 2));
    }

    // Rectangles tile the prism between the sphere rims.
    for (int f = 0; f < 6; ++f)
        for (int r = 0; r < lay.rings; ++r) {
            const int s = lay.rect_state(f, r);
            CHECK(m.kinds[static_cast<size_t>(s)] == "rectangle");
            CHECK(m.states(s, 1) > -1.0);
            CHECK(m.states(s, 1) < 1.0);
        }
}

TEST_CASE("barbell chain is mirror symmetric and splits corner mass in three") {
    const SurfaceMesh mesh = build_barbell_mesh();
    const BarbellLayout& lay = *mesh.barbell;
    ChainDiagnostics diag;
    const dtmc::TransitionModel chain = barbell_transition_matrix(mesh, 0.5, 0.005, &diag);
    chain.validate();
    CHECK(!diag.warned);

    const Eigen::MatrixXd& p = chain.matrix();
    const int n = chain.n_states();

    // Mirror permutation: left sphere <-> right sphere, ring r <-> ring
    // rings-1-r on the same prism face.
    std::vector<int> sigma(static_cast<size_t>(n));
    for (int s = 0; s < lay.n_sphere_states; ++s) {
        sigma[static_cast<size_t>(s)] = lay.right_state(s);
        sigma[static_cast<size_t>(lay.right_state(s))] = s;
    }
    for (int f = 0; f < 6; ++f)
        for (int r = 0; r < lay.rings; ++r)
            sigma[static_cast<size_t>(lay.rect_state(f, r))] =
                lay.rect_state(f, lay.rings - 1 - r);

    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(p(sigma[static_cast<size_t>(i)],
                                              sigma[static_cast<size_t>(j)]) -
                                             p(i, j)));
    CHECK(worst <= 1e-9);

    // End-ring rectangles split each corner quadrant equally among the three
    // triangles that meet the rectangle only at that corner.
    const int rect = lay.rect_state(0, 0);
    const std::vector<int>& rect_verts = mesh.elements[static_cast<size_t>(rect)];
    int checked_corners = 0;
    for (int corner = 0; corner < 2; ++corner) {
        const int vid = rect_verts[static_cast<size_t>(corner)]; // ring-0 rim corners
        std::vector<double> corner_mass;
        for (int s : mesh.adjacency[static_cast<size_t>(rect)]) {
            if (mesh.kinds[static_cast<size_t>(s)] != "triangle") continue;
            const auto& tri = mesh.elements[static_cast<size_t>(s)];
            int shared = 0;
            bool at_corner = false;
            for (int v : tri) {
                if (std::find(rect_verts.begin(), rect_verts.end(), v) != rect_verts.end()) {
                    ++shared;
                    at_corner = at_corner || v == vid;
                }
            }
            if (shared == 1 && at_corner) corner_mass.push_back(p(rect, s));
        }
        REQUIRE(corner_mass.size() == 3);
        CHECK(corner_mass[0] > 0.0);
        CHECK(corner_mass[1] == corner_mass[0]);
        CHECK(corner_mass[2] == corner_mass[0]);
        ++checked_corners;
    }
    CHECK(checked_corners == 2);
}

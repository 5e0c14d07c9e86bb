#include "spikewalk/geom/surface_chains.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <vector>

#include "spikewalk/error.hpp"
#include "spikewalk/geom/gaussian_mass.hpp"
#include "spikewalk/geom/gnomonic.hpp"

namespace spikewalk::geom {

namespace {

constexpr double kLeftoverWarnThreshold = 0.05;

void note_leftover(ChainDiagnostics* diag, int state, double leftover) {
    if (!diag) return;
    if (leftover > diag->max_leftover) {
        diag->max_leftover = leftover;
        diag->state = state;
    }
    if (leftover >= kLeftoverWarnThreshold && !diag->warned) {
        diag->warned = true;
        std::fprintf(stderr,
                     "warning: off-neighbor transition mass %.4f at state %d "
                     "reaches the 0.05 validity threshold; reduce dt\n",
                     leftover, state);
    }
}

// Gaussian masses from each triangle's centroid to itself and its
// vertex-sharing neighbors, all projected through the centroid's frame.
std::vector<std::vector<std::pair<int, double>>> sphere_rows(
    const Eigen::MatrixXd& v, const Eigen::MatrixXi& f, double variance) {
    const int nt = static_cast<int>(f.rows());
    std::vector<std::vector<int>> by_vertex(v.rows());
    for (int t = 0; t < nt; ++t)
        for (int k = 0; k < 3; ++k) by_vertex[f(t, k)].push_back(t);

    std::vector<std::vector<std::pair<int, double>>> rows(nt);
    for (int t = 0; t < nt; ++t) {
        std::set<int> targets;
        for (int k = 0; k < 3; ++k)
            targets.insert(by_vertex[f(t, k)].begin(), by_vertex[f(t, k)].end());
        Eigen::Vector3d centroid =
            (v.row(f(t, 0)) + v.row(f(t, 1)) + v.row(f(t, 2))).transpose() / 3.0;
        const ProjectionFrame frame = make_frame(centroid.normalized());
        for (int u : targets) {
            std::vector<Eigen::Vector2d> poly;
            poly.reserve(3);
            for (int k = 0; k < 3; ++k)
                poly.push_back(gnomonic_project(frame, v.row(f(u, k)).transpose()));
            rows[t].emplace_back(u, gaussian_polygon_mass(poly, variance));
        }
    }
    return rows;
}

Eigen::MatrixXi elements_as_triangles(const SurfaceMesh& mesh) {
    Eigen::MatrixXi f(mesh.elements.size(), 3);
    for (size_t e = 0; e < mesh.elements.size(); ++e) {
        if (mesh.elements[e].size() != 3 || mesh.kinds[e] != "triangle")
            raise(ErrorKind::domain, "sphere chain requires a pure triangle mesh");
        for (int k = 0; k < 3; ++k) f(e, k) = mesh.elements[e][k];
    }
    return f;
}

} // namespace

dtmc::TransitionModel sphere_transition_matrix(const SurfaceMesh& mesh,
                                               double alpha, double dt,
                                               ChainDiagnostics* diag) {
    if (alpha <= 0.0 || dt <= 0.0)
        raise(ErrorKind::domain, "surface chain requires alpha > 0 and dt > 0");
    if (mesh.barbell)
        raise(ErrorKind::domain, "use barbell_transition_matrix for barbell meshes");
    const Eigen::MatrixXi f = elements_as_triangles(mesh);
    const auto rows = sphere_rows(mesh.vertices, f, 2.0 * alpha * dt);

    const int n = mesh.n_states();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double total = 0.0;
        for (const auto& [j, mass] : rows[i]) {
            p(i, j) += mass;
            total += mass;
        }
        note_leftover(diag, i, 1.0 - total);
        p(i, i) += 1.0 - total;
        dtmc::repair_row_sum(p.row(i));
    }

    dtmc::TransitionModel model;
    model.dt = dt;
    model.positions = mesh.states;
    model.steps = {std::move(p)};
    model.validate();
    return model;
}

dtmc::TransitionModel barbell_transition_matrix(const SurfaceMesh& mesh,
                                                double alpha, double dt,
                                                ChainDiagnostics* diag) {
    if (alpha <= 0.0 || dt <= 0.0)
        raise(ErrorKind::domain, "surface chain requires alpha > 0 and dt > 0");
    if (!mesh.barbell)
        raise(ErrorKind::domain, "barbell chain requires a barbell mesh");
    const BarbellLayout& lay = *mesh.barbell;
    const double variance = 2.0 * alpha * dt;
    const Eigen::MatrixXd& v = lay.sphere_vertices;
    const Eigen::MatrixXi& f = lay.sphere_triangles;
    const int nt = static_cast<int>(f.rows());
    const int n = mesh.n_states();
    const int ns = lay.n_sphere_states;

    // Removed triangle -> prism side, and surviving triangles around each
    // hexagon corner (for the quadrant split at the prism ends).
    std::vector<int> removed_side(nt, -1);
    for (int s = 0; s < 6; ++s) removed_side[lay.removed_triangle[s]] = s;
    std::array<int, 6> edge_sharer{}; // surviving triangle across side s
    std::array<std::vector<int>, 6> corner_tris{}; // surviving tris at hex corner c
    for (int t = 0; t < nt; ++t) {
        if (lay.triangle_state[t] < 0) continue;
        for (int s = 0; s < 6; ++s) {
            const int a = lay.hex_vertex[s], b = lay.hex_vertex[(s + 1) % 6];
            int hits = 0;
            for (int k = 0; k < 3; ++k)
                hits += (f(t, k) == a) + (f(t, k) == b);
            if (hits == 2) edge_sharer[s] = t;
        }
        for (int c = 0; c < 6; ++c)
            for (int k = 0; k < 3; ++k)
                if (f(t, k) == lay.hex_vertex[c]) corner_tris[c].push_back(t);
    }

    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);

    // Sphere rows: full-sphere masses with removed-fan columns redirected to
    // the abutting end rectangle; the right sphere is the exact mirror image
    // of the left, so its rows are the mirror permutation of the left rows.
    const auto rows = sphere_rows(v, f, variance);
    auto mirror_col = [&](int col) {
        if (col < ns) return col + ns;
        if (col < 2 * ns) return col - ns;
        const int rect = col - 2 * ns;
        const int face = rect / lay.rings, ring = rect % lay.rings;
        return lay.rect_state(face, lay.rings - 1 - ring);
    };
    for (int t = 0; t < nt; ++t) {
        const int s = lay.triangle_state[t];
        if (s < 0) continue;
        double total = 0.0;
        for (const auto& [u, mass] : rows[t]) {
            const int col = lay.triangle_state[u] >= 0
                                ? lay.triangle_state[u]
                                : lay.rect_state(removed_side[u], 0);
            p(s, col) += mass;
            total += mass;
        }
        note_leftover(diag, s, 1.0 - total);
        p(s, s) += 1.0 - total;
        for (int col = 0; col < n; ++col)
            if (p(s, col) != 0.0) p(lay.right_state(s), mirror_col(col)) = p(s, col);
        dtmc::repair_row_sum(p.row(s));
        dtmc::repair_row_sum(p.row(lay.right_state(s)));
    }

    // Rectangle rows over the unfolded prism: u runs around the hexagon
    // (wrapping at the circumference), y along the axis from the left end.
    const double circ = lay.side_offset[6];
    const double rw = lay.ring_width;
    for (int face = 0; face < 6; ++face) {
        const double cx = lay.side_offset[face] + 0.5 * lay.side_length[face];
        for (int r = 0; r < lay.rings; ++r) {
            const int s = lay.rect_state(face, r);
            const double cy = (r + 0.5) * rw;
            double total = 0.0;
            for (int df = -1; df <= 1; ++df) {
                const int g = (face + df + 6) % 6;
                double lo_u = lay.side_offset[g];
                // Nearest wrapped image of the destination side.
                if (lo_u + 0.5 * lay.side_length[g] - cx > 0.5 * circ) lo_u -= circ;
                if (cx - lo_u - 0.5 * lay.side_length[g] > 0.5 * circ) lo_u += circ;
                const double hi_u = lo_u + lay.side_length[g];
                for (int dr = -1; dr <= 1; ++dr) {
                    const int r2 = r + dr;
                    if (r2 < 0 || r2 >= lay.rings) continue;
                    const double mass = gaussian_rect_mass(
                        {lo_u, r2 * rw}, {hi_u, (r2 + 1) * rw}, {cx, cy}, variance);
                    p(s, lay.rect_state(g, r2)) += mass;
                    total += mass;
                }
            }
            // Prism ends: unfold the side-sharing triangle across the glued
            // hexagon side; corner quadrants split equally among the three
            // triangles meeting only at that corner.
            const bool left_end = r == 0, right_end = r == lay.rings - 1;
            if (left_end || right_end) {
                const double end_dist = (r == 0 ? r + 0.5 : lay.rings - 1 - r + 0.5) * rw;
                auto tri_state = [&](int t) {
                    return left_end ? lay.triangle_state[t]
                                    : lay.right_state(lay.triangle_state[t]);
                };
                const int et = edge_sharer[face];
                const Eigen::Vector3d a = v.row(lay.hex_vertex[face]).transpose();
                const Eigen::Vector3d b =
                    v.row(lay.hex_vertex[(face + 1) % 6]).transpose();
                Eigen::Vector3d apex = Eigen::Vector3d::Zero();
                for (int k = 0; k < 3; ++k) {
                    const int vid = f(et, k);
                    if (vid != lay.hex_vertex[face] &&
                        vid != lay.hex_vertex[(face + 1) % 6])
                        apex = v.row(vid).transpose();
                }
                const double w = lay.side_length[face];
                const double ta = (apex - a).dot(b - a) / w;
                const double ha =
                    std::sqrt(std::max(0.0, (apex - a).squaredNorm() - ta * ta));
                // Polygon coordinates relative to the rectangle center.
                const double u0 = lay.side_offset[face];
                std::vector<Eigen::Vector2d> tri{{u0 - cx, -end_dist},
                                                 {u0 + w - cx, -end_dist},
                                                 {u0 + ta - cx, -ha - end_dist}};
                const double edge_mass = gaussian_polygon_mass(tri, variance);
                p(s, tri_state(et)) += edge_mass;
                total += edge_mass;
                for (int side = 0; side < 2; ++side) {
                    const int corner = (face + side) % 6;
                    const double du = side == 0 ? cx - u0 : u0 + w - cx;
                    const double q = gaussian_quadrant_mass(du, end_dist, variance);
                    int assigned = 0;
                    for (int t : corner_tris[corner]) {
                        if (t == et) continue;
                        p(s, tri_state(t)) += q / 3.0;
                        total += q / 3.0;
                        ++assigned;
                    }
                    if (assigned != 3)
                        raise(ErrorKind::structural,
                              "expected three corner-sharing triangles at a "
                              "prism corner");
                }
            }
            note_leftover(diag, s, 1.0 - total);
            p(s, s) += 1.0 - total;
            dtmc::repair_row_sum(p.row(s));
        }
    }

    dtmc::TransitionModel model;
    model.dt = dt;
    model.positions = mesh.states;
    model.steps = {std::move(p)};
    model.validate();
    return model;
}

} // namespace spikewalk::geom

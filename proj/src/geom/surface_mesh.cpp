#include "spikewalk/geom/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "spikewalk/error.hpp"
#include "spikewalk/geom/gnomonic.hpp"

namespace spikewalk::geom {

namespace {

using nlohmann::json;

struct IndexMesh {
    std::vector<Eigen::Vector3d> v;
    std::vector<std::array<int, 3>> t;
};

IndexMesh icosahedron() {
    IndexMesh m;
    const double z = 1.0 / std::sqrt(5.0);
    const double r = 2.0 / std::sqrt(5.0);
    m.v.push_back({0.0, 0.0, 1.0});
    m.v.push_back({0.0, 0.0, -1.0});
    for (int k = 0; k < 5; ++k) { // upper ring, ids 2..6
        const double a = 2.0 * M_PI * k / 5.0;
        m.v.push_back({r * std::cos(a), r * std::sin(a), z});
    }
    for (int k = 0; k < 5; ++k) { // lower ring, ids 7..11
        const double a = 2.0 * M_PI * k / 5.0 + M_PI / 5.0;
        m.v.push_back({r * std::cos(a), r * std::sin(a), -z});
    }
    for (int k = 0; k < 5; ++k) {
        const int u0 = 2 + k, u1 = 2 + (k + 1) % 5;
        const int l0 = 7 + k, l1 = 7 + (k + 1) % 5;
        m.t.push_back({0, u0, u1});
        m.t.push_back({u0, l0, u1});
        m.t.push_back({u1, l0, l1});
        m.t.push_back({1, l1, l0});
    }
    return m;
}

// One flat midpoint subdivision; shared edges share midpoint vertices.
IndexMesh subdivide(const IndexMesh& in) {
    IndexMesh out;
    out.v = in.v;
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
        const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        auto it = mid.find(key);
        if (it != mid.end()) return it->second;
        out.v.push_back(0.5 * (out.v[a] + out.v[b]));
        const int id = static_cast<int>(out.v.size()) - 1;
        mid.emplace(key, id);
        return id;
    };
    for (const auto& t : in.t) {
        const int ab = midpoint(t[0], t[1]);
        const int bc = midpoint(t[1], t[2]);
        const int ca = midpoint(t[2], t[0]);
        out.t.push_back({t[0], ab, ca});
        out.t.push_back({ab, t[1], bc});
        out.t.push_back({ca, bc, t[2]});
        out.t.push_back({ab, bc, ca});
    }
    return out;
}

// The paper's construction: subdivide flat twice, project to the sphere once.
IndexMesh geodesic_320() {
    IndexMesh m = subdivide(subdivide(icosahedron()));
    for (auto& v : m.v) v.normalize();
    return m;
}

std::vector<std::vector<int>> vertex_sharing_adjacency(
    const std::vector<std::vector<int>>& elements, int n_vertices) {
    std::vector<std::vector<int>> by_vertex(n_vertices);
    for (size_t e = 0; e < elements.size(); ++e)
        for (int v : elements[e]) by_vertex[v].push_back(static_cast<int>(e));
    std::vector<std::vector<int>> adj(elements.size());
    for (size_t e = 0; e < elements.size(); ++e) {
        std::set<int> peers;
        for (int v : elements[e])
            peers.insert(by_vertex[v].begin(), by_vertex[v].end());
        peers.erase(static_cast<int>(e));
        adj[e].assign(peers.begin(), peers.end());
    }
    return adj;
}

double triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                     const Eigen::Vector3d& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

} // namespace

void SurfaceMesh::write_json(std::ostream& os) const {
    json j;
    j["name"] = name;
    j["vertices"] = json::array();
    for (Eigen::Index i = 0; i < vertices.rows(); ++i)
        j["vertices"].push_back({vertices(i, 0), vertices(i, 1), vertices(i, 2)});
    j["elements"] = elements;
    j["states"] = json::array();
    for (Eigen::Index i = 0; i < states.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index d = 0; d < states.cols(); ++d) row.push_back(states(i, d));
        j["states"].push_back(std::move(row));
    }
    j["adjacency"] = adjacency;
    j["kinds"] = kinds;
    os << j.dump(2) << '\n';
}

void SurfaceMesh::write_centroid_csv(std::ostream& os) const {
    os << "state_id";
    const char* axes[] = {"x", "y", "z"};
    for (Eigen::Index d = 0; d < states.cols(); ++d)
        os << ',' << (d < 3 ? axes[d] : "w");
    os << '\n';
    for (Eigen::Index i = 0; i < states.rows(); ++i) {
        os << i;
        for (Eigen::Index d = 0; d < states.cols(); ++d) os << ',' << states(i, d);
        os << '\n';
    }
}

SurfaceMesh build_torus_mesh(int n) {
    if (n < 2) raise(ErrorKind::domain, "torus mesh requires n >= 2");
    SurfaceMesh m;
    m.name = "torus";
    m.vertices.resize(0, 3);
    m.states.resize(n * n, 2);
    m.elements.assign(n * n, {});
    m.kinds.assign(n * n, "cell");
    m.adjacency.resize(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int s = i * n + j;
            m.states(s, 0) = i;
            m.states(s, 1) = j;
            std::set<int> nb{((i + 1) % n) * n + j, ((i + n - 1) % n) * n + j,
                             i * n + (j + 1) % n, i * n + (j + n - 1) % n};
            nb.erase(s);
            m.adjacency[s].assign(nb.begin(), nb.end());
        }
    }
    return m;
}

SurfaceMesh build_geodesic_sphere(int subdivisions) {
    if (subdivisions != 2)
        raise(ErrorKind::domain,
              "geodesic sphere supports exactly 2 subdivisions (320 triangles)");
    const IndexMesh g = geodesic_320();
    SurfaceMesh m;
    m.name = "geodesic-sphere";
    m.vertices.resize(static_cast<Eigen::Index>(g.v.size()), 3);
    for (size_t i = 0; i < g.v.size(); ++i) m.vertices.row(i) = g.v[i];
    m.elements.reserve(g.t.size());
    for (const auto& t : g.t) m.elements.push_back({t[0], t[1], t[2]});
    m.states.resize(static_cast<Eigen::Index>(g.t.size()), 3);
    for (size_t e = 0; e < g.t.size(); ++e) {
        Eigen::Vector3d c = (g.v[g.t[e][0]] + g.v[g.t[e][1]] + g.v[g.t[e][2]]) / 3.0;
        m.states.row(e) = c.normalized();
    }
    m.kinds.assign(g.t.size(), "triangle");
    m.adjacency = vertex_sharing_adjacency(m.elements, static_cast<int>(g.v.size()));
    return m;
}

SurfaceMesh build_barbell_mesh() {
    const IndexMesh g = geodesic_320();
    const int nv = static_cast<int>(g.v.size());
    const int nt = static_cast<int>(g.t.size());

    // Hole center: a first-subdivision edge midpoint (degree 6), here the
    // one between the top vertex and the first upper-ring vertex.
    const Eigen::Vector3d target = (g.v[0] + g.v[2]).normalized();
    int hole = 0;
    for (int i = 1; i < nv; ++i)
        if ((g.v[i] - target).norm() < (g.v[hole] - target).norm()) hole = i;

    // Rotate the hole vertex onto +y; both spheres reuse this orientation.
    const Eigen::Matrix3d rot = rotation_between(g.v[hole], Eigen::Vector3d::UnitY());
    std::vector<Eigen::Vector3d> v(nv);
    for (int i = 0; i < nv; ++i) v[i] = rot * g.v[i];

    BarbellLayout lay;
    lay.sphere_center = 2.0;
    lay.prism_length = 2.0;
    lay.hole_vertex = hole;
    lay.sphere_vertices.resize(nv, 3);
    for (int i = 0; i < nv; ++i) lay.sphere_vertices.row(i) = v[i];
    lay.sphere_triangles.resize(nt, 3);
    for (int t = 0; t < nt; ++t)
        for (int k = 0; k < 3; ++k) lay.sphere_triangles(t, k) = g.t[t][k];

    // Fan triangles around the hole and the cyclically ordered hexagon rim.
    std::vector<int> fan;
    std::set<int> rim_set;
    for (int t = 0; t < nt; ++t) {
        const auto& tri = g.t[t];
        if (tri[0] == hole || tri[1] == hole || tri[2] == hole) {
            fan.push_back(t);
            for (int k = 0; k < 3; ++k)
                if (tri[k] != hole) rim_set.insert(tri[k]);
        }
    }
    if (fan.size() != 6 || rim_set.size() != 6)
        raise(ErrorKind::structural, "barbell hole vertex must have degree 6");
    std::vector<int> rim(rim_set.begin(), rim_set.end());
    const ProjectionFrame frame = make_frame(v[hole]);
    std::sort(rim.begin(), rim.end(), [&](int a, int b) {
        const Eigen::Vector2d pa = gnomonic_project(frame, v[a]);
        const Eigen::Vector2d pb = gnomonic_project(frame, v[b]);
        return std::atan2(pa.y(), pa.x()) < std::atan2(pb.y(), pb.x());
    });
    for (int f = 0; f < 6; ++f) lay.hex_vertex[f] = rim[f];

    for (int f = 0; f < 6; ++f) {
        const int a = rim[f], b = rim[(f + 1) % 6];
        lay.removed_triangle[f] = -1;
        for (int t : fan) {
            const auto& tri = g.t[t];
            const bool has_a = tri[0] == a || tri[1] == a || tri[2] == a;
            const bool has_b = tri[0] == b || tri[1] == b || tri[2] == b;
            if (has_a && has_b) lay.removed_triangle[f] = t;
        }
        if (lay.removed_triangle[f] < 0)
            raise(ErrorKind::structural, "barbell fan triangle missing on a side");
        lay.side_length[f] = (v[a] - v[b]).norm();
    }
    lay.side_offset[0] = 0.0;
    for (int f = 0; f < 6; ++f)
        lay.side_offset[f + 1] = lay.side_offset[f] + lay.side_length[f];
    lay.side_mean = lay.side_offset[6] / 6.0;

    double a_min = std::numeric_limits<double>::infinity();
    for (int t = 0; t < nt; ++t)
        a_min = std::min(a_min, triangle_area(v[g.t[t][0]], v[g.t[t][1]], v[g.t[t][2]]));
    lay.min_triangle_area = a_min;

    // Ring width: rectangle area matches the smallest triangle, then the
    // count of rings is rounded to an integer.
    const double w_ideal = a_min / lay.side_mean;
    lay.rings = static_cast<int>(std::lround(lay.prism_length / w_ideal));
    lay.ring_width = lay.prism_length / lay.rings;

    lay.triangle_state.assign(nt, -1);
    int next = 0;
    for (int t = 0; t < nt; ++t) {
        if (std::find(fan.begin(), fan.end(), t) == fan.end())
            lay.triangle_state[t] = next++;
    }
    lay.n_sphere_states = next; // 314

    // Assemble the 3-D mesh: left sphere verts, mirrored right sphere verts,
    // then interior prism ring levels. Level b sits at y = -1 + b*ring_width;
    // levels 0 and `rings` reuse the actual hexagon rim vertices.
    SurfaceMesh m;
    m.name = "barbell";
    const int n_prism_interior = 6 * (lay.rings - 1);
    m.vertices.resize(2 * nv + n_prism_interior, 3);
    for (int i = 0; i < nv; ++i) {
        const Eigen::Vector3d left = v[i] + Eigen::Vector3d(0, -lay.sphere_center, 0);
        m.vertices.row(i) = left;
        m.vertices.row(nv + i) = Eigen::Vector3d(left.x(), -left.y(), left.z());
    }
    auto prism_vertex = [&](int corner, int level) {
        if (level == 0) return lay.hex_vertex[corner];
        if (level == lay.rings) return nv + lay.hex_vertex[corner];
        return 2 * nv + (level - 1) * 6 + corner;
    };
    for (int level = 1; level < lay.rings; ++level) {
        for (int c = 0; c < 6; ++c) {
            const Eigen::Vector3d rimv = v[lay.hex_vertex[c]];
            m.vertices.row(prism_vertex(c, level)) = Eigen::Vector3d(
                rimv.x(), -1.0 + level * lay.ring_width, rimv.z());
        }
    }

    const int n_states = 2 * lay.n_sphere_states + 6 * lay.rings;
    m.states.resize(n_states, 3);
    m.elements.resize(n_states);
    m.kinds.assign(n_states, "triangle");
    for (int t = 0; t < nt; ++t) {
        const int s = lay.triangle_state[t];
        if (s < 0) continue;
        const auto& tri = g.t[t];
        m.elements[s] = {tri[0], tri[1], tri[2]};
        m.elements[lay.right_state(s)] = {nv + tri[0], nv + tri[1], nv + tri[2]};
        Eigen::Vector3d c = (v[tri[0]] + v[tri[1]] + v[tri[2]]).normalized();
        const Eigen::Vector3d left = c + Eigen::Vector3d(0, -lay.sphere_center, 0);
        m.states.row(s) = left;
        m.states.row(lay.right_state(s)) = Eigen::Vector3d(left.x(), -left.y(), left.z());
    }
    for (int f = 0; f < 6; ++f) {
        for (int r = 0; r < lay.rings; ++r) {
            const int s = lay.rect_state(f, r);
            m.kinds[s] = "rectangle";
            const int c0 = f, c1 = (f + 1) % 6;
            m.elements[s] = {prism_vertex(c0, r), prism_vertex(c1, r),
                             prism_vertex(c1, r + 1), prism_vertex(c0, r + 1)};
            Eigen::Vector3d c = Eigen::Vector3d::Zero();
            for (int id : m.elements[s]) c += m.vertices.row(id).transpose();
            m.states.row(s) = c / 4.0;
        }
    }
    m.adjacency = vertex_sharing_adjacency(m.elements, static_cast<int>(m.vertices.rows()));
    m.barbell = std::move(lay);
    return m;
}

} // namespace spikewalk::geom

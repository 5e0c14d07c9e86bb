#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace spikewalk::geom {

// Bookkeeping the barbell construction needs beyond the generic mesh:
// the canonical sphere both ends are cut from, which triangles the prism
// replaced, and the unfolded prism dimensions.
struct BarbellLayout {
    int rings = 0;              // rectangle rings along the prism axis
    double ring_width = 0.0;    // axial extent of one ring
    double prism_length = 0.0;  // distance between the sphere poles
    double sphere_center = 0.0; // spheres centered at y = +/- this
    double min_triangle_area = 0.0;
    double side_mean = 0.0;                // mean hexagon side length
    std::array<double, 6> side_length{};   // side f joins corners f, f+1 mod 6
    std::array<double, 7> side_offset{};   // unfolded u; [6] = circumference
    Eigen::MatrixXd sphere_vertices;       // unit sphere, hole vertex at +y
    Eigen::MatrixXi sphere_triangles;      // 320 x 3 into sphere_vertices
    int hole_vertex = -1;                  // removed fan center
    std::array<int, 6> hex_vertex{};       // cyclic corner ids around the hole
    std::array<int, 6> removed_triangle{}; // fan triangle replaced across side f
    std::vector<int> triangle_state;       // canonical tri -> left state, -1 removed
    int n_sphere_states = 0;               // surviving triangles per sphere

    // State ids: left sphere [0, n), right sphere [n, 2n), rectangles after.
    // Ring 0 abuts the left sphere.
    int rect_state(int face, int ring) const {
        return 2 * n_sphere_states + face * rings + ring;
    }
    int right_state(int left_state) const { return left_state + n_sphere_states; }
};

struct SurfaceMesh {
    std::string name;
    Eigen::MatrixXd vertices;                // V x 3; 0 x 3 for abstract meshes
    std::vector<std::vector<int>> elements;  // vertex-id loops per element
    Eigen::MatrixXd states;                  // element centroids on the surface
    std::vector<std::vector<int>> adjacency; // shares >= 1 vertex, self excluded
    std::vector<std::string> kinds;          // "triangle" | "rectangle" | "cell"
    std::optional<BarbellLayout> barbell;

    int n_states() const { return static_cast<int>(states.rows()); }
    void write_json(std::ostream& os) const;
    void write_centroid_csv(std::ostream& os) const;
};

// Abstract n x n grid with wraparound; no 3-D embedding. State (i,j) has
// index i*n + j and coordinates (i,j). n >= 2.
SurfaceMesh build_torus_mesh(int n);

// Icosahedron subdivided `subdivisions` times by flat edge midpoints, then
// projected once onto the unit sphere. Only the 2-subdivision (320-triangle)
// construction is supported.
SurfaceMesh build_geodesic_sphere(int subdivisions);

// Two unit spheres centered at y = -/+2, each missing the six-triangle fan
// around the vertex facing the other, joined by a hexagonal prism whose six
// faces are split into rectangle rings: 2 x 314 triangles + 120 rectangles.
SurfaceMesh build_barbell_mesh();

} // namespace spikewalk::geom

#pragma once

#include <Eigen/Dense>

namespace spikewalk::geom {

// Tangent-plane chart at a point of the unit sphere. `rotation` carries
// `center` onto (0,0,1); the chart is the plane z=1 in rotated coordinates.
struct ProjectionFrame {
    Eigen::Vector3d center;   // unit vector r_i
    Eigen::Matrix3d rotation; // orthonormal, rotation * center == (0,0,1)
};

// Minimal rotation carrying unit vector `from` onto unit vector `to`.
// For antipodal inputs an arbitrary but deterministic half-turn is used.
Eigen::Matrix3d rotation_between(const Eigen::Vector3d& from,
                                 const Eigen::Vector3d& to);

// Frame centered at unit vector r (validated to ~1e-9).
ProjectionFrame make_frame(const Eigen::Vector3d& r);

// Central (gnomonic) projection of unit vector p through the frame:
// w = rotation * p, result (w.x/w.z, w.y/w.z). Great circles map to
// straight lines. Errors when p is not strictly in the open hemisphere
// around the frame center (p . center <= 0).
Eigen::Vector2d gnomonic_project(const ProjectionFrame& frame,
                                 const Eigen::Vector3d& p);

// Inverse chart: plane point back to the unit sphere, always in the open
// hemisphere around the frame center.
Eigen::Vector3d gnomonic_unproject(const ProjectionFrame& frame,
                                   const Eigen::Vector2d& q);

} // namespace spikewalk::geom

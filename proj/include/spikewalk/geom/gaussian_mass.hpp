#pragma once

#include <Eigen/Dense>
#include <vector>

namespace spikewalk::geom {

// Mass of the centered isotropic bivariate normal (variance per axis
// `variance`) over a simple polygon, by adaptive tensor Gauss-Legendre
// quadrature on a fan triangulation. Degenerate polygons return 0.
// `tol` is the absolute accuracy target for the whole polygon.
double gaussian_polygon_mass(const std::vector<Eigen::Vector2d>& polygon,
                             double variance, double tol = 1e-10);

// Closed form: mass of the normal centered at `center` over the axis-
// aligned rectangle [lo.x,hi.x] x [lo.y,hi.y].
double gaussian_rect_mass(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi,
                          const Eigen::Vector2d& center, double variance);

// Closed form: P(X > dx, Y > dy) for centered isotropic normal deviates
// with the given per-axis variance.
double gaussian_quadrant_mass(double dx, double dy, double variance);

} // namespace spikewalk::geom

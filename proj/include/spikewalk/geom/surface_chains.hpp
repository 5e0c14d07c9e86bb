#pragma once

#include "spikewalk/dtmc/transition_model.hpp"
#include "spikewalk/geom/surface_mesh.hpp"

namespace spikewalk::geom {

// Worst leftover (mass falling outside the modeled neighbor set, folded
// into the self transition) across all rows. `warned` is set when any
// leftover reaches 0.05, the validity threshold for the time step.
struct ChainDiagnostics {
    double max_leftover = 0.0;
    int state = -1;
    bool warned = false;
};

// One-step transition matrix for surface diffusion with diffusivity alpha:
// each state's vertex-sharing neighbor triangles are projected through the
// state's tangent-plane frame and integrated against the isotropic normal
// with per-axis variance 2*alpha*dt; the leftover goes to the self entry.
dtmc::TransitionModel sphere_transition_matrix(const SurfaceMesh& mesh,
                                               double alpha, double dt,
                                               ChainDiagnostics* diag = nullptr);

// Barbell variant: sphere rows are full-sphere rows with the removed fan
// triangles' mass redirected to the abutting end rectangles; rectangle rows
// integrate over the unfolded prism (exact rectangle masses), unfold the
// side-sharing triangle at the ends, and split each corner quadrant's mass
// equally among the three triangles meeting the rectangle only at that
// corner. Leftover to self everywhere.
dtmc::TransitionModel barbell_transition_matrix(const SurfaceMesh& mesh,
                                                double alpha, double dt,
                                                ChainDiagnostics* diag = nullptr);

} // namespace spikewalk::geom

#pragma once

// Real orthonormal spherical harmonics on the unit sphere.

namespace spikewalk::problems {

// Real spherical harmonic Y_l^m(theta, phi) for 0 <= m <= l, normalized so
// that the functions are orthonormal under the surface measure:
//   integral over the sphere of Y_l^m * Y_l'^m' dA = delta_{ll'} delta_{mm'}.
// Uses the cosine branch for m > 0 and carries no Condon-Shortley phase.
// theta is the polar angle in [0, pi]; phi is the azimuthal angle.
double eval_real_spherical_harmonic(int l, int m, double theta, double phi);

} // namespace spikewalk::problems

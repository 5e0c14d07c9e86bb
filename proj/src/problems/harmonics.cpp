#include "spikewalk/problems/harmonics.hpp"

#include <cmath>

#include "spikewalk/error.hpp"

namespace spikewalk::problems {

double eval_real_spherical_harmonic(int l, int m, double theta, double phi) {
    if (l < 0 || m < 0 || m > l)
        raise(ErrorKind::domain, "spherical harmonic requires 0 <= m <= l");
    if (theta < 0.0 || theta > M_PI + 1e-12)
        raise(ErrorKind::domain, "polar angle must lie in [0, pi]");
    // (2l+1)/(4 pi) * (l-m)!/(l+m)!, with the factorial ratio via lgamma to
    // stay finite for large l.
    const double log_ratio = std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0);
    double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) * std::exp(log_ratio));
    if (m > 0) norm *= std::sqrt(2.0);
    const double x = std::cos(theta);
    // std::assoc_legendre carries no Condon-Shortley phase, matching the
    // convention documented in the header.
    return norm * std::assoc_legendre(static_cast<unsigned>(l),
                                      static_cast<unsigned>(m), x) *
           std::cos(m * phi);
}

} // namespace spikewalk::problems

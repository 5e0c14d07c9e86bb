#include "spikewalk/geom/gnomonic.hpp"

#include <cmath>

#include "spikewalk/error.hpp"

namespace spikewalk::geom {

Eigen::Matrix3d rotation_between(const Eigen::Vector3d& from,
                                 const Eigen::Vector3d& to) {
    const double c = from.dot(to);
    if (c < -1.0 + 1e-12) {
        // Antipodal: half-turn about any axis perpendicular to `from`.
        Eigen::Vector3d seed = std::abs(from.x()) < 0.9
                                   ? Eigen::Vector3d::UnitX()
                                   : Eigen::Vector3d::UnitY();
        Eigen::Vector3d axis = from.cross(seed).normalized();
        return Eigen::AngleAxisd(M_PI, axis).toRotationMatrix();
    }
    Eigen::Vector3d v = from.cross(to);
    Eigen::Matrix3d vx;
    vx << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
    // Rodrigues with the sin/cos folded into v: R = I + [v]x + [v]x^2/(1+c).
    return Eigen::Matrix3d::Identity() + vx + vx * vx * (1.0 / (1.0 + c));
}

ProjectionFrame make_frame(const Eigen::Vector3d& r) {
    if (std::abs(r.norm() - 1.0) > 1e-9)
        raise(ErrorKind::domain, "projection frame center must be a unit vector");
    return ProjectionFrame{r, rotation_between(r, Eigen::Vector3d::UnitZ())};
}

Eigen::Vector2d gnomonic_project(const ProjectionFrame& frame,
                                 const Eigen::Vector3d& p) {
    if (p.dot(frame.center) <= 0.0)
        raise(ErrorKind::domain,
              "gnomonic projection requires a point in the open hemisphere "
              "around the frame center");
    Eigen::Vector3d w = frame.rotation * p;
    return {w.x() / w.z(), w.y() / w.z()};
}

Eigen::Vector3d gnomonic_unproject(const ProjectionFrame& frame,
                                   const Eigen::Vector2d& q) {
    Eigen::Vector3d w(q.x(), q.y(), 1.0);
    return frame.rotation.transpose() * w.normalized();
}

} // namespace spikewalk::geom

#include "depthtrack/geometry.hpp"

namespace depthtrack {

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r.m[3 * i + j] = m[3 * i + 0] * o.m[0 + j] + m[3 * i + 1] * o.m[3 + j] +
                       m[3 * i + 2] * o.m[6 + j];
    }
  }
  return r;
}

Vec3 Quaternion::rotate(const Vec3& v) const {
  // v' = v + 2 u x (u x v + w v) with u = (x, y, z)
  const Vec3 u{x, y, z};
  const Vec3 t = u.cross(v) * 2.0;
  return v + t * w + u.cross(t);
}

Mat3 Quaternion::to_matrix() const {
  Mat3 r;
  const double xx = x * x, yy = y * y, zz = z * z;
  const double xy = x * y, xz = x * z, yz = y * z;
  const double wx = w * x, wy = w * y, wz = w * z;
  r.m = {1 - 2 * (yy + zz), 2 * (xy - wz),     2 * (xz + wy),
         2 * (xy + wz),     1 - 2 * (xx + zz), 2 * (yz - wx),
         2 * (xz - wy),     2 * (yz + wx),     1 - 2 * (xx + yy)};
  return r;
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  Quaternion q{a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
               a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
               a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
               a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  if (std::abs(q.squared_norm() - 1.0) > 2e-12) {
    q = q.normalized();
  }
  return q;
}

Quaternion rotation_increment(const Vec3& omega, double dt) {
  const Vec3 dtheta = omega * dt;
  const double angle = dtheta.norm();
  if (angle < 1e-8) {
    const Vec3 half = dtheta * 0.5;
    return Quaternion{1.0, half.x, half.y, half.z}.normalized();
  }
  const double half_angle = 0.5 * angle;
  const double s = std::sin(half_angle) / angle;
  return {std::cos(half_angle), dtheta.x * s, dtheta.y * s, dtheta.z * s};
}

Vec3 to_rotation_vector(const Quaternion& q) {
  // Canonical sign guarantees w >= 0, so the angle is already in [0, pi].
  const Vec3 u{q.x, q.y, q.z};
  const double un = u.norm();
  if (un < 1e-12) {
    return u * 2.0;
  }
  const double angle = 2.0 * std::atan2(un, q.w);
  return u * (angle / un);
}

double rotation_angle_between(const Quaternion& a, const Quaternion& b) {
  const double d = std::abs(a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z);
  return 2.0 * std::acos(std::min(1.0, d));
}

}  // namespace depthtrack

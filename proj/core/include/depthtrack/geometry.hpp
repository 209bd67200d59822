#pragma once

#include <array>
#include <cmath>

namespace depthtrack {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double squared_norm() const { return dot(*this); }
  double norm() const { return std::sqrt(squared_norm()); }
  Vec3 normalized() const {
    const double n = norm();
    return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{};
  }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Row-major 3x3 matrix, used for rotation matrices and oracles.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  double operator()(int r, int c) const { return m[3 * r + c]; }
  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 operator*(const Mat3& o) const;
};

/// Unit quaternion, Hamilton convention, scalar first, right-handed.
/// The constructor canonicalizes the sign so that w >= 0 (q and -q denote
/// the same rotation).
struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Quaternion() = default;
  Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {
    if (w < 0.0) {
      w = -w;
      x = -x;
      y = -y;
      z = -z;
    }
  }

  static Quaternion identity() { return {}; }

  double squared_norm() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(squared_norm()); }
  Quaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }
  Quaternion conjugate() const { return {w, -x, -y, -z}; }

  Vec3 rotate(const Vec3& v) const;
  Mat3 to_matrix() const;
  bool finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

/// Hamilton product; the result is renormalized when the norm has drifted
/// by more than 1e-12 and carries the canonical sign.
Quaternion operator*(const Quaternion& a, const Quaternion& b);

/// Quaternion of the incremental rotation dt*omega:
/// (cos||dt*omega/2||, omega/||omega|| * sin||dt*omega/2||).
/// Falls back to the renormalized second-order Taylor form (1, dt*omega/2)
/// for ||dt*omega|| < 1e-8.
Quaternion rotation_increment(const Vec3& omega, double dt);

/// Exponential map of a rotation vector (axis * angle).
inline Quaternion from_rotation_vector(const Vec3& r) { return rotation_increment(r, 1.0); }

/// Logarithm map: rotation vector of a unit quaternion, angle in [0, pi].
Vec3 to_rotation_vector(const Quaternion& q);

/// Geodesic angle between two rotations, in [0, pi].
double rotation_angle_between(const Quaternion& a, const Quaternion& b);

/// Rigid transform: rotation then translation.
struct Pose {
  Vec3 position;
  Quaternion orientation;

  Vec3 transform(const Vec3& p) const { return orientation.rotate(p) + position; }
  Pose compose(const Pose& child) const {
    return {transform(child.position), orientation * child.orientation};
  }
  Pose inverse() const {
    const Quaternion inv = orientation.conjugate();
    return {inv.rotate(-position), inv};
  }
  bool finite() const { return position.finite() && orientation.finite(); }
};

struct Twist {
  Vec3 linear_velocity;
  Vec3 angular_rate;

  bool finite() const { return linear_velocity.finite() && angular_rate.finite(); }
};

}  // namespace depthtrack

#pragma once

#include <optional>

#include "depthtrack/geometry.hpp"

namespace depthtrack {

/// Pinhole camera: intrinsics plus the camera-in-world pose for the frame.
struct CameraModel {
  double fx = 0.0, fy = 0.0;
  double cx = 0.0, cy = 0.0;
  int width = 0, height = 0;
  double z_near = 0.05;
  double z_far = 10.0;
  Pose extrinsic;  // camera in world

  bool valid() const {
    return fx > 0.0 && fy > 0.0 && width >= 1 && height >= 1 && z_near > 0.0 &&
           z_near < z_far && extrinsic.finite();
  }
};

struct PixelProjection {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

/// Projects a world point through the camera. Returns nothing when the point
/// lies at or behind z_near, at or beyond z_far, or outside the image.
std::optional<PixelProjection> project_point(const CameraModel& camera, const Vec3& p_world);

/// Camera-frame direction of the ray through the center of pixel (ix, iy),
/// normalized so that direction.z == 1 (depth equals the ray parameter).
Vec3 pixel_ray_direction(const CameraModel& camera, int ix, int iy);

/// Intrinsics of the camera whose pixel (X, Y) samples the ray of the input
/// pixel (X*factor + c, Y*factor + c) with c = (factor - 1) / 2, matching
/// center-sample decimation of the depth image.
CameraModel decimate_camera(const CameraModel& camera, int factor);

}  // namespace depthtrack

#include "depthtrack/camera.hpp"

#include <stdexcept>

#include "depthtrack/depth_image.hpp"

namespace depthtrack {

bool DepthImage::valid(double z_max_allowed) const {
  if (data.size() != static_cast<std::size_t>(width) * height) {
    return false;
  }
  for (const float v : data) {
    if (!(v >= 0.0f) || !std::isfinite(v)) {
      return false;
    }
    if (v != 0.0f && v >= z_max_allowed) {
      return false;
    }
  }
  return true;
}

std::optional<PixelProjection> project_point(const CameraModel& camera, const Vec3& p_world) {
  const Vec3 p = camera.extrinsic.inverse().transform(p_world);
  if (!(p.z > camera.z_near) || !(p.z < camera.z_far)) {
    return std::nullopt;
  }
  const double u = camera.fx * p.x / p.z + camera.cx;
  const double v = camera.fy * p.y / p.z + camera.cy;
  if (u < 0.0 || u >= camera.width || v < 0.0 || v >= camera.height) {
    return std::nullopt;
  }
  return PixelProjection{u, v, p.z};
}

Vec3 pixel_ray_direction(const CameraModel& camera, int ix, int iy) {
  return {(ix + 0.5 - camera.cx) / camera.fx, (iy + 0.5 - camera.cy) / camera.fy, 1.0};
}

CameraModel decimate_camera(const CameraModel& camera, int factor) {
  if (factor < 1 || camera.width % factor != 0 || camera.height % factor != 0) {
    throw std::invalid_argument("decimate_camera: factor must divide both image dimensions");
  }
  const int c = (factor - 1) / 2;  // center-sample offset within a block
  CameraModel out = camera;
  out.fx = camera.fx / factor;
  out.fy = camera.fy / factor;
  out.cx = (camera.cx - c - 0.5) / factor + 0.5;
  out.cy = (camera.cy - c - 0.5) / factor + 0.5;
  out.width = camera.width / factor;
  out.height = camera.height / factor;
  return out;
}

}  // namespace depthtrack

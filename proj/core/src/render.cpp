#include "depthtrack/render.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "depthtrack/parallel.hpp"

namespace depthtrack {

namespace {

// 8 subpixel bits: vertices snap to a 1/256 px grid so that edge tests run
// on exact integers and shared edges are owned by exactly one triangle.
constexpr int kSubPixelBits = 8;
constexpr std::int64_t kSubPixelScale = 1 << kSubPixelBits;
constexpr std::int64_t kCoordLimit = std::int64_t{1} << 25;

struct ScreenVertex {
  std::int64_t x, y;  // snapped, 1/256 px
  double inv_z;
};

struct CameraVertex {
  Vec3 p;
};

std::int64_t snap(double v) {
  const double s = v * static_cast<double>(kSubPixelScale);
  if (s >= static_cast<double>(kCoordLimit)) {
    return kCoordLimit;
  }
  if (s <= -static_cast<double>(kCoordLimit)) {
    return -kCoordLimit;
  }
  return std::llround(s);
}

ScreenVertex project_vertex(const Vec3& p, const CameraModel& cam) {
  const double inv_z = 1.0 / p.z;
  return {snap(cam.fx * p.x * inv_z + cam.cx), snap(cam.fy * p.y * inv_z + cam.cy), inv_z};
}

/// Writes one screen triangle into buf at tile origin (ox, oy).
void raster_triangle(ScreenVertex v0, ScreenVertex v1, ScreenVertex v2,
                     const CameraModel& cam, DepthImage& buf, int ox, int oy,
                     TileBounds& bounds) {
  std::int64_t area2 = (v1.x - v0.x) * (v2.y - v0.y) - (v1.y - v0.y) * (v2.x - v0.x);
  if (area2 == 0) {
    return;
  }
  if (area2 < 0) {
    std::swap(v1, v2);
    area2 = -area2;
  }

  const ScreenVertex* verts[3] = {&v0, &v1, &v2};
  // Edge k runs from vertex (k+1) to vertex (k+2); its value pairs with
  // the barycentric weight of vertex k.
  std::int64_t ex[3], ey[3], row_e[3], min_accept[3];
  std::int64_t e_at_origin[3];
  for (int k = 0; k < 3; ++k) {
    const ScreenVertex& a = *verts[(k + 1) % 3];
    const ScreenVertex& b = *verts[(k + 2) % 3];
    const std::int64_t dx = b.x - a.x;
    const std::int64_t dy = b.y - a.y;
    ex[k] = -dy * kSubPixelScale;  // step per pixel in x
    ey[k] = dx * kSubPixelScale;   // step per pixel in y
    // top-left rule: ties count only on top (dy == 0, dx > 0) and
    // left (dy < 0) edges
    min_accept[k] = (dy < 0 || (dy == 0 && dx > 0)) ? 0 : 1;
    const std::int64_t c = kSubPixelScale / 2;  // center of pixel (0, 0)
    e_at_origin[k] = dx * (c - a.y) - dy * (c - a.x);
  }

  const std::int64_t min_sx = std::min({v0.x, v1.x, v2.x});
  const std::int64_t max_sx = std::max({v0.x, v1.x, v2.x});
  const std::int64_t min_sy = std::min({v0.y, v1.y, v2.y});
  const std::int64_t max_sy = std::max({v0.y, v1.y, v2.y});
  const std::int64_t half = kSubPixelScale / 2;
  auto first_center = [&](std::int64_t lo) {
    // smallest pixel index whose center (256 i + 128) is >= lo
    return (lo - half + kSubPixelScale - 1) >> kSubPixelBits;
  };
  auto last_center = [&](std::int64_t hi) { return (hi - half) >> kSubPixelBits; };
  const int x0 = static_cast<int>(std::max<std::int64_t>(0, first_center(min_sx)));
  const int x1 = static_cast<int>(std::min<std::int64_t>(cam.width - 1, last_center(max_sx)));
  const int y0 = static_cast<int>(std::max<std::int64_t>(0, first_center(min_sy)));
  const int y1 = static_cast<int>(std::min<std::int64_t>(cam.height - 1, last_center(max_sy)));
  if (x0 > x1 || y0 > y1) {
    return;
  }

  const double inv_area2 = 1.0 / static_cast<double>(area2);
  for (int k = 0; k < 3; ++k) {
    row_e[k] = e_at_origin[k] + ey[k] * y0 + ex[k] * x0;
  }
  for (int y = y0; y <= y1; ++y) {
    std::int64_t e0 = row_e[0], e1 = row_e[1], e2 = row_e[2];
    for (int x = x0; x <= x1; ++x) {
      if (e0 >= min_accept[0] && e1 >= min_accept[1] && e2 >= min_accept[2]) {
        const double inv_z = (static_cast<double>(e0) * v0.inv_z +
                              static_cast<double>(e1) * v1.inv_z +
                              static_cast<double>(e2) * v2.inv_z) *
                             inv_area2;
        const double z = 1.0 / inv_z;
        if (z > cam.z_near && z < cam.z_far) {
          const float zf = static_cast<float>(z);
          float& cell = buf.at(ox + x, oy + y);
          if (cell == 0.0f || zf < cell) {
            cell = zf;
            if (x < bounds.min_x) bounds.min_x = x;
            if (x > bounds.max_x) bounds.max_x = x;
            if (y < bounds.min_y) bounds.min_y = y;
            if (y > bounds.max_y) bounds.max_y = y;
          }
        }
      }
      e0 += ex[0];
      e1 += ex[1];
      e2 += ex[2];
    }
    row_e[0] += ey[0];
    row_e[1] += ey[1];
    row_e[2] += ey[2];
  }
}

/// Clips the triangle against z = z_near and rasterizes the remainder.
void clip_and_raster(const Vec3& a, const Vec3& b, const Vec3& c, const CameraModel& cam,
                     DepthImage& buf, int ox, int oy, TileBounds& bounds) {
  const Vec3 in[3] = {a, b, c};
  Vec3 poly[4];
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const Vec3& p = in[i];
    const Vec3& q = in[(i + 1) % 3];
    const bool p_in = p.z > cam.z_near;
    const bool q_in = q.z > cam.z_near;
    if (p_in) {
      poly[n++] = p;
    }
    if (p_in != q_in) {
      const double t = (cam.z_near - p.z) / (q.z - p.z);
      poly[n++] = p + (q - p) * t;
    }
  }
  if (n < 3) {
    return;
  }
  ScreenVertex sv[4];
  for (int i = 0; i < n; ++i) {
    sv[i] = project_vertex(poly[i], cam);
  }
  raster_triangle(sv[0], sv[1], sv[2], cam, buf, ox, oy, bounds);
  if (n == 4) {
    raster_triangle(sv[0], sv[2], sv[3], cam, buf, ox, oy, bounds);
  }
}

TileBounds rasterize_into(const TriangleMesh& mesh, const Pose& object_pose,
                          const CameraModel& cam, DepthImage& buf, int ox, int oy) {
  TileBounds bounds{cam.width, cam.height, -1, -1};
  if (mesh.empty()) {
    return bounds;
  }
  const Pose cam_from_model = cam.extrinsic.inverse().compose(object_pose);
  const Mat3 rot = cam_from_model.orientation.to_matrix();
  const Vec3 t = cam_from_model.position;

  thread_local std::vector<Vec3> cam_verts;
  cam_verts.resize(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    cam_verts[i] = rot * mesh.vertices[i] + t;
  }
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = cam_verts[tri[0]];
    const Vec3& b = cam_verts[tri[1]];
    const Vec3& c = cam_verts[tri[2]];
    if (a.z <= cam.z_near && b.z <= cam.z_near && c.z <= cam.z_near) {
      continue;
    }
    clip_and_raster(a, b, c, cam, buf, ox, oy, bounds);
  }
  return bounds;
}

}  // namespace

DepthImage RenderBatch::extract_tile(std::size_t k) const {
  DepthImage out(tile_width, tile_height);
  const int ox = tile_origin_x(k);
  const int oy = tile_origin_y(k);
  for (int y = 0; y < tile_height; ++y) {
    const float* src = buffer.row(oy + y) + ox;
    std::copy(src, src + tile_width, out.row(y));
  }
  return out;
}

DepthImage render_depth(const TriangleMesh& mesh, const Pose& object_pose,
                        const CameraModel& camera) {
  DepthImage img(camera.width, camera.height);
  rasterize_into(mesh, object_pose, camera, img, 0, 0);
  return img;
}

RenderBatch render_batch(const TriangleMesh& mesh, const std::vector<Pose>& poses,
                         const CameraModel& camera_tile, std::size_t max_pixels) {
  if (poses.empty()) {
    throw std::invalid_argument("render_batch: poses must be non-empty");
  }
  RenderBatch batch;
  batch.tile_width = camera_tile.width;
  batch.tile_height = camera_tile.height;
  batch.count = poses.size();
  batch.tiles_x = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(poses.size()))));
  batch.tiles_y =
      static_cast<int>((poses.size() + batch.tiles_x - 1) / static_cast<std::size_t>(batch.tiles_x));
  const std::size_t total_px = static_cast<std::size_t>(batch.tiles_x) * batch.tile_width *
                               static_cast<std::size_t>(batch.tiles_y) * batch.tile_height;
  if (total_px > max_pixels) {
    throw std::invalid_argument("render_batch: tile grid of " + std::to_string(total_px) +
                                " pixels exceeds the configured maximum of " +
                                std::to_string(max_pixels));
  }
  batch.buffer = DepthImage(batch.tiles_x * batch.tile_width, batch.tiles_y * batch.tile_height);
  batch.bounds.resize(poses.size());
  parallel_for(poses.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      batch.bounds[k] = rasterize_into(mesh, poses[k], camera_tile, batch.buffer,
                                       batch.tile_origin_x(k), batch.tile_origin_y(k));
    }
  });
  return batch;
}

}  // namespace depthtrack

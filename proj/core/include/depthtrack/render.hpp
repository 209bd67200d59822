#pragma once

#include <cstddef>
#include <vector>

#include "depthtrack/camera.hpp"
#include "depthtrack/depth_image.hpp"
#include "depthtrack/mesh.hpp"

namespace depthtrack {

/// Screen-space bounding box of the pixels a tile actually wrote.
/// Pixels outside it are guaranteed to read 0 (no surface).
struct TileBounds {
  int min_x = 0, min_y = 0;
  int max_x = -1, max_y = -1;  // inclusive; empty when max < min

  bool empty() const { return max_x < min_x || max_y < min_y; }
};

/// Many pose hypotheses rendered into one large buffer, one viewport tile
/// per pose. Tile k covers pixels [col*tile_width, ...) x [row*tile_height, ...)
/// with col = k % tiles_x, row = k / tiles_x.
struct RenderBatch {
  int tile_width = 0, tile_height = 0;
  int tiles_x = 0, tiles_y = 0;
  std::size_t count = 0;  // poses rendered
  DepthImage buffer;
  std::vector<TileBounds> bounds;

  int tile_origin_x(std::size_t k) const {
    return static_cast<int>(k % tiles_x) * tile_width;
  }
  int tile_origin_y(std::size_t k) const {
    return static_cast<int>(k / tiles_x) * tile_height;
  }
  /// Copies tile k out into a standalone image.
  DepthImage extract_tile(std::size_t k) const;
};

inline constexpr std::size_t kDefaultMaxBatchPixels = std::size_t{64} << 20;

/// Z-buffered perspective rasterization of the mesh under object_pose into a
/// depth image: per-pixel nearest surface depth in (z_near, z_far), 0 where
/// no surface projects. Deterministic: top-left fill rule, pixel centers at
/// (u + 0.5, v + 0.5), inverse depth interpolated linearly in screen space.
DepthImage render_depth(const TriangleMesh& mesh, const Pose& object_pose,
                        const CameraModel& camera);

/// Renders every pose into its own tile of one buffer; tiles are bit-identical
/// to standalone render_depth outputs. Throws std::invalid_argument when poses
/// is empty or the tile grid would exceed max_pixels.
RenderBatch render_batch(const TriangleMesh& mesh, const std::vector<Pose>& poses,
                         const CameraModel& camera_tile,
                         std::size_t max_pixels = kDefaultMaxBatchPixels);

}  // namespace depthtrack

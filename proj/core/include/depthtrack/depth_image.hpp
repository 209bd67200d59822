#pragma once

#include <cstddef>
#include <vector>

namespace depthtrack {

/// Row-major grid of range values in meters. 0.0 encodes invalid / no return.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  DepthImage() = default;
  DepthImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0.0f) {}

  float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  const float* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }
  float* row(int y) { return data.data() + static_cast<std::size_t>(y) * width; }

  std::size_t pixel_count() const { return data.size(); }
  bool same_size(const DepthImage& o) const { return width == o.width && height == o.height; }
  bool operator==(const DepthImage& o) const = default;

  /// All values finite, >= 0 and valid ones below the given ceiling.
  bool valid(double z_max_allowed) const;
};

}  // namespace depthtrack

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "depthtrack/geometry.hpp"

namespace depthtrack {

/// Indexed triangle mesh in the model frame, meters.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  bool empty() const { return triangles.empty(); }
  double triangle_area(std::size_t t) const;
  double surface_area() const;
  Vec3 centroid() const;
  bool indices_valid() const;
};

struct MeshLoadResult {
  TriangleMesh mesh;
  std::size_t degenerate_dropped = 0;
};

/// Loads ASCII/binary STL or OBJ (geometry only), keyed on file extension.
/// Exact duplicate vertices are merged; triangles with area <= 1e-12 m^2
/// are dropped and counted.
MeshLoadResult load_mesh(const std::string& path);

void save_stl(const TriangleMesh& mesh, const std::string& path);
void save_obj(const TriangleMesh& mesh, const std::string& path);

/// Axis-aligned box centered at the origin.
TriangleMesh make_box_mesh(double sx, double sy, double sz);

/// Two-triangle rectangle in the xy plane, centered at the origin.
TriangleMesh make_plane_mesh(double sx, double sy);

/// Bundled stand-in tracking target: a low-poly asymmetric ridge shape
/// (about 2k triangles, roughly 18 x 8 x 7 cm). Deterministic.
TriangleMesh make_ridge_mesh(int segments_u = 34, int segments_v = 32);

/// Removes a contiguous patch of triangles (grown from seed_triangle across
/// shared vertices) whose area is at least `fraction` of the surface area.
TriangleMesh remove_contiguous_region(const TriangleMesh& mesh, double fraction,
                                      std::size_t seed_triangle = 0);

}  // namespace depthtrack

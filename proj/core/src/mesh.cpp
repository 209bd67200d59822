#include "depthtrack/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <deque>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace depthtrack {

namespace {

constexpr double kDegenerateArea = 1e-12;  // m^2

double area_of(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

struct VertexKey {
  std::uint64_t bx, by, bz;
  bool operator==(const VertexKey&) const = default;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const {
    std::uint64_t h = k.bx * 0x9e3779b97f4a7c15ULL;
    h ^= k.by + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= k.bz + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

VertexKey key_of(const Vec3& v) {
  VertexKey k;
  std::memcpy(&k.bx, &v.x, 8);
  std::memcpy(&k.by, &v.y, 8);
  std::memcpy(&k.bz, &v.z, 8);
  return k;
}

/// Accumulates triangle soup into an indexed mesh, merging exact duplicates
/// and dropping degenerate triangles.
class MeshBuilder {
 public:
  void add_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
    if (area_of(a, b, c) <= kDegenerateArea) {
      ++dropped_;
      return;
    }
    result_.mesh.triangles.push_back({index_of(a), index_of(b), index_of(c)});
  }

  MeshLoadResult take() {
    result_.degenerate_dropped = dropped_;
    return std::move(result_);
  }

 private:
  std::uint32_t index_of(const Vec3& v) {
    const auto [it, inserted] =
        lookup_.try_emplace(key_of(v), static_cast<std::uint32_t>(result_.mesh.vertices.size()));
    if (inserted) {
      result_.mesh.vertices.push_back(v);
    }
    return it->second;
  }

  MeshLoadResult result_;
  std::size_t dropped_ = 0;
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> lookup_;
};

bool has_suffix(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) {
    return false;
  }
  std::string tail = s.substr(s.size() - suffix.size());
  std::transform(tail.begin(), tail.end(), tail.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return tail == suffix;
}

MeshLoadResult load_stl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open mesh file: " + path);
  }
  in.seekg(0, std::ios::end);
  const std::streamoff size = in.tellg();
  in.seekg(0);

  // Binary STL: 80-byte header, uint32 count, 50 bytes per facet.
  bool binary = false;
  if (size >= 84) {
    char header[84];
    in.read(header, 84);
    std::uint32_t count;
    std::memcpy(&count, header + 80, 4);
    if (size == 84 + static_cast<std::streamoff>(count) * 50) {
      binary = true;
    }
    in.seekg(0);
  }

  MeshBuilder builder;
  if (binary) {
    in.seekg(80);
    std::uint32_t count;
    in.read(reinterpret_cast<char*>(&count), 4);
    for (std::uint32_t t = 0; t < count; ++t) {
      float buf[12];
      in.read(reinterpret_cast<char*>(buf), 48);
      in.ignore(2);  // attribute byte count
      if (!in) {
        throw std::runtime_error("truncated binary STL: " + path);
      }
      builder.add_triangle({buf[3], buf[4], buf[5]}, {buf[6], buf[7], buf[8]},
                           {buf[9], buf[10], buf[11]});
    }
    return builder.take();
  }

  std::string token;
  std::vector<Vec3> verts;
  while (in >> token) {
    if (token == "vertex") {
      Vec3 v;
      if (!(in >> v.x >> v.y >> v.z)) {
        throw std::runtime_error("malformed ASCII STL vertex in " + path);
      }
      verts.push_back(v);
      if (verts.size() == 3) {
        builder.add_triangle(verts[0], verts[1], verts[2]);
        verts.clear();
      }
    }
  }
  if (!verts.empty()) {
    throw std::runtime_error("ASCII STL with incomplete facet: " + path);
  }
  return builder.take();
}

MeshLoadResult load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open mesh file: " + path);
  }
  std::vector<Vec3> positions;
  MeshBuilder builder;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) {
      continue;
    }
    if (tag == "v") {
      Vec3 v;
      if (!(ls >> v.x >> v.y >> v.z)) {
        throw std::runtime_error("malformed OBJ vertex in " + path);
      }
      positions.push_back(v);
    } else if (tag == "f") {
      std::vector<std::size_t> face;
      std::string ref;
      while (ls >> ref) {
        // "i", "i/t", "i/t/n", "i//n"; negative indices are relative
        const long idx = std::stol(ref.substr(0, ref.find('/')));
        const long resolved = idx > 0 ? idx - 1 : static_cast<long>(positions.size()) + idx;
        if (resolved < 0 || resolved >= static_cast<long>(positions.size())) {
          throw std::runtime_error("OBJ face index out of range in " + path);
        }
        face.push_back(static_cast<std::size_t>(resolved));
      }
      if (face.size() < 3) {
        throw std::runtime_error("OBJ face with fewer than 3 vertices in " + path);
      }
      for (std::size_t i = 1; i + 1 < face.size(); ++i) {
        builder.add_triangle(positions[face[0]], positions[face[i]], positions[face[i + 1]]);
      }
    }
  }
  return builder.take();
}

}  // namespace

double TriangleMesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles[t];
  return area_of(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

double TriangleMesh::surface_area() const {
  double a = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    a += triangle_area(t);
  }
  return a;
}

Vec3 TriangleMesh::centroid() const {
  Vec3 c;
  for (const auto& v : vertices) {
    c += v;
  }
  return vertices.empty() ? c : c * (1.0 / static_cast<double>(vertices.size()));
}

bool TriangleMesh::indices_valid() const {
  const auto n = static_cast<std::uint32_t>(vertices.size());
  for (const auto& t : triangles) {
    if (t[0] >= n || t[1] >= n || t[2] >= n) {
      return false;
    }
  }
  return true;
}

MeshLoadResult load_mesh(const std::string& path) {
  if (has_suffix(path, ".obj")) {
    return load_obj(path);
  }
  if (has_suffix(path, ".stl")) {
    return load_stl(path);
  }
  throw std::runtime_error("unsupported mesh format (expected .stl or .obj): " + path);
}

void save_stl(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write mesh file: " + path);
  }
  char header[80] = {};
  std::strncpy(header, "depthtrack binary STL", sizeof(header) - 1);
  out.write(header, 80);
  const auto count = static_cast<std::uint32_t>(mesh.triangles.size());
  out.write(reinterpret_cast<const char*>(&count), 4);
  for (const auto& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    const Vec3 n = (b - a).cross(c - a).normalized();
    const float buf[12] = {
        static_cast<float>(n.x), static_cast<float>(n.y), static_cast<float>(n.z),
        static_cast<float>(a.x), static_cast<float>(a.y), static_cast<float>(a.z),
        static_cast<float>(b.x), static_cast<float>(b.y), static_cast<float>(b.z),
        static_cast<float>(c.x), static_cast<float>(c.y), static_cast<float>(c.z)};
    out.write(reinterpret_cast<const char*>(buf), 48);
    const std::uint16_t attr = 0;
    out.write(reinterpret_cast<const char*>(&attr), 2);
  }
}

void save_obj(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write mesh file: " + path);
  }
  out.precision(9);
  for (const auto& v : mesh.vertices) {
    out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
  }
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

TriangleMesh make_box_mesh(double sx, double sy, double sz) {
  TriangleMesh m;
  const double hx = sx / 2, hy = sy / 2, hz = sz / 2;
  for (int i = 0; i < 8; ++i) {
    m.vertices.push_back({(i & 1) ? hx : -hx, (i & 2) ? hy : -hy, (i & 4) ? hz : -hz});
  }
  m.triangles = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                 {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  return m;
}

TriangleMesh make_plane_mesh(double sx, double sy) {
  TriangleMesh m;
  const double hx = sx / 2, hy = sy / 2;
  m.vertices = {{-hx, -hy, 0}, {hx, -hy, 0}, {hx, hy, 0}, {-hx, hy, 0}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

TriangleMesh make_ridge_mesh(int segments_u, int segments_v) {
  // Deformed ellipsoid with asymmetric harmonic bumps: no rotational or
  // mirror symmetry, so the pose is observable from depth alone.
  const double ax = 0.090, ay = 0.040, az = 0.035;
  const double pi = std::numbers::pi;
  auto radius_scale = [&](double theta, double phi) {
    double s = 1.0;
    s += 0.22 * std::sin(3.0 * phi + 0.7) * std::cos(2.0 * theta);
    s += 0.13 * std::cos(5.0 * phi - 1.3) * std::sin(theta + 0.4);
    s += 0.08 * std::sin(2.0 * phi + 1.9) * std::cos(4.0 * theta - 0.8);
    return s;
  };

  TriangleMesh m;
  // theta in (0, pi): rows between the poles; phi in [0, 2 pi)
  for (int i = 1; i < segments_u; ++i) {
    const double theta = pi * i / segments_u;
    for (int j = 0; j < segments_v; ++j) {
      const double phi = 2.0 * pi * j / segments_v;
      const double s = radius_scale(theta, phi);
      m.vertices.push_back({ax * s * std::sin(theta) * std::cos(phi),
                            ay * s * std::sin(theta) * std::sin(phi),
                            az * s * std::cos(theta)});
    }
  }
  const auto top = static_cast<std::uint32_t>(m.vertices.size());
  m.vertices.push_back({0, 0, az * radius_scale(0.0, 0.0)});
  const auto bottom = top + 1;
  m.vertices.push_back({0, 0, -az * radius_scale(pi, 0.0)});

  auto ring = [&](int i, int j) {
    return static_cast<std::uint32_t>((i - 1) * segments_v + (j % segments_v));
  };
  for (int j = 0; j < segments_v; ++j) {
    m.triangles.push_back({top, ring(1, j), ring(1, j + 1)});
    m.triangles.push_back({bottom, ring(segments_u - 1, j + 1), ring(segments_u - 1, j)});
  }
  for (int i = 1; i + 1 < segments_u; ++i) {
    for (int j = 0; j < segments_v; ++j) {
      m.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      m.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  }
  return m;
}

TriangleMesh remove_contiguous_region(const TriangleMesh& mesh, double fraction,
                                      std::size_t seed_triangle) {
  if (mesh.triangles.empty() || fraction <= 0.0) {
    return mesh;
  }
  if (seed_triangle >= mesh.triangles.size()) {
    throw std::invalid_argument("remove_contiguous_region: seed triangle out of range");
  }
  // vertex -> incident triangles
  std::vector<std::vector<std::uint32_t>> incident(mesh.vertices.size());
  for (std::uint32_t t = 0; t < mesh.triangles.size(); ++t) {
    for (const auto v : mesh.triangles[t]) {
      incident[v].push_back(t);
    }
  }

  const double target = fraction * mesh.surface_area();
  std::vector<bool> removed(mesh.triangles.size(), false);
  std::deque<std::uint32_t> frontier{static_cast<std::uint32_t>(seed_triangle)};
  removed[seed_triangle] = true;
  double removed_area = mesh.triangle_area(seed_triangle);
  while (removed_area < target && !frontier.empty()) {
    const std::uint32_t t = frontier.front();
    frontier.pop_front();
    for (const auto v : mesh.triangles[t]) {
      for (const auto n : incident[v]) {
        if (!removed[n]) {
          removed[n] = true;
          removed_area += mesh.triangle_area(n);
          frontier.push_back(n);
          if (removed_area >= target) {
            break;
          }
        }
      }
      if (removed_area >= target) {
        break;
      }
    }
  }

  TriangleMesh out;
  out.vertices = mesh.vertices;
  for (std::uint32_t t = 0; t < mesh.triangles.size(); ++t) {
    if (!removed[t]) {
      out.triangles.push_back(mesh.triangles[t]);
    }
  }
  return out;
}

}  // namespace depthtrack

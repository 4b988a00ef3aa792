#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "diffeoflow/common.hpp"

namespace dfl {

/// Indexed triangle surface in world millimeters.
///
/// Faces are counter-clockwise seen from outside (outward normals). The
/// connectivity tables are filled by build_mesh and treated as immutable
/// afterwards; operations that move vertices reuse them via with_vertices,
/// operations that change topology go back through build_mesh.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  /// Optional per-vertex provenance tag (template vertex id). Empty or one
  /// entry per vertex. Deformations preserve tags verbatim.
  std::vector<std::int64_t> tags;

  // connectivity (derived)
  std::vector<Edge> edges;                        // sorted pairs, lexicographic order
  std::vector<std::array<int, 2>> edge_faces;     // incident faces per edge, -1 = none
  std::vector<std::vector<int>> vertex_neighbors; // sorted 1-rings

  bool closed = false;           // every edge has exactly two incident faces
  bool vertex_manifold = false;  // every vertex star is a single fan

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  bool has_tags() const { return !tags.empty(); }
  bool is_closed_manifold() const { return closed && vertex_manifold; }
};

inline Vec3 face_raw_normal(const TriangleMesh& mesh, int f) {
  const Face& face = mesh.faces[f];
  const Vec3& a = mesh.vertices[face[0]];
  const Vec3& b = mesh.vertices[face[1]];
  const Vec3& c = mesh.vertices[face[2]];
  return (b - a).cross(c - a);
}

inline double face_area(const TriangleMesh& mesh, int f) {
  return 0.5 * face_raw_normal(mesh, f).norm();
}

inline Vec3 face_normal(const TriangleMesh& mesh, int f) {
  Vec3 n = face_raw_normal(mesh, f);
  double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

inline double surface_area(const TriangleMesh& mesh) {
  double area = 0.0;
  for (int f = 0; f < mesh.n_faces(); ++f) area += face_area(mesh, f);
  return area;
}

inline Aabb mesh_bbox(const TriangleMesh& mesh) {
  Aabb box;
  for (const Vec3& v : mesh.vertices) box.expand(v);
  return box;
}

/// Signed enclosed volume (divergence theorem). Positive for outward-oriented
/// closed surfaces.
inline double signed_volume(const TriangleMesh& mesh) {
  double six_v = 0.0;
  for (const Face& f : mesh.faces) {
    six_v += mesh.vertices[f[0]].cross(mesh.vertices[f[1]]).dot(mesh.vertices[f[2]]);
  }
  return six_v / 6.0;
}

inline double mean_edge_length(const TriangleMesh& mesh) {
  if (mesh.edges.empty()) return 0.0;
  double total = 0.0;
  for (const Edge& e : mesh.edges) {
    total += (mesh.vertices[e[0]] - mesh.vertices[e[1]]).norm();
  }
  return total / static_cast<double>(mesh.edges.size());
}

namespace detail {

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Walks the corner cycle(s) around each vertex; a manifold star is a single
// fan (one cycle for interior/closed vertices, one chain if boundary).
inline bool vertex_stars_are_fans(const TriangleMesh& mesh) {
  std::vector<std::vector<std::pair<int, int>>> corners(mesh.vertices.size());
  for (const Face& f : mesh.faces) {
    for (int i = 0; i < 3; ++i) {
      const int v = f[i];
      const int p = f[(i + 1) % 3];
      const int q = f[(i + 2) % 3];
      corners[v].emplace_back(p, q);
    }
  }
  std::unordered_map<int, int> next;
  std::unordered_map<int, int> incoming;
  for (const auto& star : corners) {
    if (star.size() <= 1) continue;
    next.clear();
    incoming.clear();
    for (const auto& [p, q] : star) {
      if (!next.emplace(p, q).second) return false;  // two corners leave p
      ++incoming[q];
    }
    // Prefer a chain start (no incoming edge); otherwise any point of the cycle.
    int start = star.front().first;
    for (const auto& [p, q] : star) {
      if (incoming.find(p) == incoming.end()) {
        start = p;
        break;
      }
    }
    std::size_t visited = 0;
    int cur = start;
    while (visited < star.size()) {
      auto it = next.find(cur);
      if (it == next.end()) break;
      cur = it->second;
      ++visited;
      if (cur == start) break;
    }
    if (visited != star.size()) return false;
  }
  return true;
}

}  // namespace detail

/// Validates and assembles a mesh: index bounds, degeneracy, edge
/// manifoldness and orientation, then the connectivity tables.
inline TriangleMesh build_mesh(std::vector<Vec3> vertices, std::vector<Face> faces,
                               std::vector<std::int64_t> tags = {}) {
  TriangleMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.faces = std::move(faces);
  mesh.tags = std::move(tags);

  const int nv = mesh.n_vertices();
  require(mesh.tags.empty() || static_cast<int>(mesh.tags.size()) == nv,
          ErrorCode::InvalidArgument, "tag count must match vertex count");
  for (const Vec3& v : mesh.vertices) {
    require(is_finite(v), ErrorCode::NonFiniteInput, "non-finite vertex position");
  }

  struct EdgeRecord {
    int count = 0;
    int faces[2] = {-1, -1};
    int forward = 0;  // occurrences of the (min,max) direction
  };
  std::unordered_map<std::uint64_t, EdgeRecord> edge_map;
  edge_map.reserve(mesh.faces.size() * 2);

  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    for (int i = 0; i < 3; ++i) {
      require(face[i] >= 0 && face[i] < nv, ErrorCode::IndexOutOfRange,
              "face " + std::to_string(f) + " references vertex " + std::to_string(face[i]));
    }
    require(face[0] != face[1] && face[1] != face[2] && face[0] != face[2],
            ErrorCode::DegenerateFace,
            "face " + std::to_string(f) + " repeats a vertex index");
    // Zero-area faces break area-weighted sampling and normals; reject early.
    require(face_area(mesh, f) > 0.0, ErrorCode::DegenerateFace,
            "face " + std::to_string(f) + " has zero area");

    for (int i = 0; i < 3; ++i) {
      const int a = face[i];
      const int b = face[(i + 1) % 3];
      EdgeRecord& rec = edge_map[detail::edge_key(a, b)];
      require(rec.count < 2, ErrorCode::NonManifoldEdge,
              "edge (" + std::to_string(std::min(a, b)) + "," + std::to_string(std::max(a, b)) +
                  ") has more than two incident faces");
      rec.faces[rec.count] = f;
      ++rec.count;
      if (a < b) ++rec.forward;
    }
  }

  mesh.edges.reserve(edge_map.size());
  for (const auto& [key, rec] : edge_map) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffu);
    if (rec.count == 2) {
      // Interior edges must be traversed once in each direction.
      require(rec.forward == 1, ErrorCode::NonManifoldOrientation,
              "edge (" + std::to_string(a) + "," + std::to_string(b) +
                  ") traversed twice in the same direction");
    }
    mesh.edges.push_back({a, b});
  }
  std::sort(mesh.edges.begin(), mesh.edges.end());

  mesh.edge_faces.resize(mesh.edges.size());
  mesh.closed = !mesh.edges.empty();
  for (std::size_t i = 0; i < mesh.edges.size(); ++i) {
    const EdgeRecord& rec = edge_map[detail::edge_key(mesh.edges[i][0], mesh.edges[i][1])];
    mesh.edge_faces[i] = {rec.faces[0], rec.faces[1]};
    if (rec.count != 2) mesh.closed = false;
  }

  mesh.vertex_neighbors.assign(nv, {});
  for (const Edge& e : mesh.edges) {
    mesh.vertex_neighbors[e[0]].push_back(e[1]);
    mesh.vertex_neighbors[e[1]].push_back(e[0]);
  }
  for (auto& nbrs : mesh.vertex_neighbors) std::sort(nbrs.begin(), nbrs.end());

  mesh.vertex_manifold = detail::vertex_stars_are_fans(mesh);
  return mesh;
}

/// Same connectivity, new vertex positions. For operations that only move
/// vertices (smoothing, advection); positions must stay finite.
inline TriangleMesh with_vertices(const TriangleMesh& mesh, std::vector<Vec3> vertices) {
  require(vertices.size() == mesh.vertices.size(), ErrorCode::InvalidArgument,
          "vertex count mismatch");
  TriangleMesh out = mesh;
  out.vertices = std::move(vertices);
  return out;
}

/// V - E + F for closed manifold meshes (2 per genus-0 component).
inline int euler_characteristic(const TriangleMesh& mesh) {
  require(mesh.closed, ErrorCode::NotClosed,
          "Euler characteristic requires a closed mesh");
  return mesh.n_vertices() - mesh.n_edges() + mesh.n_faces();
}

/// Index of edge (a,b) in the sorted edge table, or -1.
inline int find_edge(const TriangleMesh& mesh, int a, int b) {
  if (a > b) std::swap(a, b);
  Edge probe{a, b};
  auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), probe);
  if (it == mesh.edges.end() || *it != probe) return -1;
  return static_cast<int>(it - mesh.edges.begin());
}

/// Unique undirected edges with rest lengths frozen at call time; the edge
/// regularization term of the fitting loss measures against these.
struct EdgeSet {
  std::vector<Edge> edges;
  std::vector<double> rest_lengths;

  int n_edges() const { return static_cast<int>(edges.size()); }
};

inline EdgeSet make_edge_set(const TriangleMesh& mesh, bool freeze_rest_lengths = true) {
  EdgeSet set;
  set.edges = mesh.edges;
  set.rest_lengths.resize(set.edges.size(), 0.0);
  if (freeze_rest_lengths) {
    for (std::size_t i = 0; i < set.edges.size(); ++i) {
      set.rest_lengths[i] =
          (mesh.vertices[set.edges[i][0]] - mesh.vertices[set.edges[i][1]]).norm();
    }
  }
  return set;
}

/// Keeps only the face-connected component with the most faces (ties: the one
/// containing the lowest face index). Vertices are compacted, tags carried.
inline TriangleMesh largest_component(const TriangleMesh& mesh) {
  require(mesh.n_faces() > 0, ErrorCode::EmptyMesh, "mesh has no faces");

  // Union faces across shared edges.
  std::vector<int> parent(mesh.n_faces());
  for (int i = 0; i < mesh.n_faces(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& ef : mesh.edge_faces) {
    if (ef[0] >= 0 && ef[1] >= 0) {
      int ra = find(ef[0]), rb = find(ef[1]);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  std::unordered_map<int, int> component_size;
  for (int f = 0; f < mesh.n_faces(); ++f) ++component_size[find(f)];
  int best_root = -1, best_size = -1;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    int r = find(f);
    if (component_size[r] > best_size) {
      best_size = component_size[r];
      best_root = r;
    }
  }

  std::vector<int> vertex_map(mesh.n_vertices(), -1);
  std::vector<Vec3> vertices;
  std::vector<std::int64_t> tags;
  std::vector<Face> faces;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    if (find(f) != best_root) continue;
    Face out;
    for (int i = 0; i < 3; ++i) {
      int v = mesh.faces[f][i];
      if (vertex_map[v] < 0) {
        vertex_map[v] = static_cast<int>(vertices.size());
        vertices.push_back(mesh.vertices[v]);
        if (mesh.has_tags()) tags.push_back(mesh.tags[v]);
      }
      out[i] = vertex_map[v];
    }
    faces.push_back(out);
  }
  return build_mesh(std::move(vertices), std::move(faces), std::move(tags));
}

}  // namespace dfl

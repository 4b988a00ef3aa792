#pragma once

#include <algorithm>
#include <vector>

#include "diffeoflow/mesh.hpp"
#include "diffeoflow/rng.hpp"

namespace dfl {

/// Uniform-weight (umbrella) Laplacian smoothing.
///
/// Each iteration updates every vertex simultaneously from the previous
/// positions: v <- v + lambda * (mean(1-ring) - v). Connectivity, faces and
/// tags are untouched; 0 iterations is the identity.
inline TriangleMesh laplacian_smooth(const TriangleMesh& mesh, int iterations, double lambda) {
  require(lambda > 0.0 && lambda <= 1.0, ErrorCode::InvalidArgument,
          "lambda must be in (0, 1]");
  require(iterations >= 0, ErrorCode::InvalidArgument, "iterations must be >= 0");

  std::vector<Vec3> current = mesh.vertices;
  std::vector<Vec3> next(current.size());
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t v = 0; v < current.size(); ++v) {
      const auto& nbrs = mesh.vertex_neighbors[v];
      if (nbrs.empty()) {
        next[v] = current[v];
        continue;
      }
      Vec3 centroid = Vec3::Zero();
      for (int n : nbrs) centroid += current[n];
      centroid /= static_cast<double>(nbrs.size());
      next[v] = current[v] + lambda * (centroid - current[v]);
    }
    current.swap(next);
  }
  return with_vertices(mesh, std::move(current));
}

/// One-to-four midpoint subdivision, `levels` times.
///
/// New vertices sit on edge midpoints, so the surface is unchanged and the
/// Euler characteristic is preserved (V' = V + E, F' = 4F). Tagged meshes
/// give each midpoint a fresh tag: max existing tag + 1 + rank of its parent
/// edge in the sorted edge table.
inline TriangleMesh subdivide_midpoint(const TriangleMesh& mesh, int levels) {
  require(levels >= 0, ErrorCode::InvalidArgument, "levels must be >= 0");
  require(mesh.is_closed_manifold(), ErrorCode::NotClosed,
          "midpoint subdivision requires a closed manifold mesh");
  if (levels == 0) return mesh;

  TriangleMesh current = mesh;
  for (int level = 0; level < levels; ++level) {
    std::vector<Vec3> vertices = current.vertices;
    std::vector<std::int64_t> tags = current.tags;
    vertices.reserve(vertices.size() + current.edges.size());

    std::int64_t next_tag = 0;
    if (current.has_tags()) {
      next_tag = 1 + *std::max_element(tags.begin(), tags.end());
    }
    // Midpoint vertex index for edge i is V + i; edges are sorted, so this
    // numbering is deterministic.
    const int base = current.n_vertices();
    for (std::size_t i = 0; i < current.edges.size(); ++i) {
      const Edge& e = current.edges[i];
      vertices.push_back(0.5 * (current.vertices[e[0]] + current.vertices[e[1]]));
      if (current.has_tags()) tags.push_back(next_tag + static_cast<std::int64_t>(i));
    }

    std::vector<Face> faces;
    faces.reserve(current.faces.size() * 4);
    for (const Face& f : current.faces) {
      const int mab = base + find_edge(current, f[0], f[1]);
      const int mbc = base + find_edge(current, f[1], f[2]);
      const int mca = base + find_edge(current, f[2], f[0]);
      faces.push_back({f[0], mab, mca});
      faces.push_back({mab, f[1], mbc});
      faces.push_back({mca, mbc, f[2]});
      faces.push_back({mab, mbc, mca});
    }
    current = build_mesh(std::move(vertices), std::move(faces), std::move(tags));
  }
  return current;
}

/// Area-uniform surface samples with face normals.
struct SurfaceSamples {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  std::vector<int> face_indices;

  int size() const { return static_cast<int>(points.size()); }
};

/// Draws n_points area-proportionally across faces.
///
/// Deterministic for a given seed: the stream consumes exactly three uniforms
/// per point, in the order (face selection, barycentric u, barycentric v).
/// Face selection inverts the cumulative-area table; placement uses the
/// sqrt trick for uniform barycentric coordinates.
inline SurfaceSamples sample_surface_uniform(const TriangleMesh& mesh, int n_points,
                                             std::uint64_t seed) {
  require(n_points >= 1, ErrorCode::InvalidArgument, "n_points must be >= 1");
  require(mesh.n_faces() > 0, ErrorCode::EmptyMesh, "cannot sample an empty mesh");

  std::vector<double> cumulative(mesh.n_faces());
  double total = 0.0;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    total += face_area(mesh, f);
    cumulative[f] = total;
  }
  require(total > 0.0, ErrorCode::EmptyMesh, "mesh has zero total area");

  SurfaceSamples samples;
  samples.points.resize(n_points);
  samples.normals.resize(n_points);
  samples.face_indices.resize(n_points);

  Rng rng(seed);
  for (int i = 0; i < n_points; ++i) {
    const double u_face = rng.uniform() * total;
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();

    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u_face);
    int f = static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                      mesh.n_faces() - 1));
    const Face& face = mesh.faces[f];
    const double r = std::sqrt(u1);
    const double b0 = 1.0 - r;
    const double b1 = r * (1.0 - u2);
    const double b2 = r * u2;
    samples.points[i] = b0 * mesh.vertices[face[0]] + b1 * mesh.vertices[face[1]] +
                        b2 * mesh.vertices[face[2]];
    samples.normals[i] = face_normal(mesh, f);
    samples.face_indices[i] = f;
  }
  return samples;
}

/// Max over interior edges of the angle between incident face normals
/// (0 = flat). A proxy for sharp creases left by isosurfacing.
inline double max_dihedral_deviation(const TriangleMesh& mesh) {
  double max_angle = 0.0;
  for (std::size_t i = 0; i < mesh.edges.size(); ++i) {
    const auto& ef = mesh.edge_faces[i];
    if (ef[0] < 0 || ef[1] < 0) continue;
    const double c = std::clamp(face_normal(mesh, ef[0]).dot(face_normal(mesh, ef[1])),
                                -1.0, 1.0);
    max_angle = std::max(max_angle, std::acos(c));
  }
  return max_angle;
}

}  // namespace dfl

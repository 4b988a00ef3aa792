#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dfl {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Face = std::array<int, 3>;
using Edge = std::array<int, 2>;  // sorted: edge[0] < edge[1]

/// Failure categories carried by dfl::Error. The CLI maps these to exit codes.
enum class ErrorCode {
  InvalidArgument,
  IoError,
  // mesh construction / topology
  IndexOutOfRange,
  DegenerateFace,
  NonManifoldEdge,
  NonManifoldOrientation,
  NotClosed,
  EmptyMesh,
  ConnectivityMismatch,
  // grids and fields
  UnknownKind,
  NonFiniteInput,
  SpecMismatch,
  MeshOutsideGrid,
  EmptyInput,
  DegenerateExtent,
  IsoOutOfRange,
  FrameMismatch,
  // pipelines
  TopologyFailure,
  ContainmentFailure,
  OracleUnavailable,
  // metrics
  EmptyCloud,
  NonUnitNormal,
  // fitting
  EmptyTarget,
  MissingForwardTape,
  DivergenceDetected,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::NonManifoldOrientation: return "NonManifoldOrientation";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::ConnectivityMismatch: return "ConnectivityMismatch";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::MeshOutsideGrid: return "MeshOutsideGrid";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateExtent: return "DegenerateExtent";
    case ErrorCode::IsoOutOfRange: return "IsoOutOfRange";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::TopologyFailure: return "TopologyFailure";
    case ErrorCode::ContainmentFailure: return "ContainmentFailure";
    case ErrorCode::OracleUnavailable: return "OracleUnavailable";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::NonUnitNormal: return "NonUnitNormal";
    case ErrorCode::EmptyTarget: return "EmptyTarget";
    case ErrorCode::MissingForwardTape: return "MissingForwardTape";
    case ErrorCode::DivergenceDetected: return "DivergenceDetected";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) raise(code, message);
}

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}

/// Axis-aligned bounding box over world points.
struct Aabb {
  Vec3 min{Vec3::Constant(std::numeric_limits<double>::infinity())};
  Vec3 max{Vec3::Constant(-std::numeric_limits<double>::infinity())};

  void expand(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void expand(const Aabb& other) {
    min = min.cwiseMin(other.min);
    max = max.cwiseMax(other.max);
  }
  bool empty() const { return (min.array() > max.array()).any(); }
  Vec3 extent() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
  double diagonal() const { return empty() ? 0.0 : extent().norm(); }

  bool overlaps(const Aabb& other) const {
    return (min.array() <= other.max.array()).all() &&
           (max.array() >= other.min.array()).all();
  }
  bool contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  /// Squared distance from p to the box (0 inside).
  double dist2(const Vec3& p) const {
    Vec3 d = (min - p).cwiseMax(p - max).cwiseMax(0.0);
    return d.squaredNorm();
  }
};

}  // namespace dfl

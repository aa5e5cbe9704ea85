#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace softpack {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

// Absolute tolerance in coordinates of unit-scale configurations.
inline constexpr double kDefaultTol = 1e-9;

enum class ErrorKind {
  InvalidBody,
  InvalidConfig,
  InvalidInput,
  DegeneratePosition,
  WindowTooSmall,
  BodyNotThreefold,
  ZeroAreaCell,
  NotAPacking,
  LambdaOutOfRange,
  NumericalDegeneracy,
  CoincidentCenters,
  DegenerateDeformation,
  DegenerateQuadruple,
  UniquenessViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type; `kind()` names the
// violated invariant and `what()` carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline double cross(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

inline Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

inline Vec2 unit_direction(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

// splitmix64 step; used to derive per-trial seeds from a root seed.
inline std::uint64_t mix_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace softpack

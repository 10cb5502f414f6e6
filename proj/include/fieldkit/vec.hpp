#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace fieldkit {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](std::size_t i) { return (&x)[i]; }
  double operator[](std::size_t i) const { return (&x)[i]; }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }
inline Vec3 cwise_min(const Vec3& a, const Vec3& b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline Vec3 cwise_max(const Vec3& a, const Vec3& b) {
  return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}
inline Vec3 cwise_mul(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }
inline Vec3 cwise_div(const Vec3& a, const Vec3& b) { return {a.x / b.x, a.y / b.y, a.z / b.z}; }

// Column-major 3x3; m[c] is column c.
struct Mat3 {
  std::array<Vec3, 3> col;

  static Mat3 identity() { return {{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}}; }

  Vec3 operator*(const Vec3& v) const { return col[0] * v.x + col[1] * v.y + col[2] * v.z; }
  Mat3 operator*(const Mat3& o) const {
    return {{(*this) * o.col[0], (*this) * o.col[1], (*this) * o.col[2]}};
  }
  Mat3 transposed() const {
    Mat3 t;
    for (int c = 0; c < 3; ++c)
      for (int r = 0; r < 3; ++r) t.col[c][r] = col[r][c];
    return t;
  }
};

struct Box3 {
  Vec3 min, max;

  Vec3 center() const { return (min + max) * 0.5; }
  Vec3 extent() const { return max - min; }
  bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
           p.z <= max.z;
  }
};

}  // namespace fieldkit

#pragma once

// Rigid-body math, cameras, rays and voxel grids.
//
// Conventions (fixed once, used everywhere):
//  - World frame is right-handed, z up.
//  - Camera frame is right-handed: x right, y up, camera looks down -z.
//  - Pixel coordinates are continuous; the center of pixel (i, j) is
//    (i + 0.5, j + 0.5) with u growing right and v growing down.
//  - Rotations are stored as unit quaternions (w, x, y, z) and converted to
//    matrices only at application sites.

#include <cmath>
#include <cstdint>
#include <vector>

#include "fieldkit/errors.hpp"
#include "fieldkit/rng.hpp"
#include "fieldkit/vec.hpp"

namespace fieldkit::geom {

struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static Quat identity() { return {}; }

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  Quat normalized() const {
    double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  Quat conjugate() const { return {w, -x, -y, -z}; }

  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z, w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x, w * o.z + x * o.y - y * o.x + z * o.w};
  }

  Vec3 rotate(const Vec3& v) const {
    // q v q* via the two-cross-product form.
    Vec3 u{x, y, z};
    Vec3 t = 2.0 * cross(u, v);
    return v + w * t + cross(u, t);
  }

  Mat3 to_mat3() const {
    Mat3 m;
    double xx = x * x, yy = y * y, zz = z * z;
    double xy = x * y, xz = x * z, yz = y * z;
    double wx = w * x, wy = w * y, wz = w * z;
    m.col[0] = {1 - 2 * (yy + zz), 2 * (xy + wz), 2 * (xz - wy)};
    m.col[1] = {2 * (xy - wz), 1 - 2 * (xx + zz), 2 * (yz + wx)};
    m.col[2] = {2 * (xz + wy), 2 * (yz - wx), 1 - 2 * (xx + yy)};
    return m;
  }

  static Quat from_mat3(const Mat3& m) {
    // Shepperd's method, branch on the largest diagonal term.
    double t = m.col[0][0] + m.col[1][1] + m.col[2][2];
    Quat q;
    if (t > 0.0) {
      double s = std::sqrt(t + 1.0) * 2.0;
      q.w = 0.25 * s;
      q.x = (m.col[1][2] - m.col[2][1]) / s;
      q.y = (m.col[2][0] - m.col[0][2]) / s;
      q.z = (m.col[0][1] - m.col[1][0]) / s;
    } else if (m.col[0][0] > m.col[1][1] && m.col[0][0] > m.col[2][2]) {
      double s = std::sqrt(1.0 + m.col[0][0] - m.col[1][1] - m.col[2][2]) * 2.0;
      q.w = (m.col[1][2] - m.col[2][1]) / s;
      q.x = 0.25 * s;
      q.y = (m.col[0][1] + m.col[1][0]) / s;
      q.z = (m.col[2][0] + m.col[0][2]) / s;
    } else if (m.col[1][1] > m.col[2][2]) {
      double s = std::sqrt(1.0 + m.col[1][1] - m.col[0][0] - m.col[2][2]) * 2.0;
      q.w = (m.col[2][0] - m.col[0][2]) / s;
      q.x = (m.col[0][1] + m.col[1][0]) / s;
      q.y = 0.25 * s;
      q.z = (m.col[1][2] + m.col[2][1]) / s;
    } else {
      double s = std::sqrt(1.0 + m.col[2][2] - m.col[0][0] - m.col[1][1]) * 2.0;
      q.w = (m.col[0][1] - m.col[1][0]) / s;
      q.x = (m.col[2][0] + m.col[0][2]) / s;
      q.y = (m.col[1][2] + m.col[2][1]) / s;
      q.z = 0.25 * s;
    }
    return q.normalized();
  }

  static Quat from_axis_angle(const Vec3& axis_angle) {
    double theta = fieldkit::norm(axis_angle);
    if (theta < 1e-12) {
      // First-order expansion keeps exp continuous at the origin.
      Quat q{1.0, 0.5 * axis_angle.x, 0.5 * axis_angle.y, 0.5 * axis_angle.z};
      return q.normalized();
    }
    double h = 0.5 * theta;
    double s = std::sin(h) / theta;
    return {std::cos(h), axis_angle.x * s, axis_angle.y * s, axis_angle.z * s};
  }

  Vec3 to_axis_angle() const {
    Quat q = w < 0.0 ? Quat{-w, -x, -y, -z} : *this;
    double n = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
    if (n < 1e-12) return {2.0 * q.x, 2.0 * q.y, 2.0 * q.z};
    double theta = 2.0 * std::atan2(n, q.w);
    return Vec3{q.x, q.y, q.z} * (theta / n);
  }

  // Geodesic angle between two rotations, in radians. atan2 form stays
  // accurate near zero where acos of the dot product cannot.
  double angle_to(const Quat& o) const {
    Quat r = conjugate() * o;
    double s = std::sqrt(r.x * r.x + r.y * r.y + r.z * r.z);
    return 2.0 * std::atan2(s, std::abs(r.w));
  }
};

// Rigid transform in SE(3); maps local coordinates to parent coordinates.
struct Pose {
  Quat rotation;
  Vec3 translation;

  static Pose identity() { return {}; }

  Vec3 apply(const Vec3& p) const { return rotation.rotate(p) + translation; }

  Pose inverse() const {
    Quat r = rotation.conjugate();
    return {r, -r.rotate(translation)};
  }
};

inline Pose compose(const Pose& a, const Pose& b) {
  return {(a.rotation * b.rotation).normalized(), a.rotation.rotate(b.translation) + a.translation};
}

inline Vec3 apply(const Pose& a, const Vec3& p) { return a.apply(p); }

// Left Jacobian of SO(3): exp(w + dw) ~= exp(Jl(w) dw) exp(w).
inline Mat3 so3_left_jacobian(const Vec3& w) {
  double theta2 = dot(w, w);
  double a, b;  // Jl = I + a [w]x + b [w]x^2
  if (theta2 < 1e-10) {
    a = 0.5 - theta2 / 24.0;
    b = 1.0 / 6.0 - theta2 / 120.0;
  } else {
    double theta = std::sqrt(theta2);
    a = (1.0 - std::cos(theta)) / theta2;
    b = (theta - std::sin(theta)) / (theta2 * theta);
  }
  Mat3 j = Mat3::identity();
  Mat3 wx{{Vec3{0, w.z, -w.y}, Vec3{-w.z, 0, w.x}, Vec3{w.y, -w.x, 0}}};
  Mat3 wx2 = wx * wx;
  for (int c = 0; c < 3; ++c) j.col[c] = j.col[c] + a * wx.col[c] + b * wx2.col[c];
  return j;
}

// Uniform rotation via the subgroup algorithm (three uniform scalars onto S^3).
inline Quat sample_uniform_rotation(Pcg32& rng) {
  double u1 = rng.uniform_double();
  double u2 = rng.uniform_double();
  double u3 = rng.uniform_double();
  double two_pi = 2.0 * 3.14159265358979323846;
  double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  return Quat{b * std::cos(two_pi * u3), a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
              b * std::sin(two_pi * u3)};
}

struct Camera {
  Pose pose;  // camera-to-world
  double fx = 0.0, fy = 0.0;
  double cx = 0.0, cy = 0.0;
  int width = 0, height = 0;

  void validate() const {
    require(fx > 0.0 && fy > 0.0, "E_CAMERA_INTRINSICS", "focal lengths must be positive");
    require(cx > 0.0 && cx < width && cy > 0.0 && cy < height, "E_CAMERA_INTRINSICS",
            "principal point must lie inside the image");
  }
};

struct Ray {
  Vec3 origin;
  Vec3 direction;  // unit
  double t_near = 0.0, t_far = 0.0;

  Vec3 at(double t) const { return origin + direction * t; }
};

// Ray through a continuous pixel position (pixel (i,j) center = (i+0.5, j+0.5)).
inline Ray pixel_to_ray(const Camera& cam, double px, double py, double t_near, double t_far) {
  require(px >= 0.0 && px <= cam.width && py >= 0.0 && py <= cam.height, "E_PIXEL_BOUNDS",
          "pixel outside image bounds");
  require(t_near >= 0.0 && t_near < t_far, "E_RAY_RANGE", "need 0 <= t_near < t_far");
  Vec3 dir_cam{(px - cam.cx) / cam.fx, -(py - cam.cy) / cam.fy, -1.0};
  Vec3 dir = normalized(cam.pose.rotation.rotate(dir_cam));
  return Ray{cam.pose.translation, dir, t_near, t_far};
}

// Projects a world point into continuous pixel coordinates. Returns false for
// points at or behind the camera plane.
inline bool project(const Camera& cam, const Vec3& p_world, double& px, double& py) {
  Vec3 p = cam.pose.inverse().apply(p_world);
  if (p.z >= -1e-12) return false;
  px = cam.cx + cam.fx * (p.x / -p.z);
  py = cam.cy - cam.fy * (p.y / -p.z);
  return true;
}

// Camera-to-world pose at `eye` looking toward `target`, image up along +z.
inline Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up = {0, 0, 1}) {
  Vec3 f = normalized(target - eye);
  Vec3 xc = cross(f, up);
  if (norm(xc) < 1e-9) xc = cross(f, Vec3{0, 1, 0});  // looking straight along up
  xc = normalized(xc);
  Vec3 zc = -f;
  Vec3 yc = cross(zc, xc);
  Mat3 r{{xc, yc, zc}};
  return Pose{Quat::from_mat3(r), eye};
}

// Slab intersection of a ray with an axis-aligned box, clipped to the ray's
// own [t_near, t_far]. Returns false on a miss.
inline bool clip_ray_to_box(const Ray& ray, const Box3& box, double& t0, double& t1) {
  t0 = ray.t_near;
  t1 = ray.t_far;
  for (int a = 0; a < 3; ++a) {
    double o = ray.origin[a], d = ray.direction[a];
    if (std::abs(d) < 1e-12) {
      if (o < box.min[a] || o > box.max[a]) return false;
      continue;
    }
    double inv = 1.0 / d;
    double ta = (box.min[a] - o) * inv;
    double tb = (box.max[a] - o) * inv;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 >= t1) return false;
  }
  return true;
}

struct VoxelGrid {
  Vec3 origin;           // world position of the (0,0,0) voxel's min corner
  double spacing = 0.0;  // voxel edge length, meters
  int dims[3] = {0, 0, 0};
  std::vector<std::uint32_t> active;  // sorted linear indices

  std::uint32_t linear_index(int ix, int iy, int iz) const {
    return static_cast<std::uint32_t>(ix + dims[0] * (iy + static_cast<std::int64_t>(dims[1]) * iz));
  }

  void decode(std::uint32_t idx, int& ix, int& iy, int& iz) const {
    ix = static_cast<int>(idx % dims[0]);
    iy = static_cast<int>((idx / dims[0]) % dims[1]);
    iz = static_cast<int>(idx / (static_cast<std::uint32_t>(dims[0]) * dims[1]));
  }

  Vec3 center(std::uint32_t idx) const {
    int ix, iy, iz;
    decode(idx, ix, iy, iz);
    return origin + Vec3{(ix + 0.5) * spacing, (iy + 0.5) * spacing, (iz + 0.5) * spacing};
  }

  std::uint64_t total_voxels() const {
    return static_cast<std::uint64_t>(dims[0]) * dims[1] * dims[2];
  }
};

// Grid of voxels covering [workspace_min, workspace_max] with ceil-division
// dims; every voxel starts active.
inline VoxelGrid make_voxel_grid(const Vec3& workspace_min, const Vec3& workspace_max,
                                 double spacing) {
  require(spacing > 0.0, "E_VOXEL_SPACING", "voxel spacing must be positive");
  require(workspace_max.x > workspace_min.x && workspace_max.y > workspace_min.y &&
              workspace_max.z > workspace_min.z,
          "E_VOXEL_BOUNDS", "workspace max must exceed min componentwise");
  VoxelGrid g;
  g.origin = workspace_min;
  g.spacing = spacing;
  Vec3 e = workspace_max - workspace_min;
  for (int a = 0; a < 3; ++a) g.dims[a] = static_cast<int>(std::ceil(e[a] / spacing - 1e-9));
  g.active.resize(g.total_voxels());
  for (std::uint32_t i = 0; i < g.active.size(); ++i) g.active[i] = i;
  return g;
}

}  // namespace fieldkit::geom

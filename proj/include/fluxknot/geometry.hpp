#pragma once
// Small dense 3-vector / 3x3-matrix types shared by the geometry modules.

#include <array>
#include <cmath>
#include <stdexcept>

namespace fluxknot {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
  Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  static Mat3 identity() {
    Mat3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
  }
  static Mat3 from_rows(const Vec3& a, const Vec3& b, const Vec3& c) {
    Mat3 r;
    r.m[0] = {a.x, a.y, a.z};
    r.m[1] = {b.x, b.y, b.z};
    r.m[2] = {c.x, c.y, c.z};
    return r;
  }
  Vec3 row(int i) const { return {m[i][0], m[i][1], m[i][2]}; }

  double det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  Mat3 inverse() const {
    const double d = det();
    if (d == 0.0) throw std::domain_error("Mat3::inverse: singular matrix");
    Mat3 r;
    r(0, 0) = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
    r(0, 1) = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
    r(0, 2) = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
    r(1, 0) = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
    r(1, 1) = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
    r(1, 2) = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
    r(2, 0) = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
    r(2, 1) = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
    r(2, 2) = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
    return r;
  }

  // Solve A x = b for a well-conditioned 3x3 system.
  Vec3 solve(const Vec3& b) const {
    const Mat3 inv = inverse();
    return {inv.row(0).dot(b), inv.row(1).dot(b), inv.row(2).dot(b)};
  }
};

// Eigenvalues of a symmetric 3x3 matrix, ascending (trigonometric closed form).
inline std::array<double, 3> sym3_eigenvalues(const Mat3& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double tr = a(0, 0) + a(1, 1) + a(2, 2);
  if (p1 == 0.0) {
    std::array<double, 3> ev = {a(0, 0), a(1, 1), a(2, 2)};
    if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
    if (ev[1] > ev[2]) std::swap(ev[1], ev[2]);
    if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
    return ev;
  }
  const double q = tr / 3.0;
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Mat3 b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = (a(i, j) - (i == j ? q : 0.0)) / p;
  double r = b.det() / 2.0;
  r = std::fmin(1.0, std::fmax(-1.0, r));
  const double phi = std::acos(r) / 3.0;
  const double e2 = q + 2.0 * p * std::cos(phi);
  const double e0 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  const double e1 = tr - e0 - e2;
  return {e0, e1, e2};
}

}  // namespace fluxknot

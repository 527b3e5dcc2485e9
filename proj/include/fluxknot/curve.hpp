#pragma once
// Parametric space curves, Frenet frames, curvature/torsion, and arclength
// reparametrization.
//
// All downstream consumers work in arclength s. Frames are assembled from
// normalized curve derivatives: t = v/|v|, b = (v x a)/|v x a|, n = b x t,
// kappa = |v x a|/|v|^3, tau = (v x a).j / |v x a|^2. Derivatives come from
// analytic closures when the curve carries them (all presets do) and from
// central differences with one Richardson step otherwise.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "fluxknot/errors.hpp"
#include "fluxknot/geometry.hpp"

namespace fluxknot {

enum class CurvePreset { custom, line, circle, helix, torus_knot };

class SpaceCurve {
 public:
  using PositionFn = std::function<Vec3(double)>;

  static SpaceCurve line(Vec3 origin = {0, 0, 0}, Vec3 direction = {1, 0, 0},
                         double t0 = 0.0, double t1 = 1.0);
  static SpaceCurve circle(double radius, double t0 = 0.0, double t1 = kTwoPi);
  static SpaceCurve helix(double a, double c, double t0 = 0.0, double t1 = kTwoPi);
  static SpaceCurve torus_knot(int p, int q, double major_radius, double minor_radius,
                               double t0 = 0.0, double t1 = kTwoPi);

  // User-supplied sampler; frames fall back to finite differences.
  static SpaceCurve from_positions(PositionFn pos, double t0, double t1);
  static SpaceCurve from_analytic(PositionFn pos, PositionFn vel, PositionFn acc,
                                  PositionFn jerk, double t0, double t1);

  Vec3 position(double t) const { return position_(t); }
  bool has_derivatives() const { return static_cast<bool>(velocity_); }
  Vec3 velocity(double t) const { return velocity_(t); }
  Vec3 acceleration(double t) const { return acceleration_(t); }
  Vec3 jerk(double t) const { return jerk_(t); }

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double range() const { return t_max_ - t_min_; }
  CurvePreset preset() const { return preset_; }

  // Same curve with the analytic closures removed (finite-difference path).
  SpaceCurve without_derivatives() const;

  // Speed |dx/dt|; finite differences when no analytic velocity is present.
  double speed(double t, double h = 0.0) const;

 private:
  PositionFn position_;
  PositionFn velocity_, acceleration_, jerk_;
  double t_min_ = 0.0, t_max_ = 1.0;
  CurvePreset preset_ = CurvePreset::custom;
};

// Monotone cumulative-arclength table (composite Simpson on the speed) with
// cubic-Hermite forward and inverse lookup. Immutable after construction.
class ArclengthTable {
 public:
  ArclengthTable(const SpaceCurve& curve, int n_samples = 1024);

  double length() const { return s_.back(); }
  double t_from_s(double s) const;
  double s_from_t(double t) const;

 private:
  std::vector<double> t_, s_, speed_;
};

struct FrenetData {
  double s = 0.0;
  Vec3 tangent, normal, binormal;
  double curvature = 0.0, torsion = 0.0;
};

// Frenet triad and scalars at arclength s. h is the parameter-space step for
// the finite-difference path (0 selects 1e-4 * parameter range); it is not
// used when the curve carries analytic derivatives.
FrenetData frenet_at(const SpaceCurve& curve, const ArclengthTable& table, double s,
                     double h = 0.0);
FrenetData frenet_at(const SpaceCurve& curve, double s, double h = 0.0);

// Norms of the defects of the three frame evolution equations, with frame
// derivatives taken by central differences (one Richardson step) at arclength
// steps h and h/2.
std::array<double, 3> frenet_serret_residual(const SpaceCurve& curve,
                                             const ArclengthTable& table, double s,
                                             double h);

// --- finite-difference derivative helpers (central + one Richardson step) ---

template <typename F>
auto richardson_d1(const F& f, double t, double h) {
  auto d = [&](double w) { return (f(t + w) - f(t - w)) / (2.0 * w); };
  return (d(0.5 * h) * 4.0 - d(h)) / 3.0;
}

template <typename F>
auto richardson_d2(const F& f, double t, double h) {
  auto d = [&](double w) { return (f(t + w) - f(t) * 2.0 + f(t - w)) / (w * w); };
  return (d(0.5 * h) * 16.0 - d(h)) / 15.0;
}

template <typename F>
auto richardson_d3(const F& f, double t, double h) {
  auto d = [&](double w) {
    return (f(t + 2.0 * w) - f(t + w) * 2.0 + f(t - w) * 2.0 - f(t - 2.0 * w)) /
           (2.0 * w * w * w);
  };
  return (d(0.5 * h) * 4.0 - d(h)) / 3.0;
}

}  // namespace fluxknot

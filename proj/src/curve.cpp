#include "fluxknot/curve.hpp"

#include <algorithm>
#include <cmath>

namespace fluxknot {

namespace {

constexpr double kInflectionTol = 1e-12;
constexpr double kSpeedTol = 1e-10;

// Third differences lose ~h^3 digits to roundoff; widen the step for them.
constexpr double kJerkStepFactor = 16.0;

double default_step(const SpaceCurve& c, double h) {
  return h == 0.0 ? 1e-4 * c.range() : h;
}

struct Derivatives {
  Vec3 v, a, j;
};

Derivatives derivatives_at(const SpaceCurve& c, double t, double h) {
  if (c.has_derivatives()) return {c.velocity(t), c.acceleration(t), c.jerk(t)};
  auto pos = [&](double u) { return c.position(u); };
  return {richardson_d1(pos, t, h), richardson_d2(pos, t, h),
          richardson_d3(pos, t, kJerkStepFactor * h)};
}

}  // namespace

SpaceCurve SpaceCurve::line(Vec3 origin, Vec3 direction, double t0, double t1) {
  SpaceCurve c;
  c.position_ = [origin, direction](double t) { return origin + direction * t; };
  c.velocity_ = [direction](double) { return direction; };
  c.acceleration_ = [](double) { return Vec3{}; };
  c.jerk_ = [](double) { return Vec3{}; };
  c.t_min_ = t0;
  c.t_max_ = t1;
  c.preset_ = CurvePreset::line;
  return c;
}

SpaceCurve SpaceCurve::circle(double radius, double t0, double t1) {
  SpaceCurve c;
  const double a = radius;
  c.position_ = [a](double t) { return Vec3{a * std::cos(t), a * std::sin(t), 0.0}; };
  c.velocity_ = [a](double t) { return Vec3{-a * std::sin(t), a * std::cos(t), 0.0}; };
  c.acceleration_ = [a](double t) {
    return Vec3{-a * std::cos(t), -a * std::sin(t), 0.0};
  };
  c.jerk_ = [a](double t) { return Vec3{a * std::sin(t), -a * std::cos(t), 0.0}; };
  c.t_min_ = t0;
  c.t_max_ = t1;
  c.preset_ = CurvePreset::circle;
  return c;
}

SpaceCurve SpaceCurve::helix(double a, double cc, double t0, double t1) {
  SpaceCurve c;
  c.position_ = [a, cc](double t) {
    return Vec3{a * std::cos(t), a * std::sin(t), cc * t};
  };
  c.velocity_ = [a, cc](double t) {
    return Vec3{-a * std::sin(t), a * std::cos(t), cc};
  };
  c.acceleration_ = [a](double t) {
    return Vec3{-a * std::cos(t), -a * std::sin(t), 0.0};
  };
  c.jerk_ = [a](double t) { return Vec3{a * std::sin(t), -a * std::cos(t), 0.0}; };
  c.t_min_ = t0;
  c.t_max_ = t1;
  c.preset_ = CurvePreset::helix;
  return c;
}

SpaceCurve SpaceCurve::torus_knot(int p, int q, double major_radius, double minor_radius,
                                  double t0, double t1) {
  SpaceCurve c;
  const double R = major_radius, r = minor_radius;
  const double dp = p, dq = q;
  c.position_ = [=](double t) {
    const double w = R + r * std::cos(dq * t);
    return Vec3{w * std::cos(dp * t), w * std::sin(dp * t), r * std::sin(dq * t)};
  };
  c.velocity_ = [=](double t) {
    const double w = R + r * std::cos(dq * t);
    const double w1 = -r * dq * std::sin(dq * t);
    const double cp = std::cos(dp * t), sp = std::sin(dp * t);
    return Vec3{w1 * cp - w * dp * sp, w1 * sp + w * dp * cp,
                r * dq * std::cos(dq * t)};
  };
  c.acceleration_ = [=](double t) {
    const double w = R + r * std::cos(dq * t);
    const double w1 = -r * dq * std::sin(dq * t);
    const double w2 = -r * dq * dq * std::cos(dq * t);
    const double cp = std::cos(dp * t), sp = std::sin(dp * t);
    return Vec3{w2 * cp - 2.0 * w1 * dp * sp - w * dp * dp * cp,
                w2 * sp + 2.0 * w1 * dp * cp - w * dp * dp * sp,
                -r * dq * dq * std::sin(dq * t)};
  };
  c.jerk_ = [=](double t) {
    const double w = R + r * std::cos(dq * t);
    const double w1 = -r * dq * std::sin(dq * t);
    const double w2 = -r * dq * dq * std::cos(dq * t);
    const double w3 = r * dq * dq * dq * std::sin(dq * t);
    const double cp = std::cos(dp * t), sp = std::sin(dp * t);
    return Vec3{w3 * cp - 3.0 * w2 * dp * sp - 3.0 * w1 * dp * dp * cp + w * dp * dp * dp * sp,
                w3 * sp + 3.0 * w2 * dp * cp - 3.0 * w1 * dp * dp * sp - w * dp * dp * dp * cp,
                -r * dq * dq * dq * std::cos(dq * t)};
  };
  c.t_min_ = t0;
  c.t_max_ = t1;
  c.preset_ = CurvePreset::torus_knot;
  return c;
}

SpaceCurve SpaceCurve::from_positions(PositionFn pos, double t0, double t1) {
  SpaceCurve c;
  c.position_ = std::move(pos);
  c.t_min_ = t0;
  c.t_max_ = t1;
  return c;
}

SpaceCurve SpaceCurve::from_analytic(PositionFn pos, PositionFn vel, PositionFn acc,
                                     PositionFn jerk, double t0, double t1) {
  SpaceCurve c;
  c.position_ = std::move(pos);
  c.velocity_ = std::move(vel);
  c.acceleration_ = std::move(acc);
  c.jerk_ = std::move(jerk);
  c.t_min_ = t0;
  c.t_max_ = t1;
  return c;
}

SpaceCurve SpaceCurve::without_derivatives() const {
  SpaceCurve c = *this;
  c.velocity_ = nullptr;
  c.acceleration_ = nullptr;
  c.jerk_ = nullptr;
  return c;
}

double SpaceCurve::speed(double t, double h) const {
  if (has_derivatives()) return velocity_(t).norm();
  auto pos = [&](double u) { return position_(u); };
  return richardson_d1(pos, t, default_step(*this, h)).norm();
}

ArclengthTable::ArclengthTable(const SpaceCurve& curve, int n_samples) {
  if (n_samples < 16) throw config_error("arclength table needs n_samples >= 16");
  const int n = n_samples;
  const double dt = curve.range() / n;
  t_.resize(n + 1);
  s_.resize(n + 1);
  speed_.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    t_[k] = curve.t_min() + k * dt;
    speed_[k] = curve.speed(t_[k]);
  }
  s_[0] = 0.0;
  for (int k = 0; k < n; ++k) {
    const double mid = curve.speed(0.5 * (t_[k] + t_[k + 1]));
    s_[k + 1] = s_[k] + dt / 6.0 * (speed_[k] + 4.0 * mid + speed_[k + 1]);
    if (!(s_[k + 1] > s_[k]))
      throw zero_speed_error(0.5 * (t_[k] + t_[k + 1]));
  }
}

namespace {

// Cubic Hermite on one segment with exact nodal slopes, clamped to the
// monotone region (slopes capped at 3x the secant, Fritsch-Carlson bound).
double hermite(double x, double x0, double x1, double y0, double y1, double d0,
               double d1) {
  const double dx = x1 - x0;
  const double secant = (y1 - y0) / dx;
  const double cap = 3.0 * secant;
  d0 = std::clamp(d0, 0.0, cap);
  d1 = std::clamp(d1, 0.0, cap);
  const double u = (x - x0) / dx;
  const double u2 = u * u, u3 = u2 * u;
  return y0 * (2.0 * u3 - 3.0 * u2 + 1.0) + y1 * (-2.0 * u3 + 3.0 * u2) +
         d0 * dx * (u3 - 2.0 * u2 + u) + d1 * dx * (u3 - u2);
}

}  // namespace

double ArclengthTable::t_from_s(double s) const {
  const double L = s_.back();
  const double slack = 1e-9 * L;
  if (s < -slack || s > L + slack)
    throw numeric_error("arclength " + std::to_string(s) + " outside [0, " +
                        std::to_string(L) + "]");
  s = std::clamp(s, 0.0, L);
  if (s == s_.front()) return t_.front();
  if (s == s_.back()) return t_.back();
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  const int k = std::clamp(static_cast<int>(it - s_.begin()) - 1, 0,
                           static_cast<int>(s_.size()) - 2);
  // dt/ds = 1/speed at the nodes.
  return hermite(s, s_[k], s_[k + 1], t_[k], t_[k + 1], 1.0 / speed_[k],
                 1.0 / speed_[k + 1]);
}

double ArclengthTable::s_from_t(double t) const {
  if (t < t_.front() - 1e-12 || t > t_.back() + 1e-12)
    throw numeric_error("parameter " + std::to_string(t) + " outside curve interval");
  t = std::clamp(t, t_.front(), t_.back());
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const int k = std::clamp(static_cast<int>(it - t_.begin()) - 1, 0,
                           static_cast<int>(t_.size()) - 2);
  return hermite(t, t_[k], t_[k + 1], s_[k], s_[k + 1], speed_[k], speed_[k + 1]);
}

FrenetData frenet_at(const SpaceCurve& curve, const ArclengthTable& table, double s,
                     double h) {
  const double hh = default_step(curve, h);
  if (hh <= 0.0) throw config_error("frenet_at: step h must be positive");
  const double t = table.t_from_s(s);
  const auto d = derivatives_at(curve, t, hh);

  const double speed = d.v.norm();
  if (!(speed >= kSpeedTol)) throw zero_speed_error(t);

  const Vec3 u = d.v.cross(d.a);
  const double un = u.norm();
  const double kappa = un / (speed * speed * speed);
  if (kappa < kInflectionTol) throw inflection_error(kappa);

  FrenetData f;
  f.s = s;
  f.tangent = d.v / speed;
  f.binormal = u / un;
  f.normal = f.binormal.cross(f.tangent);
  f.curvature = kappa;
  f.torsion = u.dot(d.j) / (un * un);
  return f;
}

FrenetData frenet_at(const SpaceCurve& curve, double s, double h) {
  return frenet_at(curve, ArclengthTable(curve), s, h);
}

std::array<double, 3> frenet_serret_residual(const SpaceCurve& curve,
                                             const ArclengthTable& table, double s,
                                             double h) {
  if (h <= 0.0) throw config_error("frenet_serret_residual: step h must be positive");
  const FrenetData f = frenet_at(curve, table, s);
  auto frame = [&](double w) { return frenet_at(curve, table, s + w); };

  auto deriv = [&](auto member) {
    auto d = [&](double w) {
      const FrenetData fp = frame(w), fm = frame(-w);
      return (fp.*member - fm.*member) / (2.0 * w);
    };
    return (d(0.5 * h) * 4.0 - d(h)) / 3.0;
  };

  const Vec3 dt = deriv(&FrenetData::tangent);
  const Vec3 dn = deriv(&FrenetData::normal);
  const Vec3 db = deriv(&FrenetData::binormal);

  return {(dt - f.normal * f.curvature).norm(),
          (dn + f.tangent * f.curvature - f.binormal * f.torsion).norm(),
          (db + f.normal * f.torsion).norm()};
}

}  // namespace fluxknot

#include "fluxknot/dynamo.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "fluxknot/curve.hpp"
#include "fluxknot/errors.hpp"
#include "fluxknot/quadrature.hpp"

namespace fluxknot {

void DynamoParams::validate() const {
  if (!(v1 > 0.0) || !(v3 > 0.0))
    throw config_error("dynamo: flow moduli v1, v3 must be positive");
  if (!(R0 > 0.0)) throw config_error("dynamo: initial radius R0 must be positive");
  if (!std::isfinite(growth_rate)) throw config_error("dynamo: lambda must be finite");
}

GrowthClass classify_growth(double lambda) {
  if (lambda > 0.0) return GrowthClass::grow;
  if (lambda < 0.0) return GrowthClass::decay;
  return GrowthClass::marginal;
}

Resonance resonance_torsion(double R) {
  if (!(R > 0.0)) throw numeric_error("resonance_torsion: radius must be positive");
  Resonance r;
  r.tau0 = -1.0 / R;
  r.n_over_L = r.tau0 / kTwoPi;
  return r;
}

FrequencyRelation frequency_relation(double tau0, double R, double omega_s) {
  if (!(R > 0.0)) throw numeric_error("frequency_relation: radius must be positive");
  FrequencyRelation f;
  f.omega_theta = -tau0 * R * omega_s;
  f.ratio = -tau0 * R;
  f.operator_factor = -omega_s * R;  // -omega_s / kappa_R, kappa_R = 1/R
  return f;
}

double RadiusProfile::R(double s) const {
  if (lambda == 0.0) return R0 + A0 * s;
  const double a = decay_rate;
  return R0 + (A0 / a) * (1.0 - std::exp(-a * s));
}

double RadiusProfile::R_s(double s) const {
  return A0 * std::exp(-decay_rate * s);
}

double RadiusProfile::R_ss(double s) const {
  return -decay_rate * A0 * std::exp(-decay_rate * s);
}

double RadiusProfile::integral_R(double s) const {
  if (lambda == 0.0) return R0 * s + 0.5 * A0 * s * s;
  const double a = decay_rate;
  return (R0 + A0 / a) * s + (A0 / (a * a)) * (std::exp(-a * s) - 1.0);
}

RadiusProfile radius_profile(const DynamoParams& params, std::span<const double> s_grid) {
  params.validate();
  if (params.growth_rate < 0.0)
    throw precondition_error("radius_profile: requires lambda >= 0");
  RadiusProfile p;
  p.R0 = params.R0;
  p.A0 = params.A0;
  p.lambda = params.growth_rate;
  p.v1 = params.v1;
  p.v3 = params.v3;
  p.decay_rate = params.growth_rate / (2.0 * params.v3);
  p.decay_rate_quoted = params.growth_rate / params.v1;
  p.excluded_branch = params.growth_rate > 0.0 && params.A0 > 0.0;
  p.R_inf = params.growth_rate > 0.0
                ? params.R0 + 2.0 * params.v3 * params.A0 / params.growth_rate
                : params.R0;
  for (double s : s_grid)
    if (!(p.R(s) > 0.0)) throw unphysical_radius_error(s);
  return p;
}

FieldSolution::FieldSolution(const DynamoParams& params, Profile1d R, Profile1d R_s,
                             Profile1d integral_R, FieldMode mode)
    : lambda_(params.growth_rate),
      v1_(params.v1),
      B0_(params.B0),
      R_(std::move(R)),
      R_s_(std::move(R_s)),
      integral_R_(std::move(integral_R)),
      mode_(mode) {
  params.validate();
}

double FieldSolution::B3(double s, double t) const {
  const double common = lambda_ * t - (lambda_ / v1_) * integral_R_(s);
  if (mode_ == FieldMode::printed) return B0_ * std::exp(common);
  return B0_ * std::exp(common - (R_(s) - R_(0.0)));
}

double FieldSolution::dB3_ds(double s, double t) const {
  const double b = B3(s, t);
  if (mode_ == FieldMode::printed) return -(lambda_ / v1_) * R_(s) * b;
  return -(R_s_(s) + (lambda_ / v1_) * R_(s)) * b;
}

double FieldSolution::residual(double s, double t) const {
  return (R_s_(s) + (lambda_ / v1_) * R_(s)) * B3(s, t) + dB3_ds(s, t);
}

double FieldSolution::residual_fd(double s, double t, double h) const {
  auto f = [&](double u) { return B3(u, t); };
  const double d = richardson_d1(f, s, h);
  return (R_s_(s) + (lambda_ / v1_) * R_(s)) * B3(s, t) + d;
}

FieldSolution field_solution(const DynamoParams& params, const RadiusProfile& profile,
                             FieldMode mode) {
  return FieldSolution(
      params, [profile](double s) { return profile.R(s); },
      [profile](double s) { return profile.R_s(s); },
      [profile](double s) { return profile.integral_R(s); }, mode);
}

DynamoSolution solve_dynamo(const DynamoParams& params, std::span<const double> s_grid,
                            FieldMode mode) {
  const RadiusProfile prof = radius_profile(params, s_grid);
  return {prof, field_solution(params, prof, mode),
          classify_growth(params.growth_rate)};
}

double growth_rate_from_constraint(double R, double kappa0, double theta) {
  const double denom = 1.0 - R * kappa0 * std::cos(theta);
  if (std::fabs(denom) < 1e-14 * (1.0 + std::fabs(R * kappa0)))
    throw validity_boundary_error(
        "growth rate: tube-validity boundary, 1 - R kappa0 cos(theta) = 0");
  return kappa0 / denom;
}

GrowthSensitivity growth_rate_sensitivity(double R, double kappa0, double theta) {
  const double c = std::cos(theta);
  const double denom = 1.0 - R * kappa0 * c;
  GrowthSensitivity g;
  g.cos_theta = c;
  g.dlambda_dR = kappa0 * kappa0 * c / (denom * denom);
  g.shrink_raises_lambda = g.dlambda_dR < 0.0;
  return g;
}

InductionResiduals induction_scalar_system(const DynamoParams& params,
                                           const RadiusProfile& profile,
                                           const FieldSolution& fields, double s,
                                           double t, double theta, double b1_over_b3) {
  params.validate();
  const double lambda = params.growth_rate;
  const double R = profile.R(s), Rs = profile.R_s(s), Rss = profile.R_ss(s);
  const double B3 = fields.B3(s, t);
  const double B1 = b1_over_b3 * B3;

  InductionResiduals out;
  out.radial = (Rss * (params.v1 + params.v3) + lambda * Rs) * B1 -
               (B3 * params.v1 - params.v3 * B1) * Rss;
  out.axial = (Rs + (lambda / params.v1) * R) * B3 + fields.dB3_ds(s, t);
  const double growth_factor = lambda * (1.0 - R * params.kappa0 * std::cos(theta));
  out.growth = growth_factor * B1 - params.kappa0 * B3;

  out.reduction_applicable = b1_over_b3 == 1.0 && params.v1 == params.v3;
  if (out.reduction_applicable) {
    out.reduction_dev_radius =
        out.radial - B1 * (2.0 * Rss * params.v3 + lambda * Rs);
    out.reduction_dev_growth = out.growth - B1 * (growth_factor - params.kappa0);
  }
  return out;
}

namespace {

struct GridField {
  int n;
  double h;
  std::vector<Vec3> val;

  const Vec3& at(int i, int j, int k) const { return val[(i * n + j) * n + k]; }
};

GridField sample(const VecField& f, int n, int workers) {
  GridField g;
  g.n = n;
  g.h = kTwoPi / n;
  g.val.resize(static_cast<size_t>(n) * n * n);
  parallel_for(n, workers, [&](int i) {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        g.val[(static_cast<size_t>(i) * n + j) * n + k] =
            f(Vec3{i * g.h, j * g.h, k * g.h});
  });
  return g;
}

}  // namespace

CurlCheckResult curl_advective_identity_check(const VecField& v, const VecField& B,
                                              int n, bool periodic, int workers) {
  if (n < 8) throw config_error("curl check: grid must have n >= 8");
  const GridField gv = sample(v, n, workers);
  const GridField gb = sample(B, n, workers);
  const double h = gv.h;

  auto wrap = [n](int i) { return (i % n + n) % n; };
  // Central difference of a sampled field along axis d at (i,j,k).
  auto diff = [&](const GridField& g, int d, int i, int j, int k) {
    int ip = i + (d == 0), jp = j + (d == 1), kp = k + (d == 2);
    int im = i - (d == 0), jm = j - (d == 1), km = k - (d == 2);
    if (periodic) {
      ip = wrap(ip); jp = wrap(jp); kp = wrap(kp);
      im = wrap(im); jm = wrap(jm); km = wrap(km);
    }
    return (g.at(ip, jp, kp) - g.at(im, jm, km)) / (2.0 * h);
  };

  // Cross products on the nodes.
  GridField gw;
  gw.n = n;
  gw.h = h;
  gw.val.resize(gv.val.size());
  for (size_t i = 0; i < gv.val.size(); ++i) gw.val[i] = gv.val[i].cross(gb.val[i]);

  const int lo = periodic ? 0 : 1;
  const int hi = periodic ? n : n - 1;

  std::vector<double> dev(n, 0.0), divv(n, 0.0), divb(n, 0.0);
  parallel_for(n, workers, [&](int i) {
    if (i < lo || i >= hi) return;
    double dmax = 0.0, dvmax = 0.0, dbmax = 0.0;
    for (int j = lo; j < hi; ++j)
      for (int k = lo; k < hi; ++k) {
        const Vec3 dwx = diff(gw, 0, i, j, k);
        const Vec3 dwy = diff(gw, 1, i, j, k);
        const Vec3 dwz = diff(gw, 2, i, j, k);
        const Vec3 lhs = {dwy.z - dwz.y, dwz.x - dwx.z, dwx.y - dwy.x};

        const Vec3 dvx = diff(gv, 0, i, j, k);
        const Vec3 dvy = diff(gv, 1, i, j, k);
        const Vec3 dvz = diff(gv, 2, i, j, k);
        const Vec3 dbx = diff(gb, 0, i, j, k);
        const Vec3 dby = diff(gb, 1, i, j, k);
        const Vec3 dbz = diff(gb, 2, i, j, k);

        const Vec3 bv = gb.at(i, j, k);
        const Vec3 vv = gv.at(i, j, k);
        const Vec3 rhs = dvx * bv.x + dvy * bv.y + dvz * bv.z -
                         (dbx * vv.x + dby * vv.y + dbz * vv.z);

        dmax = std::max(dmax, std::fabs(lhs.x - rhs.x));
        dmax = std::max(dmax, std::fabs(lhs.y - rhs.y));
        dmax = std::max(dmax, std::fabs(lhs.z - rhs.z));
        dvmax = std::max(dvmax, std::fabs(dvx.x + dvy.y + dvz.z));
        dbmax = std::max(dbmax, std::fabs(dbx.x + dby.y + dbz.z));
      }
    dev[i] = dmax;
    divv[i] = dvmax;
    divb[i] = dbmax;
  });

  CurlCheckResult r;
  for (int i = 0; i < n; ++i) {
    r.max_dev = std::max(r.max_dev, dev[i]);
    r.max_div_v = std::max(r.max_div_v, divv[i]);
    r.max_div_B = std::max(r.max_div_B, divb[i]);
  }
  if (r.max_div_v > 1e-8)
    throw numeric_error("curl check: velocity field is not solenoidal (max "
                        "discrete divergence " + std::to_string(r.max_div_v) + ")");
  if (r.max_div_B > 1e-8)
    throw numeric_error("curl check: magnetic field is not solenoidal (max "
                        "discrete divergence " + std::to_string(r.max_div_B) + ")");
  return r;
}

}  // namespace fluxknot

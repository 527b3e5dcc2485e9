#pragma once
// Reduced induction system on circular-cross-section tubes: resonance
// condition, shrinking radius profile, exponential field solution, growth
// classification, and residual checks of the quoted closed forms.
//
// The ODE system is authoritative; the quoted closed forms are validated as
// limits. Two known gaps are first-class outputs: the quoted radius decay
// rate lambda/v1 differs from the ODE's lambda/(2 v3) by a factor 2 when
// v1 = v3, and the quoted field solves the axial relation only where R_s -> 0
// (its residual is exactly R_s B3).

#include <functional>
#include <span>

#include "fluxknot/geometry.hpp"
#include "fluxknot/tube.hpp"

namespace fluxknot {

struct DynamoParams {
  double growth_rate = 0.0;  // lambda
  double v1 = 1.0, v3 = 1.0; // flow moduli, > 0
  double kappa0 = 0.0;
  double B0 = 1.0;
  double A0 = 0.0;           // radius-slope constant, sign-carrying
  double R0 = 1.0;           // initial radius
  double theta_eval = 0.0;
  double omega_s = 0.0, omega_theta = 0.0;
  double eta = 0.0;          // resistivity slot; evolution is diffusionless

  void validate() const;
};

enum class GrowthClass { grow, marginal, decay };
GrowthClass classify_growth(double lambda);

// Resonance of poloidal and toroidal frequencies forces tau0 = -1/R; the
// zero-effective-twist relation then pins N/L = tau0 / (2 pi).
struct Resonance {
  double tau0 = 0.0;
  double n_over_L = 0.0;
};
Resonance resonance_torsion(double R);

struct FrequencyRelation {
  double omega_theta = 0.0;    // -tau0 R omega_s
  double ratio = 0.0;          // omega_theta / omega_s = -tau0 R
  double operator_factor = 0.0;  // -omega_s / kappa_R with kappa_R = 1/R
};
FrequencyRelation frequency_relation(double tau0, double R, double omega_s);

// Closed-form solution of 2 R_ss v3 + lambda R_s = 0 with R_s(0) = A0.
struct RadiusProfile {
  double R0 = 1.0, A0 = 0.0, lambda = 0.0, v1 = 1.0, v3 = 1.0;
  double R_inf = 1.0;                // limit radius (lambda > 0)
  double decay_rate = 0.0;           // lambda / (2 v3), from the ODE
  double decay_rate_quoted = 0.0;    // lambda / v1, as commonly quoted
  bool excluded_branch = false;      // A0 > 0 with lambda > 0 grows the radius

  double R(double s) const;
  double R_s(double s) const;
  double R_ss(double s) const;
  double integral_R(double s) const;  // over [0, s]
};

// Throws unphysical_radius_error (naming the critical s) if R <= 0 anywhere
// on the grid; requires lambda >= 0.
RadiusProfile radius_profile(const DynamoParams& params, std::span<const double> s_grid);

enum class FieldMode { printed, exact };

// Axial field B3(s, t) = B0 e^{lambda t} S(s) with S fixed by the mode:
// exact integrating factor of the axial relation, or the quoted form
// exp(-lambda Int R / v1).
class FieldSolution {
 public:
  using Profile1d = std::function<double(double)>;

  FieldSolution(const DynamoParams& params, Profile1d R, Profile1d R_s,
                Profile1d integral_R, FieldMode mode);

  double B3(double s, double t) const;
  double dB3_ds(double s, double t) const;  // analytic, mode-specific
  // [R_s + (lambda/v1) R] B3 + dB3/ds with the analytic derivative.
  double residual(double s, double t) const;
  // Same residual with dB3/ds replaced by a central difference (one
  // Richardson step): the substitute-and-evaluate check.
  double residual_fd(double s, double t, double h = 1e-3) const;
  FieldMode mode() const { return mode_; }

 private:
  double lambda_, v1_, B0_;
  Profile1d R_, R_s_, integral_R_;
  FieldMode mode_;
};

FieldSolution field_solution(const DynamoParams& params, const RadiusProfile& profile,
                             FieldMode mode);

// Bundled solution: radius profile, field evaluator, and growth class.
struct DynamoSolution {
  RadiusProfile radius;
  FieldSolution field;
  GrowthClass classification = GrowthClass::marginal;
};
DynamoSolution solve_dynamo(const DynamoParams& params, std::span<const double> s_grid,
                            FieldMode mode);

// lambda = kappa0 / (1 - R kappa0 cos(theta)); throws validity_boundary_error
// on a vanishing denominator.
double growth_rate_from_constraint(double R, double kappa0, double theta);

// d(lambda)/dR = kappa0^2 cos(theta) / (1 - R kappa0 cos(theta))^2, exposed as
// a labeled report: a shrinking tube raises lambda only where the derivative
// is negative (cos(theta) < 0).
struct GrowthSensitivity {
  double dlambda_dR = 0.0;
  double cos_theta = 0.0;
  bool shrink_raises_lambda = false;
};
GrowthSensitivity growth_rate_sensitivity(double R, double kappa0, double theta);

// Signed residuals of the three scalar induction relations as quoted, plus
// the equipartition/equal-moduli reduction identities.
struct InductionResiduals {
  double radial = 0.0;   // [R_ss (v1+v3) + lambda R_s] B1 - [B3 v1 - v3 B1] R_ss
  double axial = 0.0;    // [R_s + (lambda/v1) R] B3 + dB3/ds
  double growth = 0.0;   // lambda (1 - R kappa0 cos theta) B1 - kappa0 B3
  bool reduction_applicable = false;
  double reduction_dev_radius = 0.0;  // vs B (2 R_ss v3 + lambda R_s)
  double reduction_dev_growth = 0.0;  // vs B (lambda (1 - R k cos) - kappa0)
};
InductionResiduals induction_scalar_system(const DynamoParams& params,
                                           const RadiusProfile& profile,
                                           const FieldSolution& fields, double s,
                                           double t, double theta,
                                           double b1_over_b3 = 1.0);

// Central-difference check of curl(v x B) = (B.grad)v - (v.grad)B for
// divergence-free fields on an [0, 2pi]^3 grid with n nodes per axis.
// Non-periodic fields are checked on interior nodes only. Throws when either
// field's discrete divergence exceeds 1e-8.
using VecField = std::function<Vec3(const Vec3&)>;

struct CurlCheckResult {
  double max_dev = 0.0;
  double max_div_v = 0.0;
  double max_div_B = 0.0;
};
CurlCheckResult curl_advective_identity_check(const VecField& v, const VecField& B,
                                              int n, bool periodic, int workers = 1);

}  // namespace fluxknot

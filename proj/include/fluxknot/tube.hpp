#pragma once
// Non-orthogonal basis triad and metric tensor of a twisted flux tube.
//
// Working chart is (s, chi, phi); the cross-section angle theta is always
// derived from phi via the twist map theta = phi - 2 pi N s / L. The triad is
// the single source of truth for the metric g_ij = e_i . e_j; the commonly
// tabulated matrix form is evaluated only inside a discrepancy report.

#include <string>
#include <vector>

#include "fluxknot/curve.hpp"
#include "fluxknot/geometry.hpp"
#include "fluxknot/shape.hpp"

namespace fluxknot {

struct TubeConfig {
  double length = kTwoPi;  // L > 0
  int linking = 0;         // signed Gauss linking number
  double kappa0 = 0.0;     // base curvature
  double tau0 = 0.0;       // base torsion

  // Twist rate 2 pi N / L.
  double twist_rate() const { return kTwoPi * linking / length; }
  // tau* = tau0 - 2 pi N / L; always recomputed, never stored.
  double effective_torsion() const { return tau0 - twist_rate(); }
  void validate() const;
};

// Sample base curvature/torsion from a curve at arclength s_ref; the tube
// length is the curve's total arclength.
TubeConfig tube_from_curve(const SpaceCurve& curve, const ArclengthTable& table,
                           double s_ref, int linking);

double twist_angle(double theta, double s, const TubeConfig& cfg);
double theta_from_twist(double phi, double s, const TubeConfig& cfg);

// Triad components are expressed in the Frenet frame (t, n, b) at s.
struct Triad {
  Vec3 e1, e2, e3;
  double K = 1.0;  // 1 - R kappa cos(theta)
  double R = 0.0, R_chi = 0.0;
  double theta = 0.0;
};

Triad basis_triad(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                  double chi, double phi);

struct MetricBundle {
  Mat3 g;
  double det_g = 0.0;   // cofactor determinant of g
  double sqrt_g = 0.0;  // |e1 . (e2 x e3)|
  bool valid = false;   // 1 - R kappa cos(theta) > 0
  Triad triad;
};

MetricBundle metric_from_triad(const Triad& triad);

// Orthogonal straight/weakly-bent tube limit: dl^2 coefficients
// (1, r^2, K^2) in the (r, theta, s) chart with K = 1 - kappa r cos(theta).
Mat3 orthogonal_limit_metric(double r, double theta, double s, double kappa);

// --- consistency report for the tabulated matrix form -----------------------

struct SampleGrid {
  int n_s = 8, n_chi = 6, n_phi = 12;
  double s_lo = 0.0, s_hi = kTwoPi;
  double chi_lo = 0.1, chi_hi = 1.0;
  double phi_lo = 0.0, phi_hi = kTwoPi;
};

struct MetricEntryReport {
  std::string entry;    // "g11" ... "g33", plus variant rows
  double max_abs_dev;   // max |tabulated - gram| over the grid
  std::string where;    // grid point attaining the maximum
};

// Evaluates each entry of the widely tabulated closed-form matrix against the
// Gram matrix built from the triad. The tabulated 13/31/32 entries disagree
// with the Gram construction on generic twisted draws; the report makes the
// deviation explicit instead of patching it.
std::vector<MetricEntryReport> metric_consistency_report(const ShapeFunction& shape,
                                                         const TubeConfig& cfg,
                                                         const SampleGrid& grid);

}  // namespace fluxknot

#pragma once
// Rotation coefficients of the tube triad and of the Frenet frame, the
// field-line stretching term (B.grad)v, and the unstretching field ratio.
//
// All triad derivatives are taken analytically: the triad components are
// differentiated through the frame evolution equations and the twist map
// theta(s, phi), so no quoted closed form is trusted as input. The quoted
// closed forms survive only inside report functions, where they are compared
// against the direct derivatives.

#include <array>

#include "fluxknot/geometry.hpp"
#include "fluxknot/shape.hpp"
#include "fluxknot/tube.hpp"

namespace fluxknot {

// The four classically quoted Frenet-frame entries, exactly as tabulated.
// Note the bsn entry: direct evaluation of b . d(n)/ds gives +tau, while the
// quoted table carries -tau; tabulated_frenet_discrepancy() exposes the gap.
struct FrenetRrcEntries {
  double nss;  // n . d(t)/ds  =  kappa
  double nsb;  // n . d(b)/ds  = -tau
  double ssn;  // t . d(n)/ds  = -kappa
  double bsn;  // quoted value -tau
};

FrenetRrcEntries frenet_rrc(double kappa, double tau);

// M(a,b) = E_a . d(E_b)/ds over the Frenet frame (t,n,b); antisymmetric by
// construction, zero exactly when kappa = tau = 0.
Mat3 frenet_rotation_matrix(double kappa, double tau);

// |quoted bsn - computed bsn| = 2|tau|.
double tabulated_frenet_discrepancy(double tau);

// Triad components and their partial derivatives at one point of the chart.
struct TriadDerivs {
  Mat3 gamma;                 // row i: Frenet components of e_i
  std::array<Mat3, 3> d;      // d[A] row i: Frenet components of d(e_i)/dA, A in {s, chi, phi}
  Mat3 dgamma_ds;             // s-derivative of the component functions only (no frame rotation)
  double K = 1.0, R = 0.0, R_chi = 0.0, tau_star = 0.0, theta = 0.0;

  Mat3 metric() const;                         // gamma gamma^T
  double lowered(int A, int i, int j) const;   // e_i . d(e_j)/dA
  Vec3 raised(int A, int i) const;             // coefficients of d(e_i)/dA on the triad
};

TriadDerivs triad_derivatives(const ShapeFunction& shape, const TubeConfig& cfg,
                              double s, double chi, double phi);

// probe . d(e_i)/ds with the probe given in Frenet components; i is 0-based.
double triad_rrc(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                 double chi, double phi, const Vec3& probe, int i);

// Independent cross-check: central difference (one Richardson step) of the
// triad along s.
double triad_rrc_fd(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                    double chi, double phi, const Vec3& probe, int i, double h);

// gamma_{i alpha} with e_i = gamma_{i alpha} E_alpha; rows reproduce the triad.
Mat3 gamma_components(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                      double chi, double phi);

// The axial coefficient Gamma_112 in both of its quoted guises: the algebraic
// closed form (K^2 + tau*^2 R^2)/2 and the derivative form
// d/ds (gamma_11^2 + gamma_12^2 + gamma_13^2)/2. They disagree on generic
// configurations; both are returned.
struct Gamma112 {
  double closed_form = 0.0;
  double derivative_form = 0.0;
  double difference = 0.0;
};

Gamma112 gamma_112(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                   double chi, double phi);

// Gamma_132 = R R_chi tau*: the poloidal-toroidal coupling coefficient.
double gamma_132(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                 double chi, double phi);

// Contravariant field components; the chi slot is absent by construction
// (fields are tangent to the magnetic surfaces).
struct FieldState {
  double B1 = 0.0;
  double B3 = 0.0;
};

struct StretchingTerm {
  Vec3 triad_coeffs;       // components of (B.grad)v on (e1,e2,e3)
  Vec3 triad_projections;  // e_k . (B.grad)v
  Vec3 frenet_projections; // (t,n,b) . (B.grad)v
};

// (B.grad)v for constant flow moduli v = (v1,v2,v3): B^A v^i d(e_i)/dA
// contracted over the derivative slots carried by the field (s and phi).
StretchingTerm stretching_term(const FieldState& field, const Vec3& v_moduli,
                               const TriadDerivs& td);

struct UnstretchRatio {
  double b = 0.0;                 // Gamma_112(closed form) / Gamma_132
  double gamma112 = 0.0;
  double gamma132 = 0.0;
  double ratio_B1_over_B3 = 0.0;  // -Gamma_132 / Gamma_112, solves the constraint
  double thin_tube_ratio = 0.0;   // quoted approximation -2 R R_chi tau*
};

// Field ratio imposed by B1 Gamma_112 + B3 Gamma_132 = 0. Throws
// degenerate_torsion_error when tau* = 0 (Gamma_132 vanishes and the
// toroidal component is forced to zero).
UnstretchRatio unstretch_ratio(const ShapeFunction& shape, const TubeConfig& cfg,
                               double s, double chi, double phi);

// The quoted closed forms of n . d(e_i)/ds under a best-effort reading of
// their (ambiguously bracketed) tabulations; report-only.
struct TabulatedRrcForms {
  double n_ds_e1 = 0.0, n_ds_e2 = 0.0, n_ds_e3 = 0.0;
};

TabulatedRrcForms tabulated_rrc_forms(const ShapeFunction& shape, const TubeConfig& cfg,
                                      double s, double chi, double phi);

}  // namespace fluxknot

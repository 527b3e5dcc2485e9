#pragma once
// Tube shape function R(s, chi, phi) with first and second partials.
// chi labels the nested magnetic surfaces, so R_chi > 0 is required for the
// (s, chi, phi) chart to invert; presets carry analytic partials, arbitrary
// radius callables get central differences.

#include <functional>

#include "fluxknot/errors.hpp"
#include "fluxknot/geometry.hpp"

namespace fluxknot {

struct ShapePartials {
  double R = 0.0;
  double R_s = 0.0, R_chi = 0.0, R_phi = 0.0;
  double R_ss = 0.0, R_schi = 0.0, R_sphi = 0.0;
  double R_chichi = 0.0, R_chiphi = 0.0, R_phiphi = 0.0;
};

class ShapeFunction {
 public:
  using PartialsFn = std::function<ShapePartials(double, double, double)>;
  using RadiusFn = std::function<double(double, double, double)>;

  // Constant cross-section: R = scale * chi.
  static ShapeFunction constant(double scale = 1.0);
  // R = a + b * chi (b > 0).
  static ShapeFunction linear_chi(double a, double b);
  // Separable product R = scale * chi * (1 + alpha sin(2 pi m s / L)).
  static ShapeFunction separable(double scale, double alpha, int m, double L);
  // Separable axial modulation plus an elliptic-like cross-section:
  // R = scale * chi * (1 + alpha sin(2 pi m s / L)) * (1 + ecc cos(2 phi)).
  static ShapeFunction modulated(double scale, double alpha, int m, double L,
                                 double ecc);
  // Arbitrary radius field; partials by central differences.
  static ShapeFunction from_radius(RadiusFn radius, double step_scale = 1e-5);
  // User-supplied analytic partials.
  static ShapeFunction from_partials(PartialsFn fn);

  // Evaluate and enforce R > 0, R_chi > 0.
  ShapePartials at(double s, double chi, double phi) const;

 private:
  PartialsFn fn_;
};

}  // namespace fluxknot

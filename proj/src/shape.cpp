#include "fluxknot/shape.hpp"

#include <cmath>
#include <string>

namespace fluxknot {

ShapeFunction ShapeFunction::constant(double scale) {
  return modulated(scale, 0.0, 1, 1.0, 0.0);
}

ShapeFunction ShapeFunction::linear_chi(double a, double b) {
  ShapeFunction s;
  s.fn_ = [a, b](double, double chi, double) {
    ShapePartials p;
    p.R = a + b * chi;
    p.R_chi = b;
    return p;
  };
  return s;
}

ShapeFunction ShapeFunction::separable(double scale, double alpha, int m, double L) {
  return modulated(scale, alpha, m, L, 0.0);
}

ShapeFunction ShapeFunction::modulated(double scale, double alpha, int m, double L,
                                       double ecc) {
  if (L <= 0.0) throw config_error("shape: modulation period L must be positive");
  ShapeFunction sh;
  const double w = kTwoPi * m / L;
  sh.fn_ = [scale, alpha, w, ecc](double s, double chi, double phi) {
    const double f = 1.0 + alpha * std::sin(w * s);
    const double f1 = alpha * w * std::cos(w * s);
    const double f2 = -alpha * w * w * std::sin(w * s);
    const double g = 1.0 + ecc * std::cos(2.0 * phi);
    const double g1 = -2.0 * ecc * std::sin(2.0 * phi);
    const double g2 = -4.0 * ecc * std::cos(2.0 * phi);
    ShapePartials p;
    p.R = scale * chi * f * g;
    p.R_s = scale * chi * f1 * g;
    p.R_chi = scale * f * g;
    p.R_phi = scale * chi * f * g1;
    p.R_ss = scale * chi * f2 * g;
    p.R_schi = scale * f1 * g;
    p.R_sphi = scale * chi * f1 * g1;
    p.R_chichi = 0.0;
    p.R_chiphi = scale * f * g1;
    p.R_phiphi = scale * chi * f * g2;
    return p;
  };
  return sh;
}

ShapeFunction ShapeFunction::from_radius(RadiusFn radius, double step_scale) {
  ShapeFunction sh;
  sh.fn_ = [radius = std::move(radius), step_scale](double s, double chi, double phi) {
    auto step = [&](double x) { return step_scale * std::max(1.0, std::fabs(x)); };
    // Second differences need a wider step than the firsts to stay above the
    // roundoff floor.
    const double hs = step(s), hc = step(chi), hp = step(phi);
    const double Hs = 50.0 * hs, Hc = 50.0 * hc, Hp = 50.0 * hp;
    auto f = radius;
    ShapePartials p;
    p.R = f(s, chi, phi);
    p.R_s = (f(s + hs, chi, phi) - f(s - hs, chi, phi)) / (2.0 * hs);
    p.R_chi = (f(s, chi + hc, phi) - f(s, chi - hc, phi)) / (2.0 * hc);
    p.R_phi = (f(s, chi, phi + hp) - f(s, chi, phi - hp)) / (2.0 * hp);
    p.R_ss = (f(s + Hs, chi, phi) - 2.0 * p.R + f(s - Hs, chi, phi)) / (Hs * Hs);
    p.R_chichi = (f(s, chi + Hc, phi) - 2.0 * p.R + f(s, chi - Hc, phi)) / (Hc * Hc);
    p.R_phiphi = (f(s, chi, phi + Hp) - 2.0 * p.R + f(s, chi, phi - Hp)) / (Hp * Hp);
    p.R_schi = (f(s + Hs, chi + Hc, phi) - f(s + Hs, chi - Hc, phi) -
                f(s - Hs, chi + Hc, phi) + f(s - Hs, chi - Hc, phi)) /
               (4.0 * Hs * Hc);
    p.R_sphi = (f(s + Hs, chi, phi + Hp) - f(s + Hs, chi, phi - Hp) -
                f(s - Hs, chi, phi + Hp) + f(s - Hs, chi, phi - Hp)) /
               (4.0 * Hs * Hp);
    p.R_chiphi = (f(s, chi + Hc, phi + Hp) - f(s, chi + Hc, phi - Hp) -
                  f(s, chi - Hc, phi + Hp) + f(s, chi - Hc, phi - Hp)) /
                 (4.0 * Hc * Hp);
    return p;
  };
  return sh;
}

ShapeFunction ShapeFunction::from_partials(PartialsFn fn) {
  ShapeFunction sh;
  sh.fn_ = std::move(fn);
  return sh;
}

ShapePartials ShapeFunction::at(double s, double chi, double phi) const {
  if (!fn_) throw config_error("shape function is empty");
  const ShapePartials p = fn_(s, chi, phi);
  // R = 0 marks the tube axis (a coordinate degeneracy, reachable at chi = 0);
  // only genuinely negative radii are rejected.
  if (p.R < 0.0)
    throw numeric_error("shape: R < 0 at (s=" + std::to_string(s) +
                        ", chi=" + std::to_string(chi) + ", phi=" + std::to_string(phi) +
                        ")");
  if (!(p.R_chi > 0.0))
    throw numeric_error("shape: R_chi <= 0 at (s=" + std::to_string(s) +
                        ", chi=" + std::to_string(chi) + ", phi=" + std::to_string(phi) +
                        "); surfaces do not nest");
  return p;
}

}  // namespace fluxknot

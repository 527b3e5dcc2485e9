#include "fluxknot/rotation.hpp"

#include <cmath>

#include "fluxknot/curve.hpp"
#include "fluxknot/errors.hpp"

namespace fluxknot {

FrenetRrcEntries frenet_rrc(double kappa, double tau) {
  return {kappa, -tau, -kappa, -tau};
}

Mat3 frenet_rotation_matrix(double kappa, double tau) {
  // d(t)/ds = kappa n, d(n)/ds = -kappa t + tau b, d(b)/ds = -tau n.
  Mat3 m;
  m(0, 1) = -kappa;
  m(1, 0) = kappa;
  m(1, 2) = -tau;
  m(2, 1) = tau;
  return m;
}

double tabulated_frenet_discrepancy(double tau) { return 2.0 * std::fabs(tau); }

Mat3 TriadDerivs::metric() const {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) g(i, j) = g(j, i) = gamma.row(i).dot(gamma.row(j));
  return g;
}

double TriadDerivs::lowered(int A, int i, int j) const {
  return gamma.row(i).dot(d[A].row(j));
}

Vec3 TriadDerivs::raised(int A, int i) const {
  const Vec3 rhs = {lowered(A, 0, i), lowered(A, 1, i), lowered(A, 2, i)};
  return metric().solve(rhs);
}

TriadDerivs triad_derivatives(const ShapeFunction& shape, const TubeConfig& cfg,
                              double s, double chi, double phi) {
  const ShapePartials p = shape.at(s, chi, phi);
  const double theta = theta_from_twist(phi, s, cfg);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double kap = cfg.kappa0, tau = cfg.tau0;
  const double nu = cfg.twist_rate();  // d(theta)/ds = -nu, d(theta)/dphi = 1
  const double ts = cfg.effective_torsion();

  TriadDerivs td;
  td.theta = theta;
  td.R = p.R;
  td.R_chi = p.R_chi;
  td.tau_star = ts;
  td.K = 1.0 - p.R * kap * ct;

  td.gamma = Mat3::from_rows(
      {td.K, p.R_s * ct - p.R * ts * st, p.R_s * st + p.R * ts * ct},
      {0.0, p.R_chi * ct, p.R_chi * st},
      {0.0, p.R_phi * ct - p.R * st, p.R * ct + p.R_phi * st});

  // s-derivatives of the component functions (chain rule through theta(s)).
  td.dgamma_ds = Mat3::from_rows(
      {-p.R_s * kap * ct - p.R * kap * nu * st,
       p.R_ss * ct + p.R_s * nu * st - p.R_s * ts * st + p.R * ts * nu * ct,
       p.R_ss * st - p.R_s * nu * ct + p.R_s * ts * ct + p.R * ts * nu * st},
      {0.0, p.R_schi * ct + p.R_chi * nu * st, p.R_schi * st - p.R_chi * nu * ct},
      {0.0, p.R_sphi * ct + p.R_phi * nu * st - p.R_s * st + p.R * nu * ct,
       p.R_s * ct + p.R * nu * st + p.R_sphi * st - p.R_phi * nu * ct});

  // Full s-derivative adds the frame rotation (-kap c_n, kap c_t - tau c_b, tau c_n).
  for (int i = 0; i < 3; ++i) {
    const Vec3 c = td.gamma.row(i);
    const Vec3 cp = td.dgamma_ds.row(i);
    td.d[0](i, 0) = cp.x - kap * c.y;
    td.d[0](i, 1) = cp.y + kap * c.x - tau * c.z;
    td.d[0](i, 2) = cp.z + tau * c.y;
  }

  // chi-derivatives (theta does not depend on chi).
  td.d[1] = Mat3::from_rows(
      {-p.R_chi * kap * ct, p.R_schi * ct - p.R_chi * ts * st,
       p.R_schi * st + p.R_chi * ts * ct},
      {0.0, p.R_chichi * ct, p.R_chichi * st},
      {0.0, p.R_chiphi * ct - p.R_chi * st, p.R_chi * ct + p.R_chiphi * st});

  // phi-derivatives (d(theta)/dphi = 1).
  td.d[2] = Mat3::from_rows(
      {-p.R_phi * kap * ct + p.R * kap * st,
       p.R_sphi * ct - p.R_s * st - p.R_phi * ts * st - p.R * ts * ct,
       p.R_sphi * st + p.R_s * ct + p.R_phi * ts * ct - p.R * ts * st},
      {0.0, p.R_chiphi * ct - p.R_chi * st, p.R_chiphi * st + p.R_chi * ct},
      {0.0, p.R_phiphi * ct - 2.0 * p.R_phi * st - p.R * ct,
       p.R_phiphi * st + 2.0 * p.R_phi * ct - p.R * st});

  return td;
}

double triad_rrc(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                 double chi, double phi, const Vec3& probe, int i) {
  const TriadDerivs td = triad_derivatives(shape, cfg, s, chi, phi);
  return probe.dot(td.d[0].row(i));
}

double triad_rrc_fd(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                    double chi, double phi, const Vec3& probe, int i, double h) {
  // Express e_i(s+u) in the fixed Frenet frame at s, then difference there.
  // For constant curvature/torsion the frame evolves by the constant
  // generator W, so the change of frame is the exact rotation exp(u W):
  // components transform as comp(s) = exp(u W) comp(s+u).
  const Mat3 W = frenet_rotation_matrix(cfg.kappa0, cfg.tau0);

  auto exp_uW = [&](double u) {
    Mat3 X = Mat3::identity();
    Mat3 term = Mat3::identity();
    for (int k = 1; k <= 18; ++k) {
      Mat3 next;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          double v = 0.0;
          for (int q = 0; q < 3; ++q) v += term(r, q) * W(q, c);
          next(r, c) = v * (u / k);
        }
      term = next;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) X(r, c) += term(r, c);
    }
    return X;
  };

  auto e_in_ref_frame = [&](double u) {
    const double th = theta_from_twist(phi, s + u, cfg);
    const ShapePartials p = shape.at(s + u, chi, phi);
    const double ct = std::cos(th), st = std::sin(th);
    const double ts = cfg.effective_torsion();
    Vec3 comp;
    switch (i) {
      case 0:
        comp = {1.0 - p.R * cfg.kappa0 * ct, p.R_s * ct - p.R * ts * st,
                p.R_s * st + p.R * ts * ct};
        break;
      case 1:
        comp = {0.0, p.R_chi * ct, p.R_chi * st};
        break;
      default:
        comp = {0.0, p.R_phi * ct - p.R * st, p.R * ct + p.R_phi * st};
        break;
    }
    const Mat3 X = exp_uW(u);
    return Vec3{X.row(0).dot(comp), X.row(1).dot(comp), X.row(2).dot(comp)};
  };

  const Vec3 der = richardson_d1(e_in_ref_frame, 0.0, h);
  return probe.dot(der);
}

Mat3 gamma_components(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                      double chi, double phi) {
  return triad_derivatives(shape, cfg, s, chi, phi).gamma;
}

Gamma112 gamma_112(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                   double chi, double phi) {
  const TriadDerivs td = triad_derivatives(shape, cfg, s, chi, phi);
  Gamma112 g;
  g.closed_form = 0.5 * (td.K * td.K + td.tau_star * td.tau_star * td.R * td.R);
  g.derivative_form = td.gamma.row(0).dot(td.dgamma_ds.row(0));
  g.difference = g.closed_form - g.derivative_form;
  return g;
}

double gamma_132(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                 double chi, double phi) {
  const ShapePartials p = shape.at(s, chi, phi);
  return p.R * p.R_chi * cfg.effective_torsion();
}

StretchingTerm stretching_term(const FieldState& field, const Vec3& v_moduli,
                               const TriadDerivs& td) {
  // Field components on the derivative slots: (B1, 0, B3) over (s, chi, phi).
  const double BA[3] = {field.B1, 0.0, field.B3};
  Vec3 frenet{};
  for (int A = 0; A < 3; ++A) {
    if (BA[A] == 0.0) continue;
    for (int i = 0; i < 3; ++i)
      frenet += td.d[A].row(i) * (BA[A] * v_moduli[i]);
  }
  StretchingTerm st;
  st.frenet_projections = frenet;
  st.triad_projections = {td.gamma.row(0).dot(frenet), td.gamma.row(1).dot(frenet),
                          td.gamma.row(2).dot(frenet)};
  st.triad_coeffs = td.metric().solve(st.triad_projections);
  return st;
}

UnstretchRatio unstretch_ratio(const ShapeFunction& shape, const TubeConfig& cfg,
                               double s, double chi, double phi) {
  const TriadDerivs td = triad_derivatives(shape, cfg, s, chi, phi);
  UnstretchRatio r;
  r.gamma112 = 0.5 * (td.K * td.K + td.tau_star * td.tau_star * td.R * td.R);
  r.gamma132 = td.R * td.R_chi * td.tau_star;
  const double scale = std::fabs(td.R * td.R_chi);
  if (std::fabs(r.gamma132) <= 1e-12 * std::max(scale, 1.0))
    throw degenerate_torsion_error();
  r.b = r.gamma112 / r.gamma132;
  r.ratio_B1_over_B3 = -r.gamma132 / r.gamma112;
  r.thin_tube_ratio = -2.0 * td.R * td.R_chi * td.tau_star;
  return r;
}

TabulatedRrcForms tabulated_rrc_forms(const ShapeFunction& shape, const TubeConfig& cfg,
                                      double s, double chi, double phi) {
  const ShapePartials p = shape.at(s, chi, phi);
  const double theta = theta_from_twist(phi, s, cfg);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ts = cfg.effective_torsion();
  const double piNL = kPi * cfg.linking / cfg.length;

  TabulatedRrcForms f;
  f.n_ds_e1 = cfg.kappa0 +
              (2.0 * p.R_s * piNL + ts * (p.R_s + p.R * piNL)) * st +
              ts * (p.R_s + p.R * piNL) * ct;
  f.n_ds_e2 = -p.R_schi * ct - p.R_chi * (2.0 * piNL + ts) * ct;
  f.n_ds_e3 = (p.R_sphi + p.R * (2.0 * piNL - ts)) * ct -
              (p.R_phi * (2.0 * piNL + ts) + p.R_s) * st;
  return f;
}

}  // namespace fluxknot

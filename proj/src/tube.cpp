#include "fluxknot/tube.hpp"

#include <cmath>

#include "fluxknot/errors.hpp"

namespace fluxknot {

void TubeConfig::validate() const {
  if (!(length > 0.0)) throw config_error("tube: length must be positive");
  if (!std::isfinite(kappa0) || !std::isfinite(tau0))
    throw config_error("tube: curvature/torsion must be finite");
}

TubeConfig tube_from_curve(const SpaceCurve& curve, const ArclengthTable& table,
                           double s_ref, int linking) {
  const FrenetData f = frenet_at(curve, table, s_ref);
  TubeConfig cfg;
  cfg.length = table.length();
  cfg.linking = linking;
  cfg.kappa0 = f.curvature;
  cfg.tau0 = f.torsion;
  cfg.validate();
  return cfg;
}

double twist_angle(double theta, double s, const TubeConfig& cfg) {
  return theta + cfg.twist_rate() * s;
}

double theta_from_twist(double phi, double s, const TubeConfig& cfg) {
  return phi - cfg.twist_rate() * s;
}

Triad basis_triad(const ShapeFunction& shape, const TubeConfig& cfg, double s,
                  double chi, double phi) {
  const ShapePartials p = shape.at(s, chi, phi);
  const double theta = theta_from_twist(phi, s, cfg);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ts = cfg.effective_torsion();

  Triad tr;
  tr.theta = theta;
  tr.R = p.R;
  tr.R_chi = p.R_chi;
  tr.K = 1.0 - p.R * cfg.kappa0 * ct;
  tr.e1 = {tr.K, p.R_s * ct - p.R * ts * st, p.R_s * st + p.R * ts * ct};
  tr.e2 = {0.0, p.R_chi * ct, p.R_chi * st};
  tr.e3 = {0.0, p.R_phi * ct - p.R * st, p.R * ct + p.R_phi * st};
  return tr;
}

MetricBundle metric_from_triad(const Triad& tr) {
  MetricBundle b;
  b.triad = tr;
  const Vec3 e[3] = {tr.e1, tr.e2, tr.e3};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) b.g(i, j) = b.g(j, i) = e[i].dot(e[j]);
  b.det_g = b.g.det();
  b.sqrt_g = std::fabs(tr.e1.dot(tr.e2.cross(tr.e3)));
  b.valid = tr.K > 0.0;
  return b;
}

Mat3 orthogonal_limit_metric(double r, double theta, double /*s*/, double kappa) {
  const double K = 1.0 - kappa * r * std::cos(theta);
  Mat3 m;
  m(0, 0) = 1.0;
  m(1, 1) = r * r;
  m(2, 2) = K * K;
  return m;
}

namespace {

// The widely tabulated closed-form matrix, entry by entry, as quoted.
Mat3 tabulated_matrix(const ShapePartials& p, double K, double ts) {
  const double Rt2 = p.R * p.R * ts * ts;
  Mat3 m;
  m(0, 0) = K * K + Rt2 + p.R_s * p.R_s;
  m(0, 1) = p.R_chi * p.R_s;
  m(0, 2) = Rt2 + p.R_s * p.R_phi;
  m(1, 0) = p.R_chi * p.R_s;
  m(1, 1) = p.R_chi * p.R_chi;
  m(1, 2) = p.R_chi * p.R_phi;
  m(2, 0) = Rt2 + p.R_s * p.R_s;
  m(2, 1) = p.R_chi * p.R_phi * p.R * p.R + p.R_phi * p.R_phi;
  m(2, 2) = p.R * p.R + p.R_phi * p.R_phi;
  return m;
}

}  // namespace

std::vector<MetricEntryReport> metric_consistency_report(const ShapeFunction& shape,
                                                         const TubeConfig& cfg,
                                                         const SampleGrid& grid) {
  std::vector<MetricEntryReport> rows(10);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      rows[3 * i + j].entry = "g" + std::to_string(i + 1) + std::to_string(j + 1);
  // Variant row: the quoted leading coefficient of e1 lacks the factor R in
  // its curvature term; compare the Gram g11 built from that variant against
  // the tabulated g11 (the tabulated matrix itself carries the R factor).
  rows[9].entry = "g11_from_unscaled_leading_term";

  auto point_label = [](double s, double chi, double phi) {
    return "s=" + std::to_string(s) + " chi=" + std::to_string(chi) +
           " phi=" + std::to_string(phi);
  };

  for (int is = 0; is < grid.n_s; ++is)
    for (int ic = 0; ic < grid.n_chi; ++ic)
      for (int ip = 0; ip < grid.n_phi; ++ip) {
        const double s =
            grid.s_lo + (grid.s_hi - grid.s_lo) * (is + 0.5) / grid.n_s;
        const double chi =
            grid.chi_lo + (grid.chi_hi - grid.chi_lo) * (ic + 0.5) / grid.n_chi;
        const double phi =
            grid.phi_lo + (grid.phi_hi - grid.phi_lo) * (ip + 0.5) / grid.n_phi;

        const Triad tr = basis_triad(shape, cfg, s, chi, phi);
        const MetricBundle mb = metric_from_triad(tr);
        const ShapePartials p = shape.at(s, chi, phi);
        const double ts = cfg.effective_torsion();
        const Mat3 tab = tabulated_matrix(p, tr.K, ts);

        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const double dev = std::fabs(tab(i, j) - mb.g(i, j));
            auto& row = rows[3 * i + j];
            if (dev > row.max_abs_dev) {
              row.max_abs_dev = dev;
              row.where = point_label(s, chi, phi);
            }
          }

        const double ct = std::cos(tr.theta), st = std::sin(tr.theta);
        const Vec3 e1_variant = {1.0 - cfg.kappa0 * ct,
                                 p.R_s * (ct - p.R * ts * st),
                                 p.R_s * st + p.R * ts * ct};
        const double dev_variant = std::fabs(e1_variant.dot(e1_variant) - tab(0, 0));
        if (dev_variant > rows[9].max_abs_dev) {
          rows[9].max_abs_dev = dev_variant;
          rows[9].where = point_label(s, chi, phi);
        }
      }

  return rows;
}

}  // namespace fluxknot

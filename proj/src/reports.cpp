#include "fluxknot/reports.hpp"

#include <cmath>
#include <sstream>

#include "fluxknot/energy.hpp"
#include "fluxknot/quadrature.hpp"
#include "fluxknot/rotation.hpp"

namespace fluxknot {

namespace {

constexpr double kConsistentTol = 1e-10;

const char* verdict(double max_abs_dev) {
  return max_abs_dev <= kConsistentTol ? "consistent" : "discrepant";
}

}  // namespace

Scenario default_helical_scenario() {
  Scenario sc;
  sc.tube.kappa0 = 0.5;  // helix(1,1)
  sc.tube.tau0 = 0.5;
  sc.tube.length = kTwoPi * std::sqrt(2.0);
  sc.tube.linking = 2;
  sc.shape = ShapeFunction::modulated(0.6, 0.15, 1, sc.tube.length, 0.2);
  sc.grid.s_hi = sc.tube.length;
  sc.dynamo.growth_rate = 0.5;
  sc.dynamo.v1 = 1.0;
  sc.dynamo.v3 = 1.0;
  sc.dynamo.kappa0 = 0.5;
  sc.dynamo.A0 = -0.1;
  sc.dynamo.R0 = 1.0;
  sc.dynamo.theta_eval = 0.9;
  return sc;
}

ojson validate_report(int workers) {
  const Scenario sc = default_helical_scenario();
  ojson sections = ojson::object();

  // 1. Tabulated metric matrix vs Gram construction.
  {
    const auto rows = metric_consistency_report(sc.shape, sc.tube, sc.grid);
    double worst = 0.0;
    ojson entries = ojson::array();
    for (const auto& r : rows) {
      entries.push_back({{"entry", r.entry},
                         {"max_abs_dev", r.max_abs_dev},
                         {"where", r.where}});
      if (r.entry.size() == 3) worst = std::max(worst, r.max_abs_dev);
    }
    sections["metric_matrix"] = {{"max_abs_dev", worst},
                                 {"verdict", verdict(worst)},
                                 {"entries", entries}};
  }

  // 2. Axial coefficient: algebraic closed form vs derivative form.
  {
    double worst = 0.0;
    for (int is = 0; is < 6; ++is)
      for (int ic = 1; ic <= 4; ++ic)
        for (int ip = 0; ip < 6; ++ip) {
          const Gamma112 g =
              gamma_112(sc.shape, sc.tube, sc.tube.length * (is + 0.5) / 6.0,
                        0.2 * ic + 0.1, kTwoPi * (ip + 0.5) / 6.0);
          worst = std::max(worst, std::fabs(g.difference));
        }
    const Gamma112 sample = gamma_112(sc.shape, sc.tube, 1.0, 0.8, 0.7);
    sections["axial_coefficient_forms"] = {
        {"max_abs_dev", worst},
        {"verdict", verdict(worst)},
        {"closed_form_sample", sample.closed_form},
        {"derivative_form_sample", sample.derivative_form}};
  }

  // 3. Quoted frame-projected derivatives vs direct differentiation.
  {
    double worst = 0.0;
    double per_entry[3] = {0.0, 0.0, 0.0};
    const Vec3 n_probe{0.0, 1.0, 0.0};
    for (int is = 0; is < 6; ++is)
      for (int ic = 1; ic <= 4; ++ic)
        for (int ip = 0; ip < 6; ++ip) {
          const double s = sc.tube.length * (is + 0.5) / 6.0;
          const double chi = 0.2 * ic + 0.1;
          const double phi = kTwoPi * (ip + 0.5) / 6.0;
          const TabulatedRrcForms tf = tabulated_rrc_forms(sc.shape, sc.tube, s, chi, phi);
          const double quoted[3] = {tf.n_ds_e1, tf.n_ds_e2, tf.n_ds_e3};
          for (int i = 0; i < 3; ++i) {
            const double direct = triad_rrc(sc.shape, sc.tube, s, chi, phi, n_probe, i);
            per_entry[i] = std::max(per_entry[i], std::fabs(quoted[i] - direct));
          }
        }
    for (double d : per_entry) worst = std::max(worst, d);
    const double bsn = tabulated_frenet_discrepancy(sc.tube.tau0);
    worst = std::max(worst, bsn);
    sections["frame_derivative_forms"] = {
        {"max_abs_dev", worst},
        {"verdict", verdict(worst)},
        {"n_ds_e1_dev", per_entry[0]},
        {"n_ds_e2_dev", per_entry[1]},
        {"n_ds_e3_dev", per_entry[2]},
        {"frenet_bsn_sign_dev", bsn}};
  }

  // 4. Unstretching field ratio: quoted approximation and ratio inversion.
  {
    double thin_gap = 0.0, inversion_gap = 0.0, constraint = 0.0;
    for (int is = 0; is < 6; ++is)
      for (int ic = 1; ic <= 4; ++ic)
        for (int ip = 0; ip < 6; ++ip) {
          const UnstretchRatio r =
              unstretch_ratio(sc.shape, sc.tube, sc.tube.length * (is + 0.5) / 6.0,
                              0.2 * ic + 0.1, kTwoPi * (ip + 0.5) / 6.0);
          thin_gap = std::max(thin_gap,
                              std::fabs(r.ratio_B1_over_B3 - r.thin_tube_ratio));
          inversion_gap = std::max(inversion_gap,
                                   std::fabs(-r.b - r.ratio_B1_over_B3));
          constraint = std::max(
              constraint,
              std::fabs(r.ratio_B1_over_B3 * r.gamma112 + 1.0 * r.gamma132));
        }
    const double worst = std::max(thin_gap, inversion_gap);
    sections["field_ratio_forms"] = {{"max_abs_dev", worst},
                                     {"verdict", verdict(worst)},
                                     {"thin_tube_approx_dev", thin_gap},
                                     {"quoted_inverse_ratio_dev", inversion_gap},
                                     {"constraint_residual", constraint}};
  }

  // 5. Radius decay rate: ODE vs quoted constant.
  {
    const double grid[] = {0.0, 1.0, 2.0, 4.0};
    const RadiusProfile p = radius_profile(sc.dynamo, grid);
    const double dev = std::fabs(p.decay_rate - p.decay_rate_quoted);
    sections["radius_decay_forms"] = {
        {"max_abs_dev", dev},
        {"verdict", verdict(dev)},
        {"ode_rate", p.decay_rate},
        {"quoted_rate", p.decay_rate_quoted},
        {"quoted_over_ode", p.decay_rate_quoted / p.decay_rate}};
  }

  // 6. Axial field closed forms: exact vs quoted solution residuals.
  {
    const double grid[] = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    const RadiusProfile p = radius_profile(sc.dynamo, grid);
    const FieldSolution exact = field_solution(sc.dynamo, p, FieldMode::exact);
    const FieldSolution quoted = field_solution(sc.dynamo, p, FieldMode::printed);
    double exact_res = 0.0, quoted_res = 0.0, identity_dev = 0.0;
    for (double s = 0.25; s < 5.0; s += 0.25) {
      exact_res = std::max(exact_res, std::fabs(exact.residual_fd(s, 0.0)));
      const double qr = quoted.residual_fd(s, 0.0);
      quoted_res = std::max(quoted_res, std::fabs(qr));
      identity_dev =
          std::max(identity_dev, std::fabs(qr - p.R_s(s) * quoted.B3(s, 0.0)));
    }
    sections["axial_field_forms"] = {{"max_abs_dev", quoted_res},
                                     {"verdict", verdict(quoted_res)},
                                     {"exact_mode_max_residual", exact_res},
                                     {"quoted_mode_max_residual", quoted_res},
                                     {"quoted_residual_identity_dev", identity_dev}};
  }

  // 7. Energy exponent reading: cubed vs cube-root.
  {
    QuadratureSpec quad;
    quad.n_s = 16;
    quad.n_chi = 16;
    quad.n_phi = 16;
    quad.workers = workers;
    const double V_T = surface_volume(sc.shape, sc.tube, 1.0, quad);
    const double L = sc.tube.length;
    const MeanEnergy cubed = mean_energy(V_T, L, V_T, 1.0, EpsilonMode::cubed);
    const MeanEnergy root = mean_energy(V_T, L, V_T, 1.0, EpsilonMode::cube_root);
    const double rho = V_T / (kPi * L * L * L);
    const double ratio = cubed.value / root.value;
    const double expected = std::pow(rho, 8.0);
    const double dev = std::fabs(cubed.epsilon - root.epsilon);
    sections["energy_exponent_forms"] = {
        {"max_abs_dev", dev},
        {"verdict", verdict(dev)},
        {"epsilon_cubed", cubed.epsilon},
        {"epsilon_cube_root", root.epsilon},
        {"mean_energy_ratio", ratio},
        {"expected_ratio", expected},
        {"ratio_identity_dev", std::fabs(ratio - expected)}};
  }

  ojson report;
  report["scenario"] = {{"kappa0", sc.tube.kappa0},
                        {"tau0", sc.tube.tau0},
                        {"length", sc.tube.length},
                        {"linking", sc.tube.linking},
                        {"effective_torsion", sc.tube.effective_torsion()}};
  report["sections"] = sections;
  return report;
}

ojson meta_object(const RunConfig& cfg) {
  std::ostringstream hash;
  hash << std::hex << cfg.hash();
  ojson meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["config_hash"] = hash.str();
  ojson echo = ojson::object();
  for (const auto& [k, v] : cfg.items()) echo[k] = v;
  meta["config"] = echo;
  return meta;
}

std::string csv_metadata_header(const RunConfig& cfg) {
  std::ostringstream out;
  out << "# " << kToolName << " " << kToolVersion << "\n";
  out << "# config-hash: " << std::hex << cfg.hash() << "\n";
  out << "# config: " << cfg.canonical() << "\n";
  return out.str();
}

}  // namespace fluxknot

// fluxknot: geometry, rotation coefficients, energy integrals, and reduced
// dynamo solutions for twisted magnetic flux tubes. Machine output goes to
// files (CSV/JSON with a metadata block); stdout carries short summaries.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fluxknot/config.hpp"
#include "fluxknot/curve.hpp"
#include "fluxknot/dynamo.hpp"
#include "fluxknot/energy.hpp"
#include "fluxknot/errors.hpp"
#include "fluxknot/quadrature.hpp"
#include "fluxknot/reports.hpp"
#include "fluxknot/rotation.hpp"
#include "fluxknot/shape.hpp"
#include "fluxknot/tube.hpp"

namespace fx = fluxknot;
using fx::ojson;

namespace {

struct SubcommandCtx {
  std::vector<fx::ParamSpec> registry;
  std::map<std::string, std::string> overrides;  // flag-provided values
  std::string config_path;
  std::string out_path;
};

std::string flag_from_key(const std::string& key) {
  std::string tail = key.substr(key.find('.') + 1);
  for (char& c : tail)
    if (c == '_') c = '-';
  return "--" + tail;
}

// Register every key of the registry as a CLI flag; values land in overrides
// only when the flag is actually passed.
void wire_flags(CLI::App* app, SubcommandCtx& ctx) {
  app->add_option("--config", ctx.config_path, "config file (key = value lines)");
  app->add_option("--out", ctx.out_path, "output file path");
  for (const auto& spec : ctx.registry) {
    const std::string flag = spec.flag.empty() ? flag_from_key(spec.key) : spec.flag;
    if (spec.type == fx::ParamType::toggle) {
      app->add_flag_function(
          flag,
          [&ctx, key = spec.key](std::int64_t) { ctx.overrides[key] = "true"; },
          spec.help);
    } else {
      app->add_option_function<std::string>(
          flag,
          [&ctx, key = spec.key](const std::string& v) { ctx.overrides[key] = v; },
          spec.help);
    }
  }
}

fx::RunConfig finalize(const SubcommandCtx& ctx) {
  std::map<std::string, std::string> file_values;
  if (!ctx.config_path.empty())
    file_values = fx::RunConfig::parse_file(ctx.config_path);
  return fx::RunConfig::build(ctx.registry, file_values, ctx.overrides);
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty()) throw fx::config_error("missing required option: --out");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fx::config_error("cannot open output file: " + path);
  out << content;
}

// --- shared builders ---------------------------------------------------------

std::vector<fx::ParamSpec> curve_registry() {
  using fx::ParamType;
  return {
      {"curve.preset", ParamType::text, "", true,
       "line | circle | helix | torus_knot", "--curve"},
      {"curve.a", ParamType::real, "1", false, "circle/helix radius"},
      {"curve.c", ParamType::real, "1", false, "helix pitch"},
      {"curve.p", ParamType::integer, "2", false, "torus knot p"},
      {"curve.q", ParamType::integer, "3", false, "torus knot q"},
      {"curve.major", ParamType::real, "2", false, "torus knot major radius"},
      {"curve.minor", ParamType::real, "0.5", false, "torus knot minor radius"},
  };
}

fx::SpaceCurve curve_from(const fx::RunConfig& cfg) {
  const std::string& preset = cfg.text("curve.preset");
  if (preset == "line") return fx::SpaceCurve::line();
  if (preset == "circle") return fx::SpaceCurve::circle(cfg.real("curve.a"));
  if (preset == "helix")
    return fx::SpaceCurve::helix(cfg.real("curve.a"), cfg.real("curve.c"));
  if (preset == "torus_knot")
    return fx::SpaceCurve::torus_knot(static_cast<int>(cfg.integer("curve.p")),
                                      static_cast<int>(cfg.integer("curve.q")),
                                      cfg.real("curve.major"), cfg.real("curve.minor"));
  throw fx::config_error("curve.preset: unknown preset '" + preset + "'");
}

std::vector<fx::ParamSpec> tube_registry() {
  using fx::ParamType;
  return {
      {"tube.length", ParamType::real, "6.283185307179586", false, "tube length L"},
      {"tube.linking", ParamType::integer, "0", false, "Gauss linking number"},
      {"tube.kappa0", ParamType::real, "0", false, "base curvature"},
      {"tube.tau0", ParamType::real, "0", false, "base torsion"},
  };
}

fx::TubeConfig tube_from(const fx::RunConfig& cfg) {
  fx::TubeConfig t;
  t.length = cfg.real("tube.length");
  t.linking = static_cast<int>(cfg.integer("tube.linking"));
  t.kappa0 = cfg.real("tube.kappa0");
  t.tau0 = cfg.real("tube.tau0");
  t.validate();
  return t;
}

std::vector<fx::ParamSpec> shape_registry() {
  using fx::ParamType;
  return {
      {"shape.preset", ParamType::text, "constant", false,
       "constant | linear | separable | elliptic", "--shape"},
      {"shape.scale", ParamType::real, "1", false, "radius scale"},
      {"shape.lin_a", ParamType::real, "0.2", false, "linear preset offset"},
      {"shape.lin_b", ParamType::real, "0.8", false, "linear preset slope"},
      {"shape.alpha", ParamType::real, "0.15", false, "axial modulation amplitude"},
      {"shape.m", ParamType::integer, "1", false, "axial modulation mode"},
      {"shape.ecc", ParamType::real, "0.2", false, "cross-section modulation"},
  };
}

fx::ShapeFunction shape_from(const fx::RunConfig& cfg, double L) {
  const std::string& preset = cfg.text("shape.preset");
  if (preset == "constant") return fx::ShapeFunction::constant(cfg.real("shape.scale"));
  if (preset == "linear")
    return fx::ShapeFunction::linear_chi(cfg.real("shape.lin_a"), cfg.real("shape.lin_b"));
  if (preset == "separable")
    return fx::ShapeFunction::separable(cfg.real("shape.scale"), cfg.real("shape.alpha"),
                                        static_cast<int>(cfg.integer("shape.m")), L);
  if (preset == "elliptic")
    return fx::ShapeFunction::modulated(cfg.real("shape.scale"), cfg.real("shape.alpha"),
                                        static_cast<int>(cfg.integer("shape.m")), L,
                                        cfg.real("shape.ecc"));
  throw fx::config_error("shape.preset: unknown preset '" + preset + "'");
}

std::vector<fx::ParamSpec> grid_registry() {
  using fx::ParamType;
  return {
      {"grid.n_s", ParamType::integer, "8", false, "sample count along s"},
      {"grid.n_chi", ParamType::integer, "6", false, "sample count along chi"},
      {"grid.n_phi", ParamType::integer, "12", false, "sample count along phi"},
      {"grid.chi_lo", ParamType::real, "0.1", false, "lowest sampled chi"},
  };
}

fx::SampleGrid grid_from(const fx::RunConfig& cfg, double L) {
  fx::SampleGrid g;
  g.n_s = static_cast<int>(cfg.integer("grid.n_s"));
  g.n_chi = static_cast<int>(cfg.integer("grid.n_chi"));
  g.n_phi = static_cast<int>(cfg.integer("grid.n_phi"));
  g.chi_lo = cfg.real("grid.chi_lo");
  g.s_hi = L;
  if (g.n_s < 1 || g.n_chi < 1 || g.n_phi < 1)
    throw fx::config_error("grid: sample counts must be >= 1");
  return g;
}

void append_registry(std::vector<fx::ParamSpec>& into,
                     const std::vector<fx::ParamSpec>& more) {
  into.insert(into.end(), more.begin(), more.end());
}

// --- subcommand handlers -----------------------------------------------------

int run_frenet(const SubcommandCtx& ctx) {
  const fx::RunConfig cfg = finalize(ctx);
  const fx::SpaceCurve curve = curve_from(cfg);
  const fx::ArclengthTable table(curve);
  const int n = static_cast<int>(cfg.integer("frenet.n"));
  const double h = cfg.real("frenet.step");
  const double res_h = cfg.real("frenet.res_step");
  if (n < 1) throw fx::config_error("frenet.n: need at least one sample");

  std::ostringstream csv;
  csv << fx::csv_metadata_header(cfg);
  csv << "s,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau,res1,res2,res3\n";
  const double L = table.length();
  for (int k = 0; k < n; ++k) {
    const double s = L * (k + 0.5) / n;
    const fx::FrenetData f = fx::frenet_at(curve, table, s, h);
    const auto res = fx::frenet_serret_residual(curve, table, s, res_h);
    const double cols[15] = {s,
                             f.tangent.x, f.tangent.y, f.tangent.z,
                             f.normal.x, f.normal.y, f.normal.z,
                             f.binormal.x, f.binormal.y, f.binormal.z,
                             f.curvature, f.torsion,
                             res[0], res[1], res[2]};
    for (int c = 0; c < 15; ++c) csv << (c ? "," : "") << fx::format_full(cols[c]);
    csv << "\n";
  }
  write_file(ctx.out_path, csv.str());
  std::cout << "frenet: wrote " << n << " samples (L = " << L << ") to "
            << ctx.out_path << "\n";
  return 0;
}

int run_metric(const SubcommandCtx& ctx) {
  const fx::RunConfig cfg = finalize(ctx);
  const fx::TubeConfig tube = tube_from(cfg);
  const fx::ShapeFunction shape = shape_from(cfg, tube.length);
  const fx::SampleGrid grid = grid_from(cfg, tube.length);

  if (cfg.toggle("metric.report")) {
    const auto rows = fx::metric_consistency_report(shape, tube, grid);
    std::ostringstream csv;
    csv << fx::csv_metadata_header(cfg);
    csv << "entry,max_abs_dev,where\n";
    for (const auto& r : rows)
      csv << r.entry << "," << fx::format_full(r.max_abs_dev) << "," << r.where
          << "\n";
    write_file(ctx.out_path, csv.str());
    std::cout << "metric: wrote consistency report (" << rows.size()
              << " entries) to " << ctx.out_path << "\n";
    return 0;
  }

  ojson points = ojson::array();
  for (int is = 0; is < grid.n_s; ++is)
    for (int ic = 0; ic < grid.n_chi; ++ic)
      for (int ip = 0; ip < grid.n_phi; ++ip) {
        const double s = grid.s_lo + (grid.s_hi - grid.s_lo) * (is + 0.5) / grid.n_s;
        const double chi =
            grid.chi_lo + (grid.chi_hi - grid.chi_lo) * (ic + 0.5) / grid.n_chi;
        const double phi =
            grid.phi_lo + (grid.phi_hi - grid.phi_lo) * (ip + 0.5) / grid.n_phi;
        const fx::MetricBundle mb =
            fx::metric_from_triad(fx::basis_triad(shape, tube, s, chi, phi));
        ojson g = ojson::array();
        for (int i = 0; i < 3; ++i)
          g.push_back({mb.g(i, 0), mb.g(i, 1), mb.g(i, 2)});
        points.push_back({{"s", s},
                          {"chi", chi},
                          {"phi", phi},
                          {"g", g},
                          {"sqrt_g", mb.sqrt_g},
                          {"valid", mb.valid}});
      }
  ojson doc;
  doc["meta"] = fx::meta_object(cfg);
  doc["points"] = points;
  write_file(ctx.out_path, doc.dump(2) + "\n");
  std::cout << "metric: wrote " << points.size() << " grid points to "
            << ctx.out_path << "\n";
  return 0;
}

int run_rrc(const SubcommandCtx& ctx) {
  const fx::RunConfig cfg = finalize(ctx);
  const fx::TubeConfig tube = tube_from(cfg);
  const fx::ShapeFunction shape = shape_from(cfg, tube.length);
  const fx::SampleGrid grid = grid_from(cfg, tube.length);
  const fx::Vec3 n_probe{0.0, 1.0, 0.0};
  const fx::Vec3 t_probe{1.0, 0.0, 0.0};

  if (cfg.toggle("rrc.check")) {
    double dev[3] = {0, 0, 0};
    double fd_dev = 0.0;
    for (int is = 0; is < grid.n_s; ++is)
      for (int ic = 0; ic < grid.n_chi; ++ic)
        for (int ip = 0; ip < grid.n_phi; ++ip) {
          const double s = grid.s_lo + (grid.s_hi - grid.s_lo) * (is + 0.5) / grid.n_s;
          const double chi =
              grid.chi_lo + (grid.chi_hi - grid.chi_lo) * (ic + 0.5) / grid.n_chi;
          const double phi =
              grid.phi_lo + (grid.phi_hi - grid.phi_lo) * (ip + 0.5) / grid.n_phi;
          const auto quoted = fx::tabulated_rrc_forms(shape, tube, s, chi, phi);
          const double q[3] = {quoted.n_ds_e1, quoted.n_ds_e2, quoted.n_ds_e3};
          for (int i = 0; i < 3; ++i) {
            const double direct = fx::triad_rrc(shape, tube, s, chi, phi, n_probe, i);
            dev[i] = std::max(dev[i], std::fabs(q[i] - direct));
            const double fd =
                fx::triad_rrc_fd(shape, tube, s, chi, phi, n_probe, i, 1e-3);
            fd_dev = std::max(fd_dev, std::fabs(fd - direct));
          }
        }
    ojson doc;
    doc["meta"] = fx::meta_object(cfg);
    doc["quoted_vs_direct"] = {{"n_ds_e1", dev[0]},
                               {"n_ds_e2", dev[1]},
                               {"n_ds_e3", dev[2]}};
    doc["direct_vs_finite_difference"] = fd_dev;
    doc["frenet_bsn_sign_dev"] = fx::tabulated_frenet_discrepancy(tube.tau0);
    write_file(ctx.out_path, doc.dump(2) + "\n");
    std::cout << "rrc: wrote discrepancy report to " << ctx.out_path << "\n";
    return 0;
  }

  std::vector<std::string> entries;
  {
    std::stringstream ss(cfg.text("rrc.entries"));
    std::string tok;
    const std::vector<std::string> known = {
        "gamma112_closed", "gamma112_derivative", "gamma132", "t_ds_e2",
        "n_ds_e1",         "n_ds_e2",             "n_ds_e3"};
    while (std::getline(ss, tok, ',')) {
      bool ok = false;
      for (const auto& k : known) ok = ok || k == tok;
      if (!ok) throw fx::config_error("rrc.entries: unknown entry '" + tok + "'");
      entries.push_back(tok);
    }
    if (entries.empty()) throw fx::config_error("rrc.entries: empty list");
  }

  std::ostringstream csv;
  csv << fx::csv_metadata_header(cfg);
  csv << "s,chi,phi";
  for (const auto& e : entries) csv << "," << e;
  csv << "\n";
  for (int is = 0; is < grid.n_s; ++is)
    for (int ic = 0; ic < grid.n_chi; ++ic)
      for (int ip = 0; ip < grid.n_phi; ++ip) {
        const double s = grid.s_lo + (grid.s_hi - grid.s_lo) * (is + 0.5) / grid.n_s;
        const double chi =
            grid.chi_lo + (grid.chi_hi - grid.chi_lo) * (ic + 0.5) / grid.n_chi;
        const double phi =
            grid.phi_lo + (grid.phi_hi - grid.phi_lo) * (ip + 0.5) / grid.n_phi;
        const auto g112 = fx::gamma_112(shape, tube, s, chi, phi);
        auto value_of = [&](const std::string& name) {
          if (name == "gamma112_closed") return g112.closed_form;
          if (name == "gamma112_derivative") return g112.derivative_form;
          if (name == "gamma132") return fx::gamma_132(shape, tube, s, chi, phi);
          if (name == "t_ds_e2")
            return fx::triad_rrc(shape, tube, s, chi, phi, t_probe, 1);
          if (name == "n_ds_e1")
            return fx::triad_rrc(shape, tube, s, chi, phi, n_probe, 0);
          if (name == "n_ds_e2")
            return fx::triad_rrc(shape, tube, s, chi, phi, n_probe, 1);
          return fx::triad_rrc(shape, tube, s, chi, phi, n_probe, 2);
        };
        csv << fx::format_full(s) << "," << fx::format_full(chi) << ","
            << fx::format_full(phi);
        for (const auto& e : entries) csv << "," << fx::format_full(value_of(e));
        csv << "\n";
      }
  write_file(ctx.out_path, csv.str());
  std::cout << "rrc: wrote coefficient grid (" << entries.size() << " entries) to "
            << ctx.out_path << "\n";
  return 0;
}

int run_energy(const SubcommandCtx& ctx) {
  const fx::RunConfig cfg = finalize(ctx);
  const fx::TubeConfig tube = tube_from(cfg);
  const fx::ShapeFunction shape = shape_from(cfg, tube.length);

  fx::QuadratureSpec quad;
  const std::string& rule = cfg.text("quad.rule");
  if (rule == "simpson")
    quad.rule = fx::QuadRule::simpson;
  else if (rule == "gauss")
    quad.rule = fx::QuadRule::gauss_legendre;
  else
    throw fx::config_error("quad.rule: expected 'simpson' or 'gauss'");
  quad.n_s = static_cast<int>(cfg.integer("quad.n_s"));
  quad.n_chi = static_cast<int>(cfg.integer("quad.n_chi"));
  quad.n_phi = static_cast<int>(cfg.integer("quad.n_phi"));
  quad.workers = fx::env_worker_count();
  quad.validate();

  std::vector<double> levels;
  std::stringstream ss(cfg.text("energy.levels"));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      levels.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw fx::config_error("energy.levels: bad level '" + tok + "'");
    }
  }

  const std::string& mode_name = cfg.text("energy.epsilon_mode");
  fx::EpsilonMode mode;
  if (mode_name == "cubed")
    mode = fx::EpsilonMode::cubed;
  else if (mode_name == "cube_root")
    mode = fx::EpsilonMode::cube_root;
  else
    throw fx::config_error("energy.epsilon_mode: expected 'cubed' or 'cube_root'");

  const fx::EnergyReport rep = fx::energy_report(
      shape, tube, cfg.real("energy.b"), nullptr, levels, cfg.real("energy.b3sq"),
      mode, quad);

  ojson level_rows = ojson::array();
  for (const auto& [chi, V] : rep.V_levels)
    level_rows.push_back({{"chi", chi}, {"V", V}});
  ojson doc;
  doc["meta"] = fx::meta_object(cfg);
  doc["M"] = rep.M;
  doc["V_T"] = rep.V_T;
  doc["V_levels"] = level_rows;
  doc["mean_M"] = rep.mean_M;
  doc["epsilon_mode"] = mode_name;
  doc["epsilon"] = rep.epsilon;
  write_file(ctx.out_path, doc.dump(2) + "\n");
  std::cout << "energy: M = " << rep.M << ", V_T = " << rep.V_T << " -> "
            << ctx.out_path << "\n";
  return 0;
}

int run_dynamo(const SubcommandCtx& ctx) {
  const fx::RunConfig cfg = finalize(ctx);
  fx::DynamoParams params;
  params.growth_rate = cfg.real("dynamo.lambda");
  params.v1 = cfg.real("dynamo.v1");
  params.v3 = cfg.real("dynamo.v3");
  params.kappa0 = cfg.real("dynamo.kappa0");
  params.A0 = cfg.real("dynamo.A0");
  params.R0 = cfg.real("dynamo.R0");
  params.B0 = cfg.real("dynamo.B0");
  params.theta_eval = cfg.real("dynamo.theta");
  params.validate();

  const double s_max = cfg.real("dynamo.s_max");
  const int n = static_cast<int>(cfg.integer("dynamo.n_samples"));
  const double t1 = cfg.real("dynamo.t1");
  if (n < 2) throw fx::config_error("dynamo.n_samples: need at least 2");

  std::vector<double> s_grid(n);
  for (int k = 0; k < n; ++k) s_grid[k] = s_max * k / (n - 1);
  const fx::RadiusProfile profile = fx::radius_profile(params, s_grid);

  const std::string& mode_name = cfg.text("dynamo.mode");
  fx::FieldMode mode;
  if (mode_name == "exact")
    mode = fx::FieldMode::exact;
  else if (mode_name == "printed")
    mode = fx::FieldMode::printed;
  else
    throw fx::config_error("dynamo.mode: expected 'printed' or 'exact'");
  const fx::FieldSolution fields = fx::field_solution(params, profile, mode);

  if (cfg.toggle("dynamo.report")) {
    const fx::FieldSolution exact = fx::field_solution(params, profile, fx::FieldMode::exact);
    const fx::FieldSolution quoted =
        fx::field_solution(params, profile, fx::FieldMode::printed);
    double exact_res = 0.0, quoted_res = 0.0, identity_dev = 0.0;
    for (int k = 1; k + 1 < n; ++k) {
      const double s = s_grid[k];
      exact_res = std::max(exact_res, std::fabs(exact.residual_fd(s, 0.0)));
      const double qr = quoted.residual_fd(s, 0.0);
      quoted_res = std::max(quoted_res, std::fabs(qr));
      identity_dev =
          std::max(identity_dev, std::fabs(qr - profile.R_s(s) * quoted.B3(s, 0.0)));
    }
    ojson doc;
    doc["meta"] = fx::meta_object(cfg);
    doc["radius_decay"] = {{"ode_rate", profile.decay_rate},
                           {"quoted_rate", profile.decay_rate_quoted},
                           {"quoted_over_ode",
                            profile.decay_rate_quoted / profile.decay_rate}};
    doc["axial_field"] = {{"exact_mode_max_residual", exact_res},
                          {"quoted_mode_max_residual", quoted_res},
                          {"quoted_residual_identity_dev", identity_dev}};
    write_file(ctx.out_path, doc.dump(2) + "\n");
    std::cout << "dynamo: wrote discrepancy report to " << ctx.out_path << "\n";
    return 0;
  }

  std::ostringstream csv;
  csv << fx::csv_metadata_header(cfg);
  csv << "s,R,R_s,B3_t0,B3_t1,residual_axial\n";
  for (int k = 0; k < n; ++k) {
    const double s = s_grid[k];
    const double cols[6] = {s,
                            profile.R(s),
                            profile.R_s(s),
                            fields.B3(s, 0.0),
                            fields.B3(s, t1),
                            fields.residual_fd(s, 0.0)};
    for (int c = 0; c < 6; ++c) csv << (c ? "," : "") << fx::format_full(cols[c]);
    csv << "\n";
  }
  write_file(ctx.out_path, csv.str());
  std::cout << "dynamo: wrote " << n << " samples (" << mode_name
            << " mode, R_inf = " << profile.R_inf << ") to " << ctx.out_path << "\n";
  return 0;
}

int run_validate(const SubcommandCtx& ctx) {
  const fx::RunConfig cfg = finalize(ctx);
  ojson doc;
  doc["meta"] = fx::meta_object(cfg);
  const ojson report = fx::validate_report(fx::env_worker_count());
  doc["scenario"] = report["scenario"];
  doc["sections"] = report["sections"];
  write_file(ctx.out_path, doc.dump(2) + "\n");
  int discrepant = 0;
  for (const auto& [name, section] : report["sections"].items())
    if (section["verdict"] == "discrepant") ++discrepant;
  std::cout << "validate: " << report["sections"].size() << " sections ("
            << discrepant << " discrepant) -> " << ctx.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flux-tube geometry and dynamo toolkit"};
  app.require_subcommand(1);

  SubcommandCtx frenet_ctx, metric_ctx, rrc_ctx, energy_ctx, dynamo_ctx, validate_ctx;

  frenet_ctx.registry = curve_registry();
  append_registry(frenet_ctx.registry,
                  {{"frenet.n", fx::ParamType::integer, "50", false, "sample count"},
                   {"frenet.step", fx::ParamType::real, "0", false,
                    "finite-difference step (0 = 1e-4 * range)"},
                   {"frenet.res_step", fx::ParamType::real, "1e-4", false,
                    "frame-derivative step for the residuals"}});
  wire_flags(app.add_subcommand("frenet", "Frenet frames along a preset curve"),
             frenet_ctx);

  metric_ctx.registry = tube_registry();
  append_registry(metric_ctx.registry, shape_registry());
  append_registry(metric_ctx.registry, grid_registry());
  metric_ctx.registry.push_back({"metric.report", fx::ParamType::toggle, "false", false,
                                 "emit the tabulated-matrix consistency report"});
  wire_flags(app.add_subcommand("metric", "tube metric over a sample grid"),
             metric_ctx);

  rrc_ctx.registry = tube_registry();
  append_registry(rrc_ctx.registry, shape_registry());
  append_registry(rrc_ctx.registry, grid_registry());
  rrc_ctx.registry.push_back({"rrc.check", fx::ParamType::toggle, "false", false,
                              "emit quoted-vs-direct discrepancy report"});
  rrc_ctx.registry.push_back(
      {"rrc.entries", fx::ParamType::text,
       "gamma112_closed,gamma112_derivative,gamma132,t_ds_e2,n_ds_e1,n_ds_e2,n_ds_e3",
       false, "comma list of coefficient columns to emit"});
  wire_flags(app.add_subcommand("rrc", "rotation coefficients over a sample grid"),
             rrc_ctx);

  energy_ctx.registry = tube_registry();
  append_registry(energy_ctx.registry, shape_registry());
  append_registry(
      energy_ctx.registry,
      {{"quad.rule", fx::ParamType::text, "simpson", false, "simpson | gauss"},
       {"quad.n_s", fx::ParamType::integer, "32", false, "intervals/nodes along s"},
       {"quad.n_chi", fx::ParamType::integer, "32", false, "intervals/nodes along chi"},
       {"quad.n_phi", fx::ParamType::integer, "32", false, "intervals/nodes along phi"},
       {"energy.b", fx::ParamType::real, "0", false, "field component ratio b"},
       {"energy.levels", fx::ParamType::text, "0.25,0.5,0.75,1", false,
        "comma list of chi levels for V(chi)"},
       {"energy.b3sq", fx::ParamType::real, "1", false, "<(B3)^2> for the mean energy"},
       {"energy.epsilon_mode", fx::ParamType::text, "cubed", false,
        "cubed | cube_root"}});
  wire_flags(app.add_subcommand("energy", "volumes and magnetic energy integrals"),
             energy_ctx);

  dynamo_ctx.registry = {
      {"dynamo.lambda", fx::ParamType::real, "", true, "growth rate"},
      {"dynamo.v1", fx::ParamType::real, "1", false, "toroidal flow modulus"},
      {"dynamo.v3", fx::ParamType::real, "1", false, "poloidal flow modulus"},
      {"dynamo.kappa0", fx::ParamType::real, "0.5", false, "axis curvature"},
      {"dynamo.A0", fx::ParamType::real, "-0.1", false, "radius slope constant"},
      {"dynamo.R0", fx::ParamType::real, "1", false, "initial radius"},
      {"dynamo.B0", fx::ParamType::real, "1", false, "field amplitude"},
      {"dynamo.theta", fx::ParamType::real, "0", false, "evaluation angle"},
      {"dynamo.s_max", fx::ParamType::real, "5", false, "arclength extent"},
      {"dynamo.n_samples", fx::ParamType::integer, "100", false, "grid size"},
      {"dynamo.t1", fx::ParamType::real, "1", false, "second output time"},
      {"dynamo.mode", fx::ParamType::text, "exact", false, "printed | exact"},
      {"dynamo.report", fx::ParamType::toggle, "false", false,
       "emit closed-form discrepancy report"}};
  wire_flags(app.add_subcommand("dynamo", "shrinking-tube dynamo solutions"),
             dynamo_ctx);

  wire_flags(app.add_subcommand("validate", "run all conformance reports"),
             validate_ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("frenet")) return run_frenet(frenet_ctx);
    if (app.got_subcommand("metric")) return run_metric(metric_ctx);
    if (app.got_subcommand("rrc")) return run_rrc(rrc_ctx);
    if (app.got_subcommand("energy")) return run_energy(energy_ctx);
    if (app.got_subcommand("dynamo")) return run_dynamo(dynamo_ctx);
    if (app.got_subcommand("validate")) return run_validate(validate_ctx);
  } catch (const fx::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fx::numeric_error& e) {
    std::cerr << "numerical-domain error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

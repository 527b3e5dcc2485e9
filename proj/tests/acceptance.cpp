// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criteria are oracle- and property-based at desk scale; every tolerance is
// fixed here in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fluxknot/curve.hpp"
#include "fluxknot/dynamo.hpp"
#include "fluxknot/energy.hpp"
#include "fluxknot/errors.hpp"
#include "fluxknot/quadrature.hpp"
#include "fluxknot/rotation.hpp"
#include "fluxknot/shape.hpp"
#include "fluxknot/tube.hpp"

using namespace fluxknot;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int number;
  std::string label;
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int g_failures = 0;

void report(const Criterion& c, double seconds) {
  std::printf("[%s] criterion %d: %s (%.2fs%s%s)\n", c.ok ? "PASS" : "FAIL", c.number,
              c.label.c_str(), seconds, c.detail.empty() ? "" : "; ",
              c.detail.c_str());
  if (!c.ok) ++g_failures;
}

template <typename F>
void run(int number, const std::string& label, double time_limit_s, F&& body) {
  Criterion c{number, label};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("unexpected exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0.0)
    c.require(secs < time_limit_s,
              "runtime " + std::to_string(secs) + "s exceeds limit");
  report(c, secs);
}

// --- shared draw helpers ------------------------------------------------------

struct Draw {
  ShapeFunction shape;
  TubeConfig cfg;
  double s, chi, phi;
};

Draw random_valid_draw(std::mt19937& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    TubeConfig cfg;
    cfg.length = 4.0 + 8.0 * u01(rng);
    cfg.linking = static_cast<int>(u01(rng) * 5.0) - 2;
    cfg.kappa0 = u01(rng);
    cfg.tau0 = u01(rng);
    ShapeFunction shape;
    const int kind = static_cast<int>(u01(rng) * 3.0);
    if (kind == 0)
      shape = ShapeFunction::constant(0.5 + u01(rng));
    else if (kind == 1)
      shape = ShapeFunction::linear_chi(0.1 + 0.4 * u01(rng), 0.3 + 0.7 * u01(rng));
    else
      shape = ShapeFunction::modulated(0.4 + 0.6 * u01(rng), 0.3 * u01(rng), 1,
                                       cfg.length, 0.3 * u01(rng));
    const double s = cfg.length * u01(rng);
    const double chi = 0.1 + 0.9 * u01(rng);
    const double phi = kTwoPi * u01(rng);
    if (basis_triad(shape, cfg, s, chi, phi).K > 0.05) return {shape, cfg, s, chi, phi};
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli_path = argc > 1 ? argv[1] : FLUXKNOT_CLI_PATH;

  // 1. Frenet oracle on random helices.
  run(1, "helix Frenet oracle and frame-evolution residuals", 5.0, [](Criterion& c) {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> par(0.5, 2.0);
    for (int k = 0; k < 100; ++k) {
      const double a = par(rng), cc = par(rng);
      const double kappa_ref = a / (a * a + cc * cc);
      const double tau_ref = cc / (a * a + cc * cc);
      const SpaceCurve curve = SpaceCurve::helix(a, cc);
      const ArclengthTable table(curve, 256);
      std::uniform_real_distribution<double> pick(0.05 * table.length(),
                                                  0.95 * table.length());
      const double s = pick(rng);

      const FrenetData f = frenet_at(curve, table, s);
      c.require(std::fabs(f.curvature - kappa_ref) < 1e-6 * kappa_ref,
                "helix curvature off at a=" + std::to_string(a));
      c.require(std::fabs(f.torsion - tau_ref) < 1e-6 * tau_ref,
                "helix torsion off at a=" + std::to_string(a));

      // Finite-difference path against the same closed forms.
      const SpaceCurve sampled = curve.without_derivatives();
      const ArclengthTable ts(sampled, 256);
      const FrenetData g = frenet_at(sampled, ts, s);
      c.require(std::fabs(g.curvature - kappa_ref) < 1e-6 * kappa_ref,
                "FD curvature off at a=" + std::to_string(a));
      c.require(std::fabs(g.torsion - tau_ref) < 1e-6 * tau_ref,
                "FD torsion off at a=" + std::to_string(a));

      const auto res = frenet_serret_residual(curve, table, s, 1e-4);
      for (double r : res) c.require(r < 1e-6, "frame-evolution residual >= 1e-6");
    }
  });

  // 2. Metric Gram identity and coordinate limits.
  run(2, "metric Gram identity, positivity, and limits", 5.0, [](Criterion& c) {
    std::mt19937 rng(202);
    for (int k = 0; k < 1000; ++k) {
      const Draw d = random_valid_draw(rng);
      const Triad tr = basis_triad(d.shape, d.cfg, d.s, d.chi, d.phi);
      const MetricBundle mb = metric_from_triad(tr);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          c.require(mb.g(i, j) == mb.g(j, i), "metric not symmetric");
      const auto ev = sym3_eigenvalues(mb.g);
      c.require(ev[0] > 0.0, "metric not positive definite on a valid draw");
      const double triple = tr.e1.dot(tr.e2.cross(tr.e3));
      c.require(std::fabs(mb.det_g - triple * triple) <=
                    1e-12 * std::max(1.0, std::fabs(mb.det_g)),
                "det g != (triple product)^2");
    }

    // Circular cross-section limit: tabulated entries with the R_s^2 term.
    TubeConfig cfg;
    cfg.length = kTwoPi;
    cfg.kappa0 = 0.5;
    const ShapeFunction circ = ShapeFunction::separable(1.0, 0.2, 1, cfg.length);
    for (double s : {0.3, 2.0, 4.4})
      for (double phi : {0.0, 1.1, 2.7, 5.3}) {
        const ShapePartials p = circ.at(s, 0.8, phi);
        const MetricBundle mb = metric_from_triad(basis_triad(circ, cfg, s, 0.8, phi));
        const double K = 1.0 - p.R * cfg.kappa0 * std::cos(phi);
        c.require(std::fabs(mb.g(0, 0) - (K * K + p.R_s * p.R_s)) < 1e-14,
                  "circular-section g11");
        c.require(std::fabs(mb.g(0, 1) - p.R_chi * p.R_s) < 1e-14,
                  "circular-section g12");
        c.require(std::fabs(mb.g(0, 2)) < 1e-14, "circular-section g13");
        c.require(std::fabs(mb.g(1, 1) - p.R_chi * p.R_chi) < 1e-14,
                  "circular-section g22");
        c.require(std::fabs(mb.g(1, 2)) < 1e-14, "circular-section g23");
        c.require(std::fabs(mb.g(2, 2) - p.R * p.R) < 1e-14, "circular-section g33");
      }

    // Straight-tube limit against the orthogonal coefficients (1, r^2, K^2).
    TubeConfig bent;
    bent.length = kTwoPi;
    bent.kappa0 = 0.3;
    const ShapeFunction ident = ShapeFunction::constant(1.0);
    for (double chi : {0.2, 0.6, 1.0})
      for (double phi : {0.4, 2.2, 4.0}) {
        const MetricBundle mb =
            metric_from_triad(basis_triad(ident, bent, 1.0, chi, phi));
        const Mat3 ortho = orthogonal_limit_metric(chi, phi, 1.0, bent.kappa0);
        c.require(std::fabs(mb.g(1, 1) - ortho(0, 0)) < 1e-14, "limit: radial");
        c.require(std::fabs(mb.g(2, 2) - ortho(1, 1)) < 1e-14, "limit: angular");
        c.require(std::fabs(mb.g(0, 0) - ortho(2, 2)) < 1e-14, "limit: axial");
      }
  });

  // 3. Tabulated-matrix discrepancy report.
  run(3, "tabulated metric matrix: clean orthogonal limit, flagged twisted entries",
      5.0, [](Criterion& c) {
        const ShapeFunction ident = ShapeFunction::constant(1.0);
        TubeConfig straight;
        straight.length = kTwoPi;
        SampleGrid grid;
        for (const auto& row : metric_consistency_report(ident, straight, grid))
          if (row.entry.size() == 3)
            c.require(row.max_abs_dev < 1e-15,
                      "orthogonal limit deviates in " + row.entry);

        TubeConfig helical;
        helical.kappa0 = 0.5;
        helical.tau0 = 0.5;
        helical.length = kTwoPi * std::sqrt(2.0);
        helical.linking = 2;
        const ShapeFunction twisted =
            ShapeFunction::modulated(0.6, 0.15, 1, helical.length, 0.2);
        SampleGrid hgrid;
        hgrid.s_hi = helical.length;
        bool saw13 = false, saw31 = false, saw32 = false;
        for (const auto& row : metric_consistency_report(twisted, helical, hgrid)) {
          if (row.entry == "g13") saw13 = row.max_abs_dev > 1e-6;
          if (row.entry == "g31") saw31 = row.max_abs_dev > 1e-6;
          if (row.entry == "g32") saw32 = row.max_abs_dev > 1e-6;
          if (row.entry == "g22")
            c.require(row.max_abs_dev < 1e-14, "g22 should match exactly");
        }
        c.require(saw13, "g13 inconsistency not flagged");
        c.require(saw31, "g31 inconsistency not flagged");
        c.require(saw32, "g32 inconsistency not flagged");
      });

  // 4. Rotation-coefficient suite.
  run(4, "rotation coefficients: antisymmetry, probes, coupling, field ratio", 5.0,
      [](Criterion& c) {
        std::mt19937 rng(404);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int k = 0; k < 100; ++k) {
          const double kap = u(rng), tau = u(rng);
          const Mat3 m = frenet_rotation_matrix(kap, tau);
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              c.require(m(i, j) == -m(j, i), "frame rotation not antisymmetric");
          const FrenetRrcEntries e = frenet_rrc(kap, tau);
          c.require(e.nss == -e.ssn, "quoted curvature pair not antisymmetric");
        }

        const Vec3 n_probe{0, 1, 0}, t_probe{1, 0, 0};
        for (int k = 0; k < 200; ++k) {
          const Draw d = random_valid_draw(rng);
          const int i = static_cast<int>(rng() % 3);
          std::normal_distribution<double> gauss;
          Vec3 probe{gauss(rng), gauss(rng), gauss(rng)};
          probe = probe.normalized();
          const double analytic = triad_rrc(d.shape, d.cfg, d.s, d.chi, d.phi, probe, i);
          const double fd =
              triad_rrc_fd(d.shape, d.cfg, d.s, d.chi, d.phi, probe, i, 1e-3);
          c.require(std::fabs(analytic - fd) < 1e-6 * (1.0 + std::fabs(analytic)),
                    "analytic vs finite-difference probe");
        }

        for (int k = 0; k < 100; ++k) {
          const Draw d = random_valid_draw(rng);
          const ShapePartials p = d.shape.at(d.s, d.chi, d.phi);
          const double theta = theta_from_twist(d.phi, d.s, d.cfg);
          const double expected = -p.R_chi * d.cfg.kappa0 * std::cos(theta);
          c.require(std::fabs(triad_rrc(d.shape, d.cfg, d.s, d.chi, d.phi, t_probe, 1) -
                              expected) < 1e-10,
                    "t . d(e2)/ds closed form");
          const double g132 = gamma_132(d.shape, d.cfg, d.s, d.chi, d.phi);
          if (std::fabs(p.R_s) < 1e-15) {
            // Axially uniform shape: the closed form is the exact derivative.
            const TriadDerivs td =
                triad_derivatives(d.shape, d.cfg, d.s, d.chi, d.phi);
            c.require(std::fabs(td.lowered(2, 0, 1) - g132) <
                          1e-12 * (1.0 + std::fabs(g132)),
                      "coupling coefficient vs direct derivative");
          }
        }

        for (int k = 0; k < 100; ++k) {
          const Draw d = random_valid_draw(rng);
          if (std::fabs(d.cfg.effective_torsion()) < 1e-3) continue;
          const UnstretchRatio r = unstretch_ratio(d.shape, d.cfg, d.s, d.chi, d.phi);
          c.require(std::fabs(r.ratio_B1_over_B3 * r.gamma112 + r.gamma132) <
                        1e-12 * (1.0 + std::fabs(r.gamma132)),
                    "unstretching constraint residual");
        }

        TubeConfig degen;
        degen.length = kTwoPi;
        degen.tau0 = 0.0;
        bool threw = false;
        try {
          unstretch_ratio(ShapeFunction::constant(1.0), degen, 0.0, 1.0, 0.0);
        } catch (const degenerate_torsion_error&) {
          threw = true;
        }
        c.require(threw, "vanishing effective torsion must raise the no-dynamo error");
      });

  // 5. Energy quadrature.
  run(5, "energy quadrature: analytic volumes, rule agreement, marginal drift", 10.0,
      [](Criterion& c) {
        QuadratureSpec q64;
        q64.n_s = q64.n_chi = q64.n_phi = 64;
        q64.workers = env_worker_count();
        TubeConfig cfg;
        cfg.length = 1.0;
        const ShapeFunction shape = ShapeFunction::constant(1.0);
        const double V = surface_volume(shape, cfg, 1.0, q64);
        c.require(std::fabs(V - kPi) < 1e-8, "V(1) != pi");
        const double M = knot_energy(shape, cfg, 0.0, nullptr, q64);
        c.require(std::fabs(M - kPi / 4.0) < 1e-8, "M(b=0) != pi/4");

        TubeConfig helical;
        helical.length = kTwoPi * std::sqrt(2.0);
        helical.kappa0 = 0.5;
        helical.tau0 = 0.5;
        helical.linking = 2;
        const ShapeFunction smooth =
            ShapeFunction::modulated(0.6, 0.15, 1, helical.length, 0.2);
        QuadratureSpec qs = q64, qg = q64;
        qs.n_s = qs.n_chi = qs.n_phi = 32;
        qg = qs;
        qg.rule = QuadRule::gauss_legendre;
        const double vs = surface_volume(smooth, helical, 1.0, qs);
        const double vg = surface_volume(smooth, helical, 1.0, qg);
        c.require(std::fabs(vs - vg) < 1e-7 * std::max(1.0, std::fabs(vs)),
                  "Simpson vs Gauss-Legendre volume");
        const double ms = knot_energy(smooth, helical, 0.5, nullptr, qs);
        const double mg = knot_energy(smooth, helical, 0.5, nullptr, qg);
        c.require(std::fabs(ms - mg) < 1e-7 * std::max(1.0, std::fabs(ms)),
                  "Simpson vs Gauss-Legendre energy");

        TubeConfig marg;
        marg.length = kTwoPi;
        marg.kappa0 = 0.3;
        marg.tau0 = 0.4;
        QuadratureSpec qm;
        qm.n_s = qm.n_chi = qm.n_phi = 16;
        const double times[] = {0.0, 1.0, 2.0, 4.0};
        const MarginalCheck mc =
            marginal_energy_check(ShapeFunction::constant(0.8), marg, qm, times);
        c.require(mc.max_relative_drift == 0.0, "marginal energy drifted");
      });

  // 6. Dynamo suite.
  run(6, "dynamo: exact field residual, time scaling, shrinking radius, reports",
      5.0, [](Criterion& c) {
        DynamoParams p;
        p.growth_rate = 0.5;
        p.v1 = 1.0;
        p.v3 = 1.0;
        p.kappa0 = 0.5;
        p.A0 = -0.1;
        p.R0 = 1.0;
        const double grid[] = {0.0, 2.0, 5.0, 8.0};
        const RadiusProfile prof = radius_profile(p, grid);

        const FieldSolution exact = field_solution(p, prof, FieldMode::exact);
        for (double s = 0.25; s < 8.0; s += 0.25)
          c.require(std::fabs(exact.residual_fd(s, 0.4)) < 1e-10,
                    "exact-mode residual >= 1e-10");

        for (const FieldMode mode : {FieldMode::exact, FieldMode::printed}) {
          const FieldSolution f = field_solution(p, prof, mode);
          for (double s : {0.5, 3.0, 7.0})
            for (double dt : {0.3, 1.7}) {
              const double lhs = f.B3(s, 2.0 + dt);
              const double rhs = std::exp(p.growth_rate * dt) * f.B3(s, 2.0);
              c.require(std::fabs(lhs - rhs) <= 1e-14 * std::fabs(rhs),
                        "time scaling not exact");
            }
        }

        // Radius profile vs an independent RK4 integration of the reduced ODE.
        {
          double R = p.R0, Rs = p.A0;
          const double cc = -p.growth_rate / (2.0 * p.v3);
          const double h = 8.0 / 8000;
          double prev = prof.R(0.0);
          for (int k = 0; k < 8000; ++k) {
            const double k1R = Rs, k1V = cc * Rs;
            const double k2R = Rs + 0.5 * h * k1V, k2V = cc * (Rs + 0.5 * h * k1V);
            const double k3R = Rs + 0.5 * h * k2V, k3V = cc * (Rs + 0.5 * h * k2V);
            const double k4R = Rs + h * k3V, k4V = cc * (Rs + h * k3V);
            R += h / 6.0 * (k1R + 2 * k2R + 2 * k3R + k4R);
            Rs += h / 6.0 * (k1V + 2 * k2V + 2 * k3V + k4V);
            const double s = (k + 1) * h;
            if ((k + 1) % 1000 == 0) {
              c.require(std::fabs(prof.R(s) - R) < 1e-12, "radius vs RK4 oracle");
              c.require(std::fabs(prof.R_s(s) - Rs) < 1e-12, "slope vs RK4 oracle");
            }
            const double rr = prof.R(s);
            c.require(rr < prev && rr > prof.R_inf,
                      "radius not strictly decreasing toward the limit");
            prev = rr;
          }
        }

        // Constant-radius limit of the field.
        DynamoParams pc = p;
        pc.A0 = 0.0;
        const RadiusProfile flat = radius_profile(pc, grid);
        for (const FieldMode mode : {FieldMode::exact, FieldMode::printed}) {
          const FieldSolution f = field_solution(pc, flat, mode);
          for (double s : {0.4, 2.2, 6.0}) {
            const double ref = pc.B0 * std::exp(pc.growth_rate * (1.0 - pc.R0 * s / pc.v1));
            c.require(std::fabs(f.B3(s, 1.0) - ref) <= 1e-13 * std::fabs(ref),
                      "constant-radius field form");
          }
        }

        // Discrepancy reports: quoted-field residual identity and rate factor.
        const FieldSolution quoted = field_solution(p, prof, FieldMode::printed);
        for (double s : {0.5, 2.5, 6.5}) {
          const double qr = quoted.residual_fd(s, 0.0);
          c.require(std::fabs(qr - prof.R_s(s) * quoted.B3(s, 0.0)) < 1e-8,
                    "quoted-mode residual != R_s B3");
        }
        c.require(std::fabs(prof.decay_rate_quoted / prof.decay_rate - 2.0) < 1e-14,
                  "decay-rate factor != 2 at v1 = v3");
      });

  // 7. Curl identity on a periodic grid.
  run(7, "advective curl identity: accuracy and convergence order", 10.0,
      [](Criterion& c) {
        std::mt19937 rng(707);
        std::uniform_real_distribution<double> amp(5e-4, 1.6e-3);
        const double a[3] = {amp(rng), amp(rng), amp(rng)};
        const double b[3] = {amp(rng), amp(rng), amp(rng)};
        auto v = [&](const Vec3& x) {
          const double u1 = a[0] * std::sin(x.x + x.y),
                       u2 = a[1] * std::cos(x.y + x.z),
                       u3 = a[2] * std::sin(2.0 * (x.z + x.x));
          return Vec3{u1 - u3, -u1 + u2, -u2 + u3};
        };
        auto B = [&](const Vec3& x) {
          const double u1 = b[0] * std::cos(x.x + x.y + 0.3),
                       u2 = b[1] * std::sin(2.0 * (x.y + x.z) + 1.1),
                       u3 = b[2] * std::cos(x.z + x.x + 2.0);
          return Vec3{u1 - u3, -u1 + u2, -u2 + u3};
        };
        const int workers = env_worker_count();
        const CurlCheckResult r32 = curl_advective_identity_check(v, B, 32, true, workers);
        c.require(r32.max_dev < 1e-6, "deviation >= 1e-6 at 32^3");
        const CurlCheckResult r64 = curl_advective_identity_check(v, B, 64, true, workers);
        const double order = std::log2(r32.max_dev / r64.max_dev);
        c.require(order >= 1.8, "convergence order " + std::to_string(order) + " < 1.8");
      });

  // 8. Determinism of the validate pipeline across worker counts.
  run(8, "validate output is byte-identical for 1 and 8 workers", 0.0,
      [&cli_path](Criterion& c) {
        const fs::path dir = fs::temp_directory_path() / "fluxknot_acceptance";
        fs::create_directories(dir);
        const fs::path out1 = dir / "validate_w1.json";
        const fs::path out8 = dir / "validate_w8.json";
        const std::string cmd1 = "FLUXKNOT_THREADS=1 " + cli_path + " validate --out " +
                                 out1.string() + " >/dev/null 2>&1";
        const std::string cmd8 = "FLUXKNOT_THREADS=8 " + cli_path + " validate --out " +
                                 out8.string() + " >/dev/null 2>&1";
        c.require(std::system(cmd1.c_str()) == 0, "validate run (1 worker) failed");
        c.require(std::system(cmd8.c_str()) == 0, "validate run (8 workers) failed");
        const std::string b1 = slurp(out1), b8 = slurp(out8);
        c.require(!b1.empty() && b1 == b8, "outputs differ between worker counts");
      });

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}

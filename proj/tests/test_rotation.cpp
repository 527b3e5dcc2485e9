#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fluxknot/rotation.hpp"

using namespace fluxknot;

namespace {

struct Draw {
  ShapeFunction shape;
  TubeConfig cfg;
  double s, chi, phi;
};

Draw random_draw(std::mt19937& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    TubeConfig cfg;
    cfg.length = 5.0 + 6.0 * u01(rng);
    cfg.linking = static_cast<int>(u01(rng) * 5.0) - 2;
    cfg.kappa0 = 0.8 * u01(rng);
    cfg.tau0 = 0.8 * u01(rng);
    ShapeFunction shape = ShapeFunction::modulated(0.4 + 0.5 * u01(rng),
                                                   0.25 * u01(rng), 1, cfg.length,
                                                   0.25 * u01(rng));
    const double s = cfg.length * u01(rng);
    const double chi = 0.2 + 0.8 * u01(rng);
    const double phi = kTwoPi * u01(rng);
    if (basis_triad(shape, cfg, s, chi, phi).K > 0.1) return {shape, cfg, s, chi, phi};
  }
}

Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    if (v.norm() > 0.1) return v.normalized();
  }
}

}  // namespace

TEST_CASE("Frenet-frame entries as tabulated") {
  const FrenetRrcEntries flat = frenet_rrc(0.0, 0.0);
  CHECK(flat.nss == 0.0);
  CHECK(flat.nsb == 0.0);
  CHECK(flat.ssn == 0.0);
  CHECK(flat.bsn == 0.0);

  const FrenetRrcEntries h = frenet_rrc(0.5, 0.5);
  CHECK(h.nss == 0.5);
  CHECK(h.nsb == -0.5);
  CHECK(h.ssn == -0.5);
  CHECK(h.bsn == -0.5);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double kap = u(rng), tau = u(rng);
    const FrenetRrcEntries e = frenet_rrc(kap, tau);
    CHECK(e.nss == -e.ssn);  // the curvature pair is antisymmetric as quoted
    // The quoted bsn entry breaks the antisymmetry the computed table obeys.
    CHECK(tabulated_frenet_discrepancy(tau) ==
          doctest::Approx(std::fabs(e.nsb + e.bsn)).epsilon(1e-15));
  }
}

TEST_CASE("Frenet rotation matrix is antisymmetric and flat iff kappa = tau = 0") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double kap = u(rng), tau = u(rng);
    const Mat3 m = frenet_rotation_matrix(kap, tau);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(m(i, j) == -m(j, i));
    double sum = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sum += std::fabs(m(i, j));
    CHECK((sum == 0.0) == (kap == 0.0 && tau == 0.0));
  }
}

TEST_CASE("t . d(e2)/ds = -R_chi kappa cos(theta)") {
  TubeConfig cfg;
  cfg.kappa0 = 0.5;
  cfg.tau0 = 0.0;
  cfg.length = kTwoPi;
  cfg.linking = 0;
  const ShapeFunction shape = ShapeFunction::constant(1.0);
  const Vec3 t_probe{1, 0, 0};
  // R_chi = 1, kappa = 0.5, theta = 0.
  CHECK(triad_rrc(shape, cfg, 0.0, 1.0, 0.0, t_probe, 1) ==
        doctest::Approx(-0.5).epsilon(1e-12));

  std::mt19937 rng(17);
  for (int k = 0; k < 50; ++k) {
    const Draw d = random_draw(rng);
    const ShapePartials p = d.shape.at(d.s, d.chi, d.phi);
    const double theta = theta_from_twist(d.phi, d.s, d.cfg);
    const double expected = -p.R_chi * d.cfg.kappa0 * std::cos(theta);
    CHECK(triad_rrc(d.shape, d.cfg, d.s, d.chi, d.phi, t_probe, 1) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("straight untwisted constant tube has no s-derivatives") {
  TubeConfig cfg;
  cfg.length = kTwoPi;
  const ShapeFunction shape = ShapeFunction::constant(1.0);
  const TriadDerivs td = triad_derivatives(shape, cfg, 1.0, 0.6, 2.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(td.lowered(0, i, j) == 0.0);
}

TEST_CASE("analytic triad derivatives match the finite-difference probe") {
  std::mt19937 rng(2024);
  for (int k = 0; k < 200; ++k) {
    const Draw d = random_draw(rng);
    const Vec3 probe = random_unit(rng);
    const int i = static_cast<int>(rng() % 3);
    const double analytic = triad_rrc(d.shape, d.cfg, d.s, d.chi, d.phi, probe, i);
    const double fd = triad_rrc_fd(d.shape, d.cfg, d.s, d.chi, d.phi, probe, i, 1e-3);
    CHECK(analytic == doctest::Approx(fd).epsilon(1e-6));
    CHECK(std::fabs(analytic - fd) < 1e-6 * (1.0 + std::fabs(analytic)));
  }
}

TEST_CASE("quoted frame-projected form reduces to kappa0 when R_s = tau* = 0") {
  // Nonzero linking number with tau0 = 2 pi N / L, so tau* = 0 without the
  // torsion itself vanishing.
  TubeConfig cfg;
  cfg.kappa0 = 0.5;
  cfg.tau0 = 0.5;
  cfg.linking = 2;
  cfg.length = 8.0 * kPi;
  REQUIRE(std::fabs(cfg.effective_torsion()) < 1e-15);
  const ShapeFunction shape = ShapeFunction::constant(1.0);
  const TabulatedRrcForms f = tabulated_rrc_forms(shape, cfg, 1.0, 1.0, 0.7);
  CHECK(f.n_ds_e1 == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("gamma components") {
  // R = 1, tau* = 0.5, theta = pi/2: gamma_12 = -0.5, gamma_13 = 0.
  TubeConfig cfg;
  cfg.tau0 = 0.5;
  cfg.length = kTwoPi;
  const ShapeFunction shape = ShapeFunction::constant(1.0);
  const Mat3 g = gamma_components(shape, cfg, 0.0, 1.0, kPi / 2.0);
  CHECK(g(0, 1) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::fabs(g(0, 2)) < 1e-14);

  // R_chi = 1, theta = 0: gamma_22 = 1, gamma_23 = 0.
  const Mat3 g0 = gamma_components(shape, cfg, 0.0, 1.0, 0.0);
  CHECK(g0(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(g0(1, 2)) < 1e-15);

  // Rows reproduce the triad built independently.
  std::mt19937 rng(31);
  for (int k = 0; k < 100; ++k) {
    const Draw d = random_draw(rng);
    const Mat3 gam = gamma_components(d.shape, d.cfg, d.s, d.chi, d.phi);
    const Triad tr = basis_triad(d.shape, d.cfg, d.s, d.chi, d.phi);
    const Vec3 e[3] = {tr.e1, tr.e2, tr.e3};
    for (int i = 0; i < 3; ++i) CHECK((gam.row(i) - e[i]).norm() < 1e-14);
  }
}

TEST_CASE("axial coefficient: closed form vs derivative form") {
  // K = 1 (kappa = 0), tau* = 0.5, R = 2 -> closed form 0.5 (1 + 1) = 1.
  TubeConfig cfg;
  cfg.tau0 = 0.5;
  cfg.length = kTwoPi;
  const ShapeFunction shape = ShapeFunction::constant(2.0);
  const Gamma112 g = gamma_112(shape, cfg, 0.0, 1.0, 1.3);
  CHECK(g.closed_form == doctest::Approx(1.0).epsilon(1e-14));

  // Constant tube without twist: the derivative form is the s-derivative of
  // an s-independent quantity, i.e. zero, while the closed form is not.
  CHECK(std::fabs(g.derivative_form) < 1e-15);
  CHECK(g.difference == doctest::Approx(1.0).epsilon(1e-14));

  // Flat untwisted limit.
  TubeConfig flat;
  flat.length = kTwoPi;
  const Gamma112 g0 = gamma_112(ShapeFunction::constant(1.0), flat, 0.0, 0.8, 0.4);
  CHECK(g0.closed_form == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("poloidal-toroidal coupling coefficient") {
  TubeConfig cfg;
  cfg.tau0 = 0.25;
  cfg.length = kTwoPi;
  const ShapeFunction shape = ShapeFunction::linear_chi(1.0, 1.0);  // R = 1 + chi
  CHECK(gamma_132(shape, cfg, 0.0, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));

  TubeConfig zero = cfg;
  zero.tau0 = 0.0;
  CHECK(gamma_132(shape, zero, 0.0, 1.0, 0.0) == 0.0);

  TubeConfig plus = cfg;
  plus.tau0 = 0.0;
  plus.linking = 2;
  TubeConfig minus = plus;
  minus.linking = -2;
  CHECK(gamma_132(shape, plus, 1.0, 0.5, 1.0) ==
        doctest::Approx(-gamma_132(shape, minus, 1.0, 0.5, 1.0)).epsilon(1e-14));
}

TEST_CASE("coupling coefficient equals the direct derivative when R_s = 0") {
  // e1 . d(e2)/dphi = R_s R_chiphi + R R_chi tau*, so the closed form is the
  // exact derivative for axially uniform shapes.
  std::mt19937 rng(91);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    TubeConfig cfg;
    cfg.length = 5.0 + 5.0 * u01(rng);
    cfg.linking = static_cast<int>(u01(rng) * 5.0) - 2;
    cfg.kappa0 = 0.5 * u01(rng);
    cfg.tau0 = u01(rng);
    const ShapeFunction shape =
        u01(rng) < 0.5 ? ShapeFunction::constant(0.5 + u01(rng))
                       : ShapeFunction::linear_chi(0.2 + 0.3 * u01(rng),
                                                   0.4 + 0.6 * u01(rng));
    const double s = cfg.length * u01(rng);
    const double chi = 0.1 + 0.9 * u01(rng);
    const double phi = kTwoPi * u01(rng);
    const TriadDerivs td = triad_derivatives(shape, cfg, s, chi, phi);
    const double direct = td.lowered(2, 0, 1);
    const double closed = gamma_132(shape, cfg, s, chi, phi);
    CHECK(std::fabs(direct - closed) < 1e-12 * (1.0 + std::fabs(closed)));
  }
}

TEST_CASE("stretching term: all-zero table gives zero for any field and flow") {
  // The flat hypothetical: every frame derivative vanishes. (A physical tube
  // always keeps nonzero phi-derivatives; the zero table is synthetic.)
  TriadDerivs td{};
  td.gamma = Mat3::identity();
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const FieldState f{u(rng), u(rng)};
    const Vec3 v{u(rng), u(rng), u(rng)};
    const StretchingTerm st = stretching_term(f, v, td);
    CHECK(st.frenet_projections.norm() == 0.0);
    CHECK(st.triad_coeffs.norm() == 0.0);
  }
}

TEST_CASE("stretching term: constrained field zeroes the coupled projection") {
  // Synthetic table with exactly one nonzero entry per derivative slot:
  // e1 . d(e2)/ds = c1 and e1 . d(e2)/dphi = c3. A field with
  // B1 c1 + B3 c3 = 0 then produces no component along e1 for the
  // surface-normal flow direction.
  TriadDerivs td{};
  td.gamma = Mat3::identity();
  const double c1 = 0.7, c3 = 0.4;
  td.d[0](1, 0) = c1;
  td.d[2](1, 0) = c3;
  const FieldState f{c3, -c1};
  const StretchingTerm st = stretching_term(f, Vec3{0, 1, 0}, td);
  CHECK(std::fabs(st.frenet_projections.x) < 1e-15);
  CHECK(st.frenet_projections.norm() < 1e-15);
}

TEST_CASE("stretching term: single-entry contraction picks out kappa0") {
  TubeConfig cfg;
  cfg.kappa0 = 0.5;
  cfg.length = kTwoPi;
  const ShapeFunction shape = ShapeFunction::constant(1.0);
  // theta = pi/2 makes K = 1 and leaves n . d(e1)/ds = kappa0 as the only
  // entry the contraction with B = (1, 0, 0), v = (1, 0, 0) can reach.
  const TriadDerivs td = triad_derivatives(shape, cfg, 0.0, 1.0, kPi / 2.0);
  const StretchingTerm st = stretching_term(FieldState{1.0, 0.0}, Vec3{1, 0, 0}, td);
  CHECK(st.frenet_projections.y == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("stretching term is bilinear in field and flow") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 50; ++k) {
    const Draw d = random_draw(rng);
    const TriadDerivs td = triad_derivatives(d.shape, d.cfg, d.s, d.chi, d.phi);
    const FieldState fa{u(rng), u(rng)}, fb{u(rng), u(rng)};
    const Vec3 va{u(rng), u(rng), u(rng)}, vb{u(rng), u(rng), u(rng)};
    const double alpha = u(rng), beta = u(rng);

    const FieldState mix{alpha * fa.B1 + beta * fb.B1, alpha * fa.B3 + beta * fb.B3};
    const Vec3 lhs_f = stretching_term(mix, va, td).frenet_projections;
    const Vec3 rhs_f = stretching_term(fa, va, td).frenet_projections * alpha +
                       stretching_term(fb, va, td).frenet_projections * beta;
    CHECK((lhs_f - rhs_f).norm() < 1e-12);

    const Vec3 vmix = va * alpha + vb * beta;
    const Vec3 lhs_v = stretching_term(fa, vmix, td).frenet_projections;
    const Vec3 rhs_v = stretching_term(fa, va, td).frenet_projections * alpha +
                       stretching_term(fa, vb, td).frenet_projections * beta;
    CHECK((lhs_v - rhs_v).norm() < 1e-12);
  }
}

TEST_CASE("unstretching field ratio") {
  // K = 1, tau* = 0.1, R = 1, R_chi = 1 -> b = (1 + 0.01)/(2 * 0.1) = 5.05.
  TubeConfig cfg;
  cfg.tau0 = 0.1;
  cfg.length = kTwoPi;
  const ShapeFunction shape = ShapeFunction::constant(1.0);
  const UnstretchRatio r = unstretch_ratio(shape, cfg, 0.0, 1.0, kPi / 2.0);
  CHECK(r.b == doctest::Approx(5.05).epsilon(1e-13));
  CHECK(r.thin_tube_ratio == doctest::Approx(-0.2).epsilon(1e-13));

  // The returned field ratio solves the constraint.
  CHECK(std::fabs(r.ratio_B1_over_B3 * r.gamma112 + r.gamma132) < 1e-15);

  // Vanishing effective torsion is the no-dynamo degenerate case.
  TubeConfig zero = cfg;
  zero.tau0 = 0.0;
  CHECK_THROWS_AS(unstretch_ratio(shape, zero, 0.0, 1.0, 0.0),
                  degenerate_torsion_error);

  // Scaling R_chi by c leaves the numerator alone and scales the denominator.
  const ShapeFunction doubled = ShapeFunction::constant(2.0);
  const UnstretchRatio r2 = unstretch_ratio(doubled, cfg, 0.0, 0.5, kPi / 2.0);
  CHECK(r2.b == doctest::Approx(r.b / 2.0).epsilon(1e-12));

  std::mt19937 rng(55);
  for (int k = 0; k < 100; ++k) {
    const Draw d = random_draw(rng);
    if (std::fabs(d.cfg.effective_torsion()) < 1e-3) continue;
    const UnstretchRatio rr = unstretch_ratio(d.shape, d.cfg, d.s, d.chi, d.phi);
    CHECK(std::fabs(rr.ratio_B1_over_B3 * rr.gamma112 + rr.gamma132) <
          1e-12 * (1.0 + std::fabs(rr.gamma132)));
  }
}

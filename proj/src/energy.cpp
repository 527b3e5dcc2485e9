#include "fluxknot/energy.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "fluxknot/errors.hpp"
#include "fluxknot/rotation.hpp"

namespace fluxknot {

namespace {

// Wraps an integrand over the metric, collecting validity violations instead
// of racing to throw from worker threads.
class MetricIntegrand {
 public:
  MetricIntegrand(const ShapeFunction& shape, const TubeConfig& cfg)
      : shape_(shape), cfg_(cfg) {}

  MetricBundle bundle(double s, double chi, double phi) const {
    const MetricBundle mb = metric_from_triad(basis_triad(shape_, cfg_, s, chi, phi));
    if (!mb.valid) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (bad_points_.size() < 8) bad_points_.push_back({s, chi, phi});
      ++bad_count_;
    }
    return mb;
  }

  void throw_if_invalid() const {
    if (bad_count_ == 0) return;
    std::ostringstream msg;
    msg << "invalid metric region: validity condition fails at " << bad_count_
        << " grid point(s):";
    for (const auto& p : bad_points_)
      msg << " (s=" << p[0] << ", chi=" << p[1] << ", phi=" << p[2] << ")";
    if (bad_count_ > static_cast<long>(bad_points_.size())) msg << " ...";
    throw invalid_metric_error(msg.str());
  }

 private:
  const ShapeFunction& shape_;
  const TubeConfig& cfg_;
  mutable std::mutex mutex_;
  mutable std::vector<std::array<double, 3>> bad_points_;
  mutable long bad_count_ = 0;
};

}  // namespace

double surface_volume(const ShapeFunction& shape, const TubeConfig& cfg, double chi0,
                      const QuadratureSpec& quad) {
  cfg.validate();
  if (chi0 < 0.0) throw config_error("surface_volume: chi0 must be >= 0");
  if (chi0 == 0.0) return 0.0;
  MetricIntegrand mi(shape, cfg);
  const double v = tensor_integrate(
      quad, cfg.length, 0.0, chi0,
      [&](double s, double chi, double phi) { return mi.bundle(s, chi, phi).sqrt_g; });
  mi.throw_if_invalid();
  return v;
}

double knot_energy(const ShapeFunction& shape, const TubeConfig& cfg, double b,
                   const std::function<double(double)>& B3_of_s,
                   const QuadratureSpec& quad) {
  cfg.validate();
  if (!std::isfinite(b)) throw config_error("knot_energy: ratio b must be finite");
  MetricIntegrand mi(shape, cfg);
  const double m = tensor_integrate(
      quad, cfg.length, 0.0, 1.0, [&](double s, double chi, double phi) {
        const MetricBundle mb = mi.bundle(s, chi, phi);
        const double B3 = B3_of_s ? B3_of_s(s) : 1.0;
        const double quadform =
            mb.g(0, 0) * b * b + mb.g(2, 2) - 2.0 * b * mb.g(0, 2);
        return 0.5 * mb.sqrt_g * quadform * B3 * B3;
      });
  mi.throw_if_invalid();
  return m;
}

MeanEnergy mean_energy(double V_T, double L, double V_chi, double B3_sq_mean,
                       EpsilonMode mode) {
  if (!(V_T > 0.0) || !(L > 0.0) || !(V_chi > 0.0) || B3_sq_mean < 0.0)
    throw config_error("mean_energy: inputs must be positive (B3^2 mean >= 0)");
  const double rho = V_T / (kPi * L * L * L);
  MeanEnergy me;
  me.mode = mode;
  me.epsilon = mode == EpsilonMode::cubed ? rho * rho * rho : std::cbrt(rho);
  me.value = 0.5 * me.epsilon * me.epsilon * me.epsilon * L * L * V_chi * B3_sq_mean;
  return me;
}

EnergyReport energy_report(const ShapeFunction& shape, const TubeConfig& cfg, double b,
                           const std::function<double(double)>& B3_of_s,
                           std::span<const double> levels, double B3_sq_mean,
                           EpsilonMode mode, const QuadratureSpec& quad) {
  EnergyReport rep;
  rep.M = knot_energy(shape, cfg, b, B3_of_s, quad);
  rep.V_T = surface_volume(shape, cfg, 1.0, quad);
  rep.V_levels.reserve(levels.size());
  for (double chi : levels)
    rep.V_levels.emplace_back(chi, surface_volume(shape, cfg, chi, quad));
  const MeanEnergy me = mean_energy(rep.V_T, cfg.length, rep.V_T, B3_sq_mean, mode);
  rep.mean_M = me.value;
  rep.epsilon = me.epsilon;
  rep.epsilon_mode = mode;
  return rep;
}

MarginalCheck marginal_energy_check(const ShapeFunction& shape, const TubeConfig& cfg,
                                    const QuadratureSpec& quad,
                                    std::span<const double> time_samples) {
  cfg.validate();
  // Unstretched tube only: probe the partials on a small grid.
  for (double s : {0.0, 0.37 * cfg.length, 0.81 * cfg.length})
    for (double phi : {0.0, 1.1, 2.9, 4.4}) {
      const ShapePartials p = shape.at(s, 0.7, phi);
      if (std::fabs(p.R_s) > 1e-12 || std::fabs(p.R_phi) > 1e-12)
        throw precondition_error(
            "marginal_energy_check: shape is stretched (R_s or R_phi nonzero); "
            "the check applies to constant cross-sections only");
    }

  MarginalCheck out;
  double b = 0.0;
  try {
    b = unstretch_ratio(shape, cfg, 0.0, 1.0, 0.0).ratio_B1_over_B3;
    b = -b;  // energy integrand uses b with B1 = -b B3
  } catch (const degenerate_torsion_error&) {
    // tau* = 0: the toroidal component vanishes, so b = 0 and the energy is
    // still time-independent.
    out.degenerate_ratio = true;
    b = 0.0;
  }

  out.energies.reserve(time_samples.size());
  for (size_t k = 0; k < time_samples.size(); ++k)
    out.energies.push_back(knot_energy(shape, cfg, b, nullptr, quad));

  double drift = 0.0;
  if (!out.energies.empty()) {
    const double m0 = out.energies.front();
    for (double m : out.energies)
      drift = std::max(drift, std::fabs(m - m0) / std::max(std::fabs(m0), 1e-300));
  }
  out.max_relative_drift = drift;
  out.constant = drift < 1e-10;
  return out;
}

}  // namespace fluxknot

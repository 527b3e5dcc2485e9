#pragma once
// Error hierarchy. The CLI maps config_error to exit status 2 and
// numeric_error (and derived) to exit status 3.

#include <stdexcept>
#include <string>

namespace fluxknot {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Curvature too small for the normal/binormal to be defined.
class inflection_error : public numeric_error {
 public:
  explicit inflection_error(double kappa_value)
      : numeric_error("inflection/straight segment: curvature " +
                      std::to_string(kappa_value) +
                      " is below 1e-12; normal and binormal are undefined"),
        kappa(kappa_value) {}
  double kappa;
};

class zero_speed_error : public numeric_error {
 public:
  explicit zero_speed_error(double where)
      : numeric_error("zero speed: curve is not regular near parameter " +
                      std::to_string(where)),
        location(where) {}
  double location;
};

// Vanishing effective torsion makes the tabulated field-ratio denominator zero:
// under the unstretching constraint the axial field component is forced to zero
// and no exponential amplification can occur.
class degenerate_torsion_error : public numeric_error {
 public:
  degenerate_torsion_error()
      : numeric_error(
            "degenerate: effective torsion is zero, toroidal component forced "
            "to zero under unstretching (no dynamo in this configuration)") {}
};

class invalid_metric_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

class unphysical_radius_error : public numeric_error {
 public:
  explicit unphysical_radius_error(double s)
      : numeric_error("unphysical shrink-through-zero: radius reaches zero near s = " +
                      std::to_string(s)),
        critical_s(s) {}
  double critical_s;
};

class precondition_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

class validity_boundary_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

}  // namespace fluxknot

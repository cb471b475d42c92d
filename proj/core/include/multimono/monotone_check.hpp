#pragma once

#include <string>
#include <vector>

#include "multimono/profile.hpp"

namespace multimono {

/// Geometric sampling grid; refined around profile breakpoints.
struct GridSpec {
  double t_min = 1e-4;
  double t_max = 1e4;
  double points_per_decade = 64;
  bool refine_breakpoints = true;
};

/// Grid points of `spec` clipped to the profile's domain, with extra points
/// at relative offsets 1e-2 ... 1e-9 on both sides of every breakpoint.
std::vector<double> sample_points(const Profile& p, const GridSpec& spec);

struct ComponentCertificate {
  std::string component;  // "re" or "im"
  int orientation = 1;
  std::vector<bool> per_order_sign_ok;
  std::vector<double> per_order_violation;
  double worst_violation = 0.0;
};

struct CertificateReport {
  std::string profile;
  int m = 0;
  int orientation = 1;  // of the first component
  std::vector<bool> per_order_sign_ok;
  std::vector<double> per_order_violation;  // normalized by sup |f^{(nu)}| on the grid
  double worst_violation = 0.0;
  bool passed = false;
  double tol = 0.0;
  GridSpec grid;
  std::size_t grid_points = 0;
  std::vector<ComponentCertificate> components;
  std::string certificate = "checked at resolution";
  std::string strictness;  // descriptive only
};

/// Checks orientation * (-1)^{m+nu+1} f^{(nu)}(t) >= -tol for nu = 0..m on the
/// grid, choosing the orientation with the smaller worst violation. Complex
/// profiles are checked per component. Violations are divided by the
/// order's sup |f^{(nu)}| on the grid.
CertificateReport sign_pattern_check(const Profile& p, int m, const GridSpec& grid = {},
                                     double tol = 1e-9);

struct DecayOrder {
  int nu = 0;
  double at_zero = 0.0;      // final |t^nu f^{(nu)}| toward 0, relative
  double at_infinity = 0.0;  // final |t^nu f^{(nu)}| toward inf, relative
  bool zero_ok = false;
  bool infinity_ok = false;
};

struct DecayReport {
  std::string profile;
  int m = 0;
  double t_small = 0.0;
  double t_large = 0.0;
  double tol = 0.0;
  std::vector<DecayOrder> orders;
  bool passed = false;
};

/// For 1 <= nu <= m, follows |t^nu f^{(nu)}(t)| / sup|f| along geometric
/// sequences toward t_small and t_large; a limit is numerically zero when the
/// final magnitude is below tol and the last steps are nonincreasing.
DecayReport decay_limits_check(const Profile& p, int m, double t_small = 1e-8,
                               double t_large = 1e8, double tol = 1e-5);

/// Smallest grid point from which f stays equal to f(t_max); +inf if there is
/// no such plateau. A plateau reached only through underflow (last differing
/// value below 1e-200) does not count.
double support_threshold(const Profile& p, int m, const GridSpec& grid = {});

/// Plateau thresholds of f^{(nu)} for nu = 0..m-1.
std::vector<double> support_thresholds(const Profile& p, int m, const GridSpec& grid = {});

}  // namespace multimono

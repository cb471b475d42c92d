#include "multimono/monotone_check.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multimono/errors.hpp"
#include "multimono/quadrature.hpp"

namespace multimono {
namespace {

void require_order(const Profile& p, int m, const char* op) {
  if (m < 0) throw ParameterError(std::string(op) + ": m must be nonnegative");
  if (m > p.max_order()) {
    std::ostringstream os;
    os << op << ": " << p.descriptor() << " supports derivatives up to order " << p.max_order()
       << ", need " << m;
    throw CapabilityError(os.str());
  }
}

ComponentCertificate certify_component(const std::vector<std::vector<double>>& v, int m,
                                       const std::string& name) {
  const int orders = static_cast<int>(v.size());
  std::vector<double> sup(orders, 0.0);
  for (int nu = 0; nu < orders; ++nu)
    for (double x : v[nu]) sup[nu] = std::max(sup[nu], std::abs(x));

  ComponentCertificate best;
  best.worst_violation = kInf;
  for (int orientation : {1, -1}) {
    ComponentCertificate c;
    c.component = name;
    c.orientation = orientation;
    for (int nu = 0; nu < orders; ++nu) {
      const double sign = orientation * (((m + nu + 1) % 2 == 0) ? 1.0 : -1.0);
      double worst = 0.0;
      if (sup[nu] > 0.0)
        for (double x : v[nu]) worst = std::max(worst, -sign * x / sup[nu]);
      c.per_order_violation.push_back(worst);
      c.worst_violation = std::max(c.worst_violation, worst);
    }
    if (c.worst_violation < best.worst_violation) best = c;
  }
  return best;
}

double plateau_start(const Profile& p, int nu, const std::vector<double>& t) {
  const std::size_t n = t.size();
  const Complex last = p.derivative(nu, t[n - 1]);
  std::size_t i = n - 1;
  while (i > 0 && p.derivative(nu, t[i - 1]) == last) --i;
  if (i == 0) return t[0];
  if (i >= n - 1) return kInf;
  const double step = std::abs(p.derivative(nu, t[i - 1]) - last);
  if (step < 1e-200) return kInf;
  return t[i];
}

}  // namespace

std::vector<double> sample_points(const Profile& p, const GridSpec& spec) {
  if (!(spec.t_min > 0.0) || !(spec.t_max > spec.t_min) || !(spec.points_per_decade > 0.0))
    throw ParameterError("GridSpec: need 0 < t_min < t_max and a positive density");
  const Domain dom = p.domain();
  const double lo = std::max(spec.t_min, dom.lo);
  const double hi = std::min(spec.t_max, dom.hi);
  if (!(hi > lo)) throw DomainError("sampling grid does not intersect the profile's domain");
  std::vector<double> t = geometric_grid(lo, hi, spec.points_per_decade);
  if (spec.refine_breakpoints) {
    for (double b : p.breakpoints()) {
      if (!(b > lo && b < hi)) continue;
      for (int k = 2; k <= 9; ++k) {
        const double e = std::pow(10.0, -k);
        t.push_back(b * (1.0 - e));
        t.push_back(b * (1.0 + e));
      }
      for (int j = -8; j <= 8; ++j)
        if (j != 0) t.push_back(b * (1.0 + 0.00625 * j));
    }
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  t.erase(std::remove_if(t.begin(), t.end(), [&](double x) { return x < lo || x > hi; }), t.end());
  return t;
}

CertificateReport sign_pattern_check(const Profile& p, int m, const GridSpec& grid, double tol) {
  require_order(p, m, "sign_pattern_check");
  if (!(tol > 0.0)) throw ParameterError("sign_pattern_check: tol must be positive");
  const auto t = sample_points(p, grid);
  if (t.size() < 64) throw ParameterError("sign_pattern_check: grid has fewer than 64 points");

  std::vector<std::vector<double>> re(m + 1, std::vector<double>(t.size()));
  std::vector<std::vector<double>> im(m + 1, std::vector<double>(t.size()));
  for (int nu = 0; nu <= m; ++nu)
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Complex v = p.derivative(nu, t[i]);
      re[nu][i] = v.real();
      im[nu][i] = v.imag();
    }

  CertificateReport r;
  r.profile = p.descriptor();
  r.m = m;
  r.tol = tol;
  r.grid = grid;
  r.grid_points = t.size();
  r.components.push_back(certify_component(re, m, "re"));
  if (p.is_complex()) r.components.push_back(certify_component(im, m, "im"));
  r.orientation = r.components.front().orientation;
  r.per_order_violation.assign(m + 1, 0.0);
  for (const auto& c : r.components) {
    for (int nu = 0; nu <= m; ++nu)
      r.per_order_violation[nu] = std::max(r.per_order_violation[nu], c.per_order_violation[nu]);
    r.worst_violation = std::max(r.worst_violation, c.worst_violation);
  }
  for (auto& c : r.components)
    for (double v : c.per_order_violation) c.per_order_sign_ok.push_back(v <= tol);
  for (double v : r.per_order_violation) r.per_order_sign_ok.push_back(v <= tol);
  r.passed = std::all_of(r.per_order_sign_ok.begin(), r.per_order_sign_ok.end(), [](bool b) { return b; });
  r.strictness = "strict inequality on (0, a) is not certified by sampling";
  return r;
}

DecayReport decay_limits_check(const Profile& p, int m, double t_small, double t_large, double tol) {
  require_order(p, m, "decay_limits_check");
  if (!(t_small > 0.0) || !(t_large > 1.0) || t_small >= 1.0)
    throw ParameterError("decay_limits_check: need 0 < t_small < 1 < t_large");
  const Domain dom = p.domain();
  const double lo = std::max(t_small, dom.lo);
  const double hi = std::min(t_large, dom.hi);

  double scale = 0.0;
  for (double x : geometric_grid(lo, hi, 8)) scale = std::max(scale, std::abs(p(x)));
  if (scale == 0.0) scale = 1.0;

  auto run = [&](int nu, double from, double to, double& final_value) {
    const auto seq = geometric_grid(std::min(from, to), std::max(from, to), 2);
    std::vector<double> r;
    for (double x : seq) r.push_back(std::abs(std::pow(x, nu) * p.derivative(nu, x)) / scale);
    if (from > to) std::reverse(r.begin(), r.end());
    final_value = r.back();
    if (final_value == 0.0) return true;
    if (!(final_value < tol)) return false;
    const std::size_t n = r.size();
    for (std::size_t k = n >= 3 ? n - 3 : 0; k + 1 < n; ++k)
      if (r[k + 1] > r[k] * (1.0 + 1e-9)) return false;
    return true;
  };

  DecayReport rep;
  rep.profile = p.descriptor();
  rep.m = m;
  rep.t_small = lo;
  rep.t_large = hi;
  rep.tol = tol;
  rep.passed = true;
  for (int nu = 1; nu <= m; ++nu) {
    DecayOrder o;
    o.nu = nu;
    o.zero_ok = lo < 0.1 ? run(nu, 0.1, lo, o.at_zero) : false;
    o.infinity_ok = hi > 10.0 ? run(nu, 10.0, hi, o.at_infinity) : false;
    rep.passed = rep.passed && o.zero_ok && o.infinity_ok;
    rep.orders.push_back(o);
  }
  return rep;
}

double support_threshold(const Profile& p, int m, const GridSpec& grid) {
  if (m < 0) throw ParameterError("support_threshold: m must be nonnegative");
  return plateau_start(p, 0, sample_points(p, grid));
}

std::vector<double> support_thresholds(const Profile& p, int m, const GridSpec& grid) {
  require_order(p, std::max(m - 1, 0), "support_thresholds");
  const auto t = sample_points(p, grid);
  std::vector<double> a;
  for (int nu = 0; nu < std::max(m, 1); ++nu) a.push_back(plateau_start(p, nu, t));
  return a;
}

}  // namespace multimono

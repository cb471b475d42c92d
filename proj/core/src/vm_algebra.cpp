#include "multimono/vm_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multimono/errors.hpp"

namespace multimono {
namespace {

double golden_max(const std::function<double(double)>& g, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 60 && (b - a) > 1e-12 * b; ++it) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + r * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - r * (b - a);
      g1 = g(x1);
    }
  }
  return std::max(g1, g2);
}

double sup_modulus(const Profile& p) {
  const auto t = sample_points(p, {1e-6, 1e6, 32, true});
  std::vector<double> v(t.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    v[i] = std::abs(p(t[i]));
    if (v[i] > v[best]) best = i;
  }
  double s = v[best];
  if (best > 0 && best + 1 < t.size() && !p.has_breakpoint_in(t[best - 1], t[best + 1]))
    s = std::max(s, golden_max([&](double x) { return std::abs(p(x)); }, t[best - 1], t[best + 1]));
  const Domain dom = p.domain();
  if (dom.lo == 0.0) s = std::max(s, std::abs(p.value_at_zero()));
  if (!dom.bounded()) {
    const double inf_val = std::abs(p.value_at_infinity());
    if (std::isfinite(inf_val)) s = std::max(s, inf_val);
  }
  return s;
}

double jump_variation(const Profile& p, int order, const std::function<double(double)>& weight) {
  const Domain dom = p.domain();
  double s = 0.0;
  for (double b : p.breakpoints()) {
    if (!(b > dom.lo && b < dom.hi)) continue;
    const Complex jump = p.derivative(order, b, Side::right) - p.derivative(order, b, Side::left);
    s += weight(b) * std::abs(jump);
  }
  return s;
}

class SteklovProfile final : public ProfileModel {
 public:
  SteklovProfile(Profile p, double h) : p_(std::move(p)), h_(h) {}

  Complex derivative(int order, double t, Side side) const override {
    const double h = h_;
    if (order >= 2) {
      const int k = order - 2;
      return (p_.derivative(k, t + 2 * h, side) - 2.0 * p_.derivative(k, t + h, side) +
              p_.derivative(k, t, side)) /
             (h * h);
    }
    std::vector<double> cuts;
    for (double b : p_.breakpoints()) cuts.push_back(b - t);
    if (order == 1) {
      for (double b : p_.breakpoints()) cuts.push_back(b - t - h);
      auto re = [&](double u) { return (p_(t + h + u) - p_(t + u)).real(); };
      auto im = [&](double u) { return (p_(t + h + u) - p_(t + u)).imag(); };
      return Complex(integrate(re, 0.0, h, cuts), p_.is_complex() ? integrate(im, 0.0, h, cuts) : 0.0) /
             (h * h);
    }
    cuts.push_back(h);
    auto kernel = [h](double s) { return std::min(s, 2 * h - s); };
    auto re = [&](double s) { return kernel(s) * p_(t + s).real(); };
    auto im = [&](double s) { return kernel(s) * p_(t + s).imag(); };
    return Complex(integrate(re, 0.0, 2 * h, cuts),
                   p_.is_complex() ? integrate(im, 0.0, 2 * h, cuts) : 0.0) /
           (h * h);
  }
  int max_order() const override { return p_.max_order() + 2; }
  bool is_complex() const override { return p_.is_complex(); }
  std::string descriptor() const override {
    std::ostringstream os;
    os << p_.descriptor() << ",steklov=" << h_;
    return os.str();
  }
  std::vector<double> breakpoints() const override {
    std::vector<double> out;
    for (double b : p_.breakpoints())
      for (double s : {b - 2 * h_, b - h_, b})
        if (s > 0.0) out.push_back(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  Domain domain() const override {
    const Domain d = p_.domain();
    return {d.lo, d.bounded() ? d.hi - 2 * h_ : kInf};
  }
  int accuracy_order() const override { return p_.accuracy_order(); }
  std::optional<Complex> value_at_infinity() const override {
    if (p_.domain().bounded()) return std::nullopt;
    return p_.value_at_infinity();
  }

 private:
  static double integrate(const std::function<double(double)>& g, double a, double b,
                          std::vector<double> cuts) {
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double lo = std::max(cuts[k], a), hi = std::min(cuts[k + 1], b);
      if (hi > lo) s += integrate_adaptive(g, lo, hi, 1e-15, 1e-12, 200).value;
    }
    return s;
  }

  Profile p_;
  double h_;
};

}  // namespace

VmNorm vm_norm(const Profile& p, int m, const QuadratureSpec& quad) {
  if (m < 0) throw ParameterError("vm_norm: m must be nonnegative");
  if (m + 1 > p.max_order()) {
    std::ostringstream os;
    os << "vm_norm: " << p.descriptor() << " supports derivatives up to order " << p.max_order()
       << ", need " << m + 1;
    throw CapabilityError(os.str());
  }
  VmNorm out;
  out.m = m;
  out.sup_part = sup_modulus(p);

  const Domain dom = p.domain();
  const auto bps = p.breakpoints();
  auto density = [&](double t) { return std::pow(t, m) * std::abs(p.derivative(m + 1, t)); };
  const auto r = integrate_improper(density, dom.lo, dom.hi, bps, quad);
  out.jump_part = jump_variation(p, m, [m](double t) { return std::pow(t, m); });
  out.status = r.status;
  out.tail_slope = r.tail_slope;
  out.cutoffs = r.cutoffs;
  out.truncated_values = r.truncated_values;
  out.quadrature_error_estimate = r.error;
  if (r.status == Convergence::divergent) {
    out.variation_part = kInf;
    out.total = kInf;
    return out;
  }
  out.variation_part = r.value + out.jump_part;
  out.total = out.sup_part + out.variation_part;
  return out;
}

MajorantResult v0star_details(const Profile& p, const QuadratureSpec& quad) {
  if (p.max_order() < 1) throw CapabilityError("v0star_norm: profile has no first derivative");
  const auto bps = p.breakpoints();
  return integrate_majorant([&](double t) { return std::abs(p.derivative(1, t)); }, 0.0, {}, quad, bps);
}

double v0star_norm(const Profile& p, const QuadratureSpec& quad) { return v0star_details(p, quad).value; }

std::pair<double, double> interval_norms(const Profile& p, double b, const QuadratureSpec& quad) {
  if (!(b > 0.0) || !std::isfinite(b)) throw ParameterError("interval_norms: b must be positive");
  if (p.max_order() < 2) throw CapabilityError("interval_norms: need second derivatives");
  const auto bps = p.breakpoints();
  auto w = [b](double t) { return t * (1.0 - t / b); };
  const auto r = integrate_improper([&](double t) { return w(t) * std::abs(p.derivative(2, t)); }, 0.0,
                                    b, bps, quad);
  double first = r.status == Convergence::divergent ? kInf : r.value;
  if (std::isfinite(first)) {
    for (double x : bps)
      if (x > 0.0 && x < b)
        first += w(x) * std::abs(p.derivative(1, x, Side::right) - p.derivative(1, x, Side::left));
  }
  const double eps = 1e-12 * b;
  auto slope = [&](double u) { return std::abs(p.derivative(1, std::clamp(u, eps, b - eps))); };
  const double second = integrate_majorant_finite([&](double u) { return slope(u) + slope(b - u); }, 0.0, b);
  return {first, second};
}

Profile steklov_smooth(const Profile& p, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("steklov_smooth: h must be positive");
  return Profile(std::make_shared<SteklovProfile>(p, h));
}

}  // namespace multimono

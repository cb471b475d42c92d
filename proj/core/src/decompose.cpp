#include <algorithm>
#include <cmath>
#include <sstream>

#include "multimono/errors.hpp"
#include "multimono/vm_algebra.hpp"

namespace multimono {
namespace {

// g(t) = c + (-1)^m/m! F_m(t), F_j(t) = int_{(t, inf)} (u - t)^j dmu(u), with
// mu given by a density and atoms. F_j is cached on a geometric node grid and
// propagated between nodes by the binomial shift
//   F_j(s) = int_{(s, t]} (u - s)^j dmu + sum_l C(j, l) (t - s)^{j - l} F_l(t).
struct MeasureData {
  int m = 0;
  double c = 0.0;
  std::function<double(double)> density;
  std::vector<DiscreteMeasure::Atom> atoms;  // sorted by position
  std::vector<double> cuts;                  // atom positions, used to split quadrature
  Domain domain;
  std::vector<double> nodes;
  std::vector<std::vector<double>> F;  // F[i][j] at nodes[i]
  double abs_tol = 1e-14;
  double rel_tol = 1e-11;
  QuadratureSpec quad;
  std::string descriptor;

  // int over (a, b] of (u - a)^j dmu for all j <= m.
  std::vector<double> local(double a, double b, bool include_a) const {
    std::vector<double> out(m + 1, 0.0);
    if (b > a) {
      for (int j = 0; j <= m; ++j) {
        auto g = [&](double u) { return std::pow(u - a, j) * density(u); };
        std::vector<double> inner;
        for (double x : cuts)
          if (x > a && x < b) inner.push_back(x);
        inner.insert(inner.begin(), a);
        inner.push_back(b);
        for (std::size_t k = 0; k + 1 < inner.size(); ++k)
          out[j] += integrate_adaptive(g, inner[k], inner[k + 1], abs_tol, rel_tol, 400).value;
      }
    }
    for (const auto& at : atoms) {
      const bool inside = (at.u > a && at.u <= b) || (include_a && at.u == a);
      if (!inside) continue;
      for (int j = 0; j <= m; ++j) out[j] += std::pow(at.u - a, j) * at.w;
    }
    return out;
  }

  std::vector<double> tail(double a, bool include_a) const {
    std::vector<double> out(m + 1, 0.0);
    if (domain.bounded()) return local(a, domain.hi, include_a);
    for (int j = 0; j <= m; ++j) {
      auto g = [&](double u) { return std::pow(u - a, j) * density(u); };
      // F_j(a) enters F_m(t) with weight ~ a^{m-j}
      QuadratureSpec spec = quad;
      spec.abs_tol = abs_tol / std::pow(std::max(a, 1.0), m - j);
      spec.rel_tol = rel_tol;
      const auto r = integrate_improper(g, a, kInf, cuts, spec);
      if (r.status == Convergence::divergent)
        throw DivergenceError("decompose: moment integral diverges; not decomposable by this construction");
      out[j] = r.value;
    }
    for (const auto& at : atoms) {
      if (at.u > a || (include_a && at.u == a))
        for (int j = 0; j <= m; ++j) out[j] += std::pow(at.u - a, j) * at.w;
    }
    return out;
  }

  std::vector<double> shift(const std::vector<double>& loc, const std::vector<double>& next, double delta) const {
    std::vector<double> out(m + 1);
    for (int j = 0; j <= m; ++j) {
      double s = loc[j];
      for (int l = 0; l <= j; ++l) s += binomial(j, l) * std::pow(delta, j - l) * next[l];
      out[j] = s;
    }
    return out;
  }

  void build() {
    const std::size_t n = nodes.size();
    F.assign(n, {});
    F[n - 1] = tail(nodes[n - 1], false);
    for (std::size_t i = n - 1; i-- > 0;)
      F[i] = shift(local(nodes[i], nodes[i + 1], false), F[i + 1], nodes[i + 1] - nodes[i]);
  }

  std::vector<double> moments(double t, bool include_t) const {
    if (t >= nodes.back()) return tail(t, include_t);
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(nodes.begin(), nodes.end(), t) - nodes.begin());
    return shift(local(t, nodes[i], include_t), F[i], nodes[i] - t);
  }
};

class MeasureProfile final : public ProfileModel {
 public:
  explicit MeasureProfile(std::shared_ptr<const MeasureData> d) : d_(std::move(d)) {}

  Complex derivative(int order, double t, Side side) const override {
    const int m = d_->m;
    if (order == m + 1) return -d_->density(t);
    const auto F = d_->moments(t, side == Side::left);
    const int j = m - order;
    const double sign = (order + m) % 2 == 0 ? 1.0 : -1.0;
    return sign * F[j] / factorial(j) + (order == 0 ? d_->c : 0.0);
  }
  int max_order() const override { return d_->m + 1; }
  bool is_complex() const override { return false; }
  std::string descriptor() const override { return d_->descriptor; }
  std::vector<double> breakpoints() const override { return d_->cuts; }
  Domain domain() const override { return d_->domain; }
  std::optional<Complex> value_at_infinity() const override {
    if (d_->domain.bounded()) return std::nullopt;
    return Complex(d_->c);
  }

 private:
  std::shared_ptr<const MeasureData> d_;
};

std::shared_ptr<MeasureData> make_data(const Profile& f, int m, bool positive_part, double c,
                                       const QuadratureSpec& quad) {
  auto d = std::make_shared<MeasureData>();
  d->m = m;
  d->c = c;
  d->quad = quad;
  d->domain = f.domain();
  if (positive_part) {
    d->density = [f, m](double u) { return 2.0 * std::max(f.real_derivative(m + 1, u), 0.0); };
  } else {
    d->density = [f, m](double u) { return std::abs(f.real_derivative(m + 1, u)); };
  }
  for (double b : f.breakpoints()) {
    if (!(b > d->domain.lo && b < d->domain.hi)) continue;
    const double jump = f.real_derivative(m, b, Side::right) - f.real_derivative(m, b, Side::left);
    const double w = positive_part ? 2.0 * std::max(jump, 0.0) : std::abs(jump);
    d->cuts.push_back(b);
    if (w > 0.0) d->atoms.push_back({b, w});
  }
  std::sort(d->cuts.begin(), d->cuts.end());
  std::sort(d->atoms.begin(), d->atoms.end(), [](const auto& a, const auto& b) { return a.u < b.u; });

  double lo = 1e-6, hi = 1e6;
  for (double b : d->cuts) lo = std::min(lo, 0.1 * b);
  lo = std::max(lo, d->domain.lo);
  hi = std::min(hi, d->domain.hi);
  d->nodes = geometric_grid(lo, hi, 16);
  for (double b : d->cuts)
    if (b > lo && b < hi) d->nodes.push_back(b);
  std::sort(d->nodes.begin(), d->nodes.end());
  d->nodes.erase(std::unique(d->nodes.begin(), d->nodes.end()), d->nodes.end());

  std::ostringstream os;
  os << (positive_part ? "f2" : "f1") << "[" << f.descriptor() << ",m=" << m << "]";
  d->descriptor = os.str();
  d->build();
  return d;
}

}  // namespace

DecompositionPair decompose(const Profile& p, int m, const QuadratureSpec& quad, const GridSpec& test_grid) {
  if (m < 1) throw ParameterError("decompose: m must be >= 1");
  if (p.is_complex()) throw ParameterError("decompose: complex profile; decompose real_part and imag_part separately");
  VmNorm norm = vm_norm(p, m, quad);
  if (norm.status != Convergence::converged) {
    std::ostringstream os;
    os << "decompose: V_" << m << " norm of " << p.descriptor()
       << " is not finite (" << to_string(norm.status) << "); not decomposable by this construction";
    throw DivergenceError(os.str());
  }
  const double f_inf = p.domain().bounded() ? p.real_derivative(0, p.domain().hi) : p.value_at_infinity().real();

  Profile f1(std::make_shared<MeasureProfile>(make_data(p, m, false, 0.0, quad)));
  Profile f2(std::make_shared<MeasureProfile>(make_data(p, m, true, -f_inf, quad)));

  DecompositionPair out{f1, f2, norm, vm_norm(f1, m, quad), vm_norm(f2, m, quad), 0.0, {}};
  out.test_grid = sample_points(p, test_grid);
  for (double t : out.test_grid)
    out.reconstruction_error =
        std::max(out.reconstruction_error, std::abs(p.real_derivative(0, t) - (f1.real_derivative(0, t) - f2.real_derivative(0, t))));
  return out;
}

}  // namespace multimono

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multimono/errors.hpp"
#include "multimono/profile.hpp"

namespace multimono::profiles {
namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

template <class T>
class JetProfile final : public ProfileModel {
 public:
  using Fn = std::function<Jet<T>(const Jet<T>&)>;

  JetProfile(std::string name, Fn fn, int max_order, std::optional<Complex> at_zero = {},
             std::optional<Complex> at_inf = {})
      : name_(std::move(name)),
        fn_(std::move(fn)),
        max_order_(max_order),
        at_zero_(at_zero),
        at_inf_(at_inf) {}

  Complex derivative(int order, double t, Side) const override {
    return Complex(fn_(Jet<T>::variable(order, t)).derivative(order));
  }
  int max_order() const override { return max_order_; }
  bool is_complex() const override { return std::is_same_v<T, Complex>; }
  std::string descriptor() const override { return name_; }
  std::optional<Complex> value_at_zero() const override { return at_zero_; }
  std::optional<Complex> value_at_infinity() const override { return at_inf_; }

 private:
  std::string name_;
  Fn fn_;
  int max_order_;
  std::optional<Complex> at_zero_;
  std::optional<Complex> at_inf_;
};

class WilliamsonProfile final : public ProfileModel {
 public:
  WilliamsonProfile(DiscreteMeasure mu, int m, std::string name)
      : mu_(std::move(mu)), m_(m), name_(std::move(name)) {
    for (const auto& a : mu_.atoms())
      if (a.u > 0.0) breaks_.push_back(1.0 / a.u);
    std::sort(breaks_.begin(), breaks_.end());
  }

  Complex derivative(int order, double t, Side side) const override {
    if (order > m_) return 0.0;
    const double falling = factorial(m_) / factorial(m_ - order);
    double acc = 0.0;
    for (const auto& a : mu_.atoms()) {
      if (a.u == 0.0) {
        if (order == 0) acc += a.w;
        continue;
      }
      const double b = 1.0 / a.u;
      const bool inside = side == Side::right ? t < b : t <= b;
      if (!inside) continue;
      // (1 - t u)^{m - order} with the base clamped at the breakpoint itself.
      const double base = std::max(0.0, 1.0 - t * a.u);
      acc += a.w * falling * std::pow(-a.u, order) * std::pow(base, m_ - order);
    }
    return acc;
  }
  // One order past m is available: it vanishes away from the breakpoints and
  // the jumps of the order-m derivative are exposed through one-sided limits.
  int max_order() const override { return m_ + 1; }
  bool is_complex() const override { return false; }
  std::string descriptor() const override { return name_; }
  std::vector<double> breakpoints() const override { return breaks_; }
  std::optional<Complex> value_at_zero() const override { return mu_.total_mass(); }
  std::optional<Complex> value_at_infinity() const override {
    double s = 0.0;
    for (const auto& a : mu_.atoms())
      if (a.u == 0.0) s += a.w;
    return s;
  }

 private:
  DiscreteMeasure mu_;
  int m_;
  std::string name_;
  std::vector<double> breaks_;
};

class ComposePowerProfile final : public ProfileModel {
 public:
  ComposePowerProfile(Profile inner, double alpha) : inner_(std::move(inner)), alpha_(alpha) {}

  Complex derivative(int order, double t, Side side) const override {
    const double s = std::pow(t, alpha_);
    if (order == 0) return inner_.derivative(0, s, side);
    // f(s + delta(h)) = sum_k f^{(k)}(s)/k! delta^k with delta = (t+h)^alpha - t^alpha.
    Jet<double> delta = pow(Jet<double>::variable(order, t), alpha_);
    delta[0] = 0.0;
    Jet<double> power(order, 1.0);
    Complex coeff = 0.0;
    for (int k = 1; k <= order; ++k) {
      power = power * delta;
      coeff += inner_.derivative(k, s, side) / factorial(k) * power[order];
    }
    return coeff * factorial(order);
  }
  int max_order() const override { return inner_.max_order(); }
  bool is_complex() const override { return inner_.is_complex(); }
  std::string descriptor() const override {
    return inner_.descriptor() + ",pow=" + fmt_num(alpha_);
  }
  std::vector<double> breakpoints() const override {
    auto b = inner_.breakpoints();
    for (double& x : b) x = std::pow(x, 1.0 / alpha_);
    return b;
  }
  Domain domain() const override {
    Domain d = inner_.domain();
    return {d.lo > 0.0 ? std::pow(d.lo, 1.0 / alpha_) : 0.0,
            d.bounded() ? std::pow(d.hi, 1.0 / alpha_) : kInf};
  }
  int accuracy_order() const override { return inner_.accuracy_order(); }
  std::optional<Complex> value_at_zero() const override { return inner_.value_at_zero(); }
  std::optional<Complex> value_at_infinity() const override { return inner_.value_at_infinity(); }

 private:
  Profile inner_;
  double alpha_;
};

class ScaledProfile final : public ProfileModel {
 public:
  ScaledProfile(Profile inner, double lambda) : inner_(std::move(inner)), lambda_(lambda) {}

  Complex derivative(int order, double t, Side side) const override {
    return std::pow(lambda_, order) * inner_.derivative(order, lambda_ * t, side);
  }
  int max_order() const override { return inner_.max_order(); }
  bool is_complex() const override { return inner_.is_complex(); }
  std::string descriptor() const override {
    return inner_.descriptor() + ",scale=" + fmt_num(lambda_);
  }
  std::vector<double> breakpoints() const override {
    auto b = inner_.breakpoints();
    for (double& x : b) x /= lambda_;
    return b;
  }
  Domain domain() const override {
    Domain d = inner_.domain();
    return {d.lo / lambda_, d.bounded() ? d.hi / lambda_ : kInf};
  }
  int accuracy_order() const override { return inner_.accuracy_order(); }
  std::optional<Complex> value_at_zero() const override { return inner_.value_at_zero(); }
  std::optional<Complex> value_at_infinity() const override { return inner_.value_at_infinity(); }

 private:
  Profile inner_;
  double lambda_;
};

// Jet of the smooth step S(s) = e^{-1/s} / (e^{-1/s} + e^{-1/(1-s)}) on (0, 1).
Jet<double> smooth_step(const Jet<double>& s) {
  const int n = s.order();
  if (s[0] <= 1e-3) return Jet<double>(n, 0.0);
  if (s[0] >= 1.0 - 1e-3) return Jet<double>(n, 1.0);
  const Jet<double> e1 = exp(-(1.0 / s));
  const Jet<double> e2 = exp(-(1.0 / (1.0 - s)));
  return e1 / (e1 + e2);
}

class CutoffProfile final : public ProfileModel {
 public:
  CutoffProfile(Profile inner, double a) : inner_(std::move(inner)), a_(a) {}

  Complex derivative(int order, double t, Side side) const override {
    if (t <= a_) return 0.0;
    const Jet<double> chi = smooth_step((Jet<double>::variable(order, t) - a_) * (1.0 / a_));
    Complex acc = 0.0;
    for (int k = 0; k <= order; ++k) {
      const double ck = chi.derivative(k);
      if (ck == 0.0) continue;
      acc += binomial(order, k) * ck * inner_.derivative(order - k, t, side);
    }
    return acc;
  }
  int max_order() const override { return inner_.max_order(); }
  bool is_complex() const override { return inner_.is_complex(); }
  std::string descriptor() const override { return inner_.descriptor() + ",cutoff=" + fmt_num(a_); }
  std::vector<double> breakpoints() const override { return inner_.breakpoints(); }
  Domain domain() const override { return inner_.domain(); }
  int accuracy_order() const override { return inner_.accuracy_order(); }
  std::optional<Complex> value_at_zero() const override { return Complex(0.0); }
  std::optional<Complex> value_at_infinity() const override { return inner_.value_at_infinity(); }

 private:
  Profile inner_;
  double a_;
};

class ComponentProfile final : public ProfileModel {
 public:
  ComponentProfile(Profile inner, bool imag) : inner_(std::move(inner)), imag_(imag) {}

  Complex derivative(int order, double t, Side side) const override {
    const Complex v = inner_.derivative(order, t, side);
    return imag_ ? v.imag() : v.real();
  }
  int max_order() const override { return inner_.max_order(); }
  bool is_complex() const override { return false; }
  std::string descriptor() const override {
    return inner_.descriptor() + (imag_ ? ",part=im" : ",part=re");
  }
  std::vector<double> breakpoints() const override { return inner_.breakpoints(); }
  Domain domain() const override { return inner_.domain(); }
  int accuracy_order() const override { return inner_.accuracy_order(); }
  std::optional<Complex> value_at_zero() const override {
    const Complex v = inner_.value_at_zero();
    return Complex(imag_ ? v.imag() : v.real());
  }
  std::optional<Complex> value_at_infinity() const override {
    const Complex v = inner_.value_at_infinity();
    return Complex(imag_ ? v.imag() : v.real());
  }

 private:
  Profile inner_;
  bool imag_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

Profile example1(double gamma, double alpha, double beta, int max_order) {
  require(gamma >= 0.0 && std::isfinite(gamma), "example1: gamma must be >= 0");
  require(alpha > 0.0 && std::isfinite(alpha), "example1: alpha must be > 0");
  require(beta > 0.0 && std::isfinite(beta), "example1: beta must be > 0");
  auto fn = [gamma, alpha, beta](const Jet<double>& t) {
    const Jet<double> den = pow(1.0 + pow(t, alpha), beta);
    if (gamma == 0.0) return 1.0 / den;
    return pow(t, gamma) / den;
  };
  const double decay = alpha * beta - gamma;
  std::optional<Complex> at_inf;
  if (decay > 0.0) at_inf = 0.0;
  else if (decay == 0.0) at_inf = 1.0;
  else at_inf = kInf;
  const std::string name = "example1:g=" + fmt_num(gamma) + ",a=" + fmt_num(alpha) +
                           ",b=" + fmt_num(beta);
  return Profile(std::make_shared<JetProfile<double>>(name, fn, max_order,
                                                      Complex(gamma == 0.0 ? 1.0 : 0.0), at_inf));
}

Profile example2(double alpha, double beta, int max_order) {
  require(alpha >= 0.0 && std::isfinite(alpha), "example2: alpha must be >= 0");
  require(beta > 0.0 && std::isfinite(beta), "example2: beta must be > 0");
  const Complex I(0.0, 1.0);
  auto fn = [alpha, beta, I](const Jet<Complex>& t) {
    Jet<Complex> phase = alpha == 0.0 ? Jet<Complex>(t.order(), 1.0) : pow(t, alpha);
    return exp(phase * I) / pow(1.0 + t, beta);
  };
  const Complex at_zero = alpha == 0.0 ? std::exp(I) : Complex(1.0);
  const std::string name = "example2:a=" + fmt_num(alpha) + ",b=" + fmt_num(beta);
  return Profile(
      std::make_shared<JetProfile<Complex>>(name, fn, max_order, at_zero, Complex(0.0)));
}

Profile exp_decay(double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "exp_decay: lambda must be > 0");
  auto fn = [lambda](const Jet<double>& t) { return exp(t * -lambda); };
  return Profile(std::make_shared<JetProfile<double>>("exp:l=" + fmt_num(lambda), fn, 32,
                                                      Complex(1.0), Complex(0.0)));
}

Profile gaussian(double sigma) {
  require(sigma > 0.0 && std::isfinite(sigma), "gaussian: sigma must be > 0");
  const double c = -0.5 / (sigma * sigma);
  auto fn = [c](const Jet<double>& t) { return exp(t * t * c); };
  return Profile(std::make_shared<JetProfile<double>>("gauss:s=" + fmt_num(sigma), fn, 16,
                                                      Complex(1.0), Complex(0.0)));
}

Profile trunc_power(int m, double u) {
  require(m >= 1, "trunc_power: m must be >= 1");
  require(u > 0.0 && std::isfinite(u), "trunc_power: u must be > 0");
  return Profile(std::make_shared<WilliamsonProfile>(
      DiscreteMeasure({{u, 1.0}}), m, "trunc:m=" + std::to_string(m) + ",u=" + fmt_num(u)));
}

Profile williamson_synthesize(const DiscreteMeasure& mu, int m) {
  require(m >= 1, "williamson_synthesize: m must be >= 1");
  std::string name = "williamson:m=" + std::to_string(m) + ",atoms=";
  bool first = true;
  for (const auto& a : mu.atoms()) {
    name += (first ? "" : ";") + fmt_num(a.u) + "@" + fmt_num(a.w);
    first = false;
  }
  return Profile(std::make_shared<WilliamsonProfile>(mu, m, name));
}

Profile compose_power(const Profile& p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("compose_power: alpha must lie in the open interval (0, 1)");
  return Profile(std::make_shared<ComposePowerProfile>(p, alpha));
}

Profile scale_argument(const Profile& p, double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "scale_argument: lambda must be > 0");
  return Profile(std::make_shared<ScaledProfile>(p, lambda));
}

Profile with_cutoff(const Profile& p, double a) {
  require(a > 0.0 && std::isfinite(a), "with_cutoff: a must be > 0");
  return Profile(std::make_shared<CutoffProfile>(p, a));
}

Profile real_part(const Profile& p) { return Profile(std::make_shared<ComponentProfile>(p, false)); }
Profile imag_part(const Profile& p) { return Profile(std::make_shared<ComponentProfile>(p, true)); }

Profile analytic(std::string name, RealJetFn fn, int max_order) {
  return Profile(std::make_shared<JetProfile<double>>(std::move(name), std::move(fn), max_order));
}

Profile analytic_complex(std::string name, ComplexJetFn fn, int max_order) {
  return Profile(std::make_shared<JetProfile<Complex>>(std::move(name), std::move(fn), max_order));
}

}  // namespace multimono::profiles

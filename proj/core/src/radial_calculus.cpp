#include "multimono/radial_calculus.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "multimono/errors.hpp"

namespace multimono {
namespace {

void check_point(const PNorm& pn, std::span<const double> x) {
  if (static_cast<int>(x.size()) != pn.d) {
    std::ostringstream os;
    os << "point has " << x.size() << " coordinates, expected " << pn.d;
    throw ParameterError(os.str());
  }
}

void guard_band(std::span<const double> x) {
  double norm = 0.0;
  for (double v : x) norm = std::max(norm, std::abs(v));
  for (double v : x)
    if (!(v > 1e-8 * norm)) {
      std::ostringstream os;
      os << "coordinate " << v << " is on or within 1e-8 |x| of a coordinate hyperplane";
      throw DomainError(os.str());
    }
}

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

class NestedIntegrator {
 public:
  NestedIntegrator(const Profile& g, const PNorm& pn, double alpha) : g_(g), pn_(pn), alpha_(alpha), x_(pn.d) {}

  double run() { return level(0); }
  bool ok() const { return ok_; }

 private:
  double level(int k) {
    const int d = pn_.d;
    std::vector<double> cuts;
    if (pn_.is_max() && k > 0) {
      const double m = *std::max_element(x_.begin(), x_.begin() + k);
      cuts.push_back(m / (1.0 + m));
    }
    auto body = [&](double s) {
      const double x = s / (1.0 - s);
      const double jac = 1.0 / ((1.0 - s) * (1.0 - s));
      x_[k] = x;
      const double w = alpha_ == 1.0 ? 1.0 : std::pow(x, alpha_ - 1.0);
      if (k + 1 == d) {
        const double r = pn_(x_);
        return w * jac * g_.real_derivative(0, r);
      }
      return w * jac * level(k + 1);
    };
    cuts.insert(cuts.begin(), 0.0);
    cuts.push_back(1.0);
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const auto r = integrate_adaptive(body, cuts[j], cuts[j + 1], 1e-13, 1e-9, 300);
      ok_ = ok_ && r.ok;
      s += r.value;
    }
    return s;
  }

  const Profile& g_;
  const PNorm& pn_;
  double alpha_;
  std::vector<double> x_;
  bool ok_ = true;
};

}  // namespace

PNorm::PNorm(double p_, int d_) : p(p_), d(d_) {
  if (!(p > 0.0)) throw ParameterError("PNorm: p must be > 0");
  if (d < 1) throw ParameterError("PNorm: d must be >= 1");
}

double PNorm::operator()(std::span<const double> x) const {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (is_max() || m == 0.0) return m;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

CoefficientTable gamma_coefficients(int d, double p) {
  if (d < 1 || d > 8) throw ParameterError("gamma_coefficients: d must be in 1..8");
  if (!(p > 0.0) || std::isinf(p)) throw ParameterError("gamma_coefficients: p must be finite and > 0");
  CoefficientTable t;
  t.p = p;
  t.d = 1;
  t.gamma = {0.0, 1.0};
  for (int k = 1; k < d; ++k) {
    std::vector<double> next(k + 2, 0.0);
    for (int nu = 1; nu <= k + 1; ++nu) {
      const double own = nu <= k ? (nu - k * p) * t.gamma[nu] : 0.0;
      next[nu] = own + t.gamma[nu - 1];
    }
    t.gamma = std::move(next);
    t.d = k + 1;
  }
  return t;
}

Complex partial_mixed_derivative(const Profile& f, const PNorm& pn, int nu, std::span<const double> x) {
  check_point(pn, x);
  if (pn.is_max())
    throw ParameterError("mixed_derivative: p = inf has no closed-form expansion; use mixed_derivative_fd");
  if (nu < 1 || nu > pn.d) throw ParameterError("mixed_derivative: need 1 <= nu <= d");
  guard_band(x);
  const auto table = gamma_coefficients(nu, pn.p);
  const double r = pn(x);
  Complex s = 0.0;
  for (int k = 1; k <= nu; ++k) s += table(k) * std::pow(r, k - nu * pn.p) * f.derivative(k, r);
  double prod = 1.0;
  for (int j = 0; j < nu; ++j) prod *= std::pow(x[j], pn.p - 1.0);
  return s * prod;
}

Complex mixed_derivative(const Profile& f, const PNorm& pn, std::span<const double> x) {
  return partial_mixed_derivative(f, pn, pn.d, x);
}

Complex mixed_derivative_fd(const Profile& f, const PNorm& pn, std::span<const double> x, double h) {
  check_point(pn, x);
  if (!(h > 0.0)) throw ParameterError("mixed_derivative_fd: h must be positive");
  for (double v : x)
    if (!(v - h > 0.0)) throw DomainError("mixed_derivative_fd: stencil leaves the positive orthant");
  const int d = pn.d;
  std::vector<double> y(d);
  Complex s = 0.0;
  for (int mask = 0; mask < (1 << d); ++mask) {
    double sign = 1.0;
    for (int j = 0; j < d; ++j) {
      const bool up = (mask >> j) & 1;
      y[j] = x[j] + (up ? h : -h);
      if (!up) sign = -sign;
    }
    s += sign * f(pn(y));
  }
  return s / std::pow(2.0 * h, d);
}

BoundEstimate derivative_bound_check(const Profile& f, const PNorm& pn, int nu, int samples, std::uint64_t seed) {
  if (pn.p < 1.0 || pn.is_max()) throw ParameterError("derivative_bound_check: need finite p >= 1");
  if (nu < 1 || nu > pn.d) throw ParameterError("derivative_bound_check: need 1 <= nu <= d");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logu(std::log(1e-2), std::log(1e2));
  BoundEstimate out;
  std::vector<double> x(pn.d);
  for (int i = 0; i < samples; ++i) {
    for (double& v : x) v = std::exp(logu(rng));
    const double r = pn(x);
    double denom = 0.0;
    for (int s = 1; s <= nu; ++s) denom = std::max(denom, std::pow(r, s - nu) * std::abs(f.derivative(s, r)));
    if (denom == 0.0) {
      ++out.skipped;
      continue;
    }
    out.gamma0 = std::max(out.gamma0, std::abs(partial_mixed_derivative(f, pn, nu, x)) / denom);
    ++out.used;
  }
  return out;
}

double reduction_constant(int d, double p, double alpha) {
  if (d < 1) throw ParameterError("reduction_constant: d must be >= 1");
  if (!(alpha > 0.0)) throw ParameterError("reduction_constant: alpha must be > 0");
  if (!(p > 0.0)) throw ParameterError("reduction_constant: p must be > 0");
  if (std::isinf(p)) return std::ldexp(1.0, d) * d * std::pow(alpha, 1.0 - d);
  const double lg = d * std::lgamma(alpha / p) - std::lgamma(d * alpha / p) - (d - 1) * std::log(p);
  return std::ldexp(std::exp(lg), d);
}

double weighted_integral_reduction(const Profile& g, const PNorm& pn, double alpha, const QuadratureSpec& quad) {
  const double c = reduction_constant(pn.d, pn.p, alpha);
  const double k = pn.d * alpha - 1.0;
  const auto r = integrate_improper([&](double t) { return std::pow(t, k) * g.real_derivative(0, t); }, 0.0, kInf,
                                    g.breakpoints(), quad);
  if (r.status != Convergence::converged) {
    std::ostringstream os;
    os << "weighted_integral_reduction: int t^" << k << " g(t) dt is " << to_string(r.status);
    throw DivergenceError(os.str());
  }
  return c * r.value;
}

BruteForceResult weighted_integral_bruteforce(const Profile& g, const PNorm& pn, double alpha,
                                              const QuadratureSpec&, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw ParameterError("weighted_integral_bruteforce: alpha must be > 0");
  const int d = pn.d;
  BruteForceResult out;
  const double orthants = std::ldexp(1.0, d);
  if (d <= 3) {
    NestedIntegrator nested(g, pn, alpha);
    out.value = orthants * nested.run();
    out.inconclusive = !nested.ok();
    out.error_estimate = 1e-8 * std::abs(out.value);
    out.method = "tensor";
    return out;
  }
  if (d > 5) throw ParameterError("weighted_integral_bruteforce: d must be <= 5");
  static constexpr int kBases[5] = {2, 3, 5, 7, 11};
  constexpr int kShifts = 8;
  constexpr std::uint64_t kPoints = 1u << 16;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> means;
  std::vector<double> x(d);
  for (int s = 0; s < kShifts; ++s) {
    std::vector<double> shift(d);
    for (double& v : shift) v = u01(rng);
    double acc = 0.0;
    for (std::uint64_t i = 1; i <= kPoints; ++i) {
      double w = 1.0;
      for (int j = 0; j < d; ++j) {
        double q = radical_inverse(i, kBases[j]) + shift[j];
        q -= std::floor(q);
        q = std::clamp(q, 1e-15, 1.0 - 1e-15);
        x[j] = q / (1.0 - q);
        w *= std::pow(x[j], alpha - 1.0) / ((1.0 - q) * (1.0 - q));
      }
      acc += w * g.real_derivative(0, pn(x));
    }
    means.push_back(orthants * acc / static_cast<double>(kPoints));
  }
  double mean = 0.0;
  for (double v : means) mean += v;
  mean /= kShifts;
  double var = 0.0;
  for (double v : means) var += (v - mean) * (v - mean);
  var /= kShifts - 1;
  out.value = mean;
  out.error_estimate = std::sqrt(var / kShifts);
  out.inconclusive = out.error_estimate > 1e-2 * std::abs(mean);
  out.method = "qmc";
  return out;
}

}  // namespace multimono

#include "multimono/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multimono/errors.hpp"

namespace multimono {
namespace {

// Aitken delta-squared on the last three terms of a sequence.
Complex aitken_tail(const std::vector<Complex>& v) {
  const std::size_t n = v.size();
  const Complex a = v[n - 3], b = v[n - 2], c = v[n - 1];
  const Complex d1 = c - b, d0 = b - a;
  const Complex denom = d1 - d0;
  if (std::abs(d1) <= 1e-15 * std::max(1.0, std::abs(c)) || std::abs(denom) < 1e-300) return c;
  const Complex x = c - d1 * d1 / denom;
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return c;
  return x;
}

}  // namespace

Profile::Profile(std::shared_ptr<const ProfileModel> model) : model_(std::move(model)) {
  if (!model_) throw ParameterError("Profile: null model");
}

Complex Profile::derivative(int order, double t, Side side) const {
  if (order < 0) throw ParameterError("derivative order must be nonnegative");
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << descriptor() << ": evaluation at t = " << t << " outside (0, inf)";
    throw DomainError(os.str());
  }
  if (!model_->domain().contains(t)) {
    std::ostringstream os;
    os << descriptor() << ": t = " << t << " outside the tabulated range";
    throw DomainError(os.str());
  }
  if (order > model_->max_order()) {
    std::ostringstream os;
    os << descriptor() << ": derivative order " << order << " exceeds supported order "
       << model_->max_order();
    throw CapabilityError(os.str());
  }
  return model_->derivative(order, t, side);
}

Complex Profile::value_at_zero() const {
  if (auto v = model_->value_at_zero()) return *v;
  const Domain dom = domain();
  if (dom.lo > 0.0) return derivative(0, dom.lo);
  std::vector<Complex> seq;
  for (int k = 4; k <= 14; k += 2) seq.push_back(derivative(0, std::pow(10.0, -k)));
  return aitken_tail(seq);
}

Complex Profile::value_at_infinity() const {
  if (auto v = model_->value_at_infinity()) return *v;
  const Domain dom = domain();
  if (dom.bounded()) return derivative(0, dom.hi);
  std::vector<Complex> seq;
  for (int k = 4; k <= 16; k += 2) seq.push_back(derivative(0, std::pow(10.0, k)));
  return aitken_tail(seq);
}

bool Profile::has_breakpoint_in(double a, double b) const {
  for (double bp : breakpoints())
    if (bp > a && bp < b) return true;
  return false;
}

Complex eval_derivative(const Profile& p, int nu, double t) { return p.derivative(nu, t); }

Complex finite_difference_derivative(const Profile& p, int nu, double t, double h) {
  if (nu < 0) throw ParameterError("finite_difference_derivative: negative order");
  if (!(h > 0.0)) throw ParameterError("finite_difference_derivative: step must be positive");
  const double lo = t - 0.5 * nu * h;
  const double hi = t + 0.5 * nu * h;
  const Domain dom = p.domain();
  if (!(lo > 0.0) || !dom.contains(lo) || !dom.contains(hi)) {
    std::ostringstream os;
    os << "finite-difference stencil [" << lo << ", " << hi << "] leaves the domain of "
       << p.descriptor();
    throw DomainError(os.str());
  }
  if (nu > 0 && p.has_breakpoint_in(lo, hi)) {
    std::ostringstream os;
    os << "finite-difference stencil [" << lo << ", " << hi << "] crosses a breakpoint of "
       << p.descriptor();
    throw DomainError(os.str());
  }
  Complex acc = 0.0;
  for (int k = 0; k <= nu; ++k) {
    const double sign = ((nu - k) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binomial(nu, k) * p(t + (k - 0.5 * nu) * h);
  }
  return acc / std::pow(h, nu);
}

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ParameterError("DiscreteMeasure: empty measure");
  for (const Atom& a : atoms_) {
    if (!(a.u >= 0.0) || !std::isfinite(a.u))
      throw ParameterError("DiscreteMeasure: atom positions must be finite and >= 0");
    if (!(a.w > 0.0) || !std::isfinite(a.w))
      throw ParameterError("DiscreteMeasure: atom weights must be finite and > 0");
  }
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.u < b.u; });
  for (std::size_t k = 1; k < atoms_.size(); ++k)
    if (atoms_[k].u == atoms_[k - 1].u)
      throw ParameterError("DiscreteMeasure: duplicate atom position");
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.w;
  return s;
}

}  // namespace multimono

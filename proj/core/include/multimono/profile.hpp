#pragma once

// Radial profiles f0 : (0, inf) -> C with access to derivatives.
//
// A Profile is an immutable handle onto a ProfileModel. Closed-form
// families differentiate exactly through Taylor jets; tabulated data falls
// back to local polynomial differentiation; Williamson mixtures track their
// breakpoints so that jumps of the top derivative can be integrated exactly.

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multimono/jet.hpp"

namespace multimono {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Which one-sided limit to report at a breakpoint. Away from breakpoints
/// both sides agree.
enum class Side { left, right };

struct Domain {
  double lo = 0.0;  // open at 0, closed otherwise
  double hi = kInf;

  bool contains(double t) const { return (lo == 0.0 ? t > 0.0 : t >= lo) && t <= hi; }
  bool bounded() const { return hi < kInf; }
};

class ProfileModel {
 public:
  virtual ~ProfileModel() = default;

  /// f^{(order)}(t); callers guarantee 0 <= order <= max_order() and t in domain().
  virtual Complex derivative(int order, double t, Side side) const = 0;
  virtual int max_order() const = 0;
  virtual bool is_complex() const = 0;
  virtual std::string descriptor() const = 0;

  /// Points where some derivative up to max_order() may jump.
  virtual std::vector<double> breakpoints() const { return {}; }
  virtual Domain domain() const { return {}; }
  /// 0 for exact derivatives, otherwise the local order of accuracy.
  virtual int accuracy_order() const { return 0; }
  virtual std::optional<Complex> value_at_zero() const { return std::nullopt; }
  virtual std::optional<Complex> value_at_infinity() const { return std::nullopt; }
};

class Profile {
 public:
  explicit Profile(std::shared_ptr<const ProfileModel> model);

  Complex operator()(double t) const { return derivative(0, t); }

  /// Validated derivative access. Throws DomainError for t outside the
  /// domain and CapabilityError for orders beyond max_order().
  Complex derivative(int order, double t, Side side = Side::right) const;

  /// Real part of derivative(); for real profiles this is the value itself.
  double real_derivative(int order, double t, Side side = Side::right) const {
    return derivative(order, t, side).real();
  }

  int max_order() const { return model_->max_order(); }
  bool is_complex() const { return model_->is_complex(); }
  std::string descriptor() const { return model_->descriptor(); }
  std::vector<double> breakpoints() const { return model_->breakpoints(); }
  Domain domain() const { return model_->domain(); }
  int accuracy_order() const { return model_->accuracy_order(); }

  /// f(+0); exact where the family knows it, otherwise Aitken extrapolation
  /// along t = 10^{-k}.
  Complex value_at_zero() const;
  /// f(+inf); exact where known, otherwise extrapolated along t = 10^{k}.
  Complex value_at_infinity() const;

  /// True if some breakpoint lies strictly inside (a, b).
  bool has_breakpoint_in(double a, double b) const;

  const ProfileModel& model() const { return *model_; }

 private:
  std::shared_ptr<const ProfileModel> model_;
};

/// Returns f^{(nu)}(t).
Complex eval_derivative(const Profile& p, int nu, double t);

/// Central finite difference of order nu with step h; O(h^2) for smooth
/// profiles. Throws DomainError when the stencil leaves the domain or
/// crosses a breakpoint.
Complex finite_difference_derivative(const Profile& p, int nu, double t, double h);

/// Positive atoms (u_k, w_k) sorted by u_k.
class DiscreteMeasure {
 public:
  struct Atom {
    double u;
    double w;
  };

  explicit DiscreteMeasure(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  double total_mass() const;
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<Atom> atoms_;
};

namespace profiles {

/// t^gamma / (1 + t^alpha)^beta with gamma >= 0, alpha > 0, beta > 0.
Profile example1(double gamma, double alpha, double beta, int max_order = 16);
/// exp(i t^alpha) / (1 + t)^beta with alpha >= 0, beta > 0. Complex-valued.
Profile example2(double alpha, double beta, int max_order = 16);
/// exp(-lambda t).
Profile exp_decay(double lambda);
/// exp(-t^2 / (2 sigma^2)).
Profile gaussian(double sigma);
/// (1 - t u)_+^m.
Profile trunc_power(int m, double u);

/// sum_k w_k (1 - t u_k)_+^m. Exact piecewise-polynomial derivatives; the
/// order-m derivative jumps at t = 1/u_k and is reported one-sided there.
Profile williamson_synthesize(const DiscreteMeasure& mu, int m);

/// t -> f(t^alpha) for alpha in (0, 1); derivatives by Faa di Bruno through
/// series composition.
Profile compose_power(const Profile& p, double alpha);

/// t -> f(lambda t).
Profile scale_argument(const Profile& p, double lambda);

/// chi(t) f(t) with chi a C-infinity step: 0 on (0, a], 1 on [2a, inf).
Profile with_cutoff(const Profile& p, double a);

/// Real or imaginary component as a real profile.
Profile real_part(const Profile& p);
Profile imag_part(const Profile& p);

using RealJetFn = std::function<Jet<double>(const Jet<double>&)>;
using ComplexJetFn = std::function<Jet<Complex>(const Jet<Complex>&)>;

/// Closed-form profile defined by a jet expression of t.
Profile analytic(std::string name, RealJetFn fn, int max_order = 16);
Profile analytic_complex(std::string name, ComplexJetFn fn, int max_order = 16);

/// Samples on strictly increasing t > 0. Derivatives from local Lagrange
/// polynomials with nu + 4 nodes (fourth order), one-sided at the ends.
Profile tabulated(std::vector<double> t, std::vector<double> re, std::vector<double> im = {});

/// Reads a CSV with header "t,re" or "t,re,im".
Profile load_csv(const std::string& path);

}  // namespace profiles
}  // namespace multimono

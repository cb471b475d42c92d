#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "multimono/profile.hpp"
#include "multimono/quadrature.hpp"

namespace multimono {

/// |x|_{p,d}; p may be +inf.
struct PNorm {
  double p = 2.0;
  int d = 1;

  PNorm(double p_, int d_);
  double operator()(std::span<const double> x) const;
  bool is_max() const { return std::isinf(p); }
};

/// gamma(d, p, nu) for nu = 1..d, built by
///   gamma(d+1, nu) = (nu - d p) gamma(d, nu) + gamma(d, nu-1),  gamma(1, 1) = 1.
struct CoefficientTable {
  int d = 1;
  double p = 1.0;
  std::vector<double> gamma;  // gamma[nu], gamma[0] = 0

  double operator()(int nu) const { return nu >= 1 && nu <= d ? gamma[nu] : 0.0; }
};

CoefficientTable gamma_coefficients(int d, double p);

/// d_1 ... d_d f0(|x|_p) = sum_nu gamma(d,p,nu) r^{nu - d p} f0^{(nu)}(r) prod x_j^{p-1}.
/// Requires finite p and every x_j above the guard band 1e-8 |x|.
Complex mixed_derivative(const Profile& f, const PNorm& pn, std::span<const double> x);

/// Mixed derivative with respect to the first nu coordinates of f0(|x|_{p,d}).
Complex partial_mixed_derivative(const Profile& f, const PNorm& pn, int nu, std::span<const double> x);

/// Tensor central difference with 2^d points at x +- h e_j; O(h^2). Works for p = inf.
Complex mixed_derivative_fd(const Profile& f, const PNorm& pn, std::span<const double> x, double h);

struct BoundEstimate {
  double gamma0 = 0.0;  // max sampled ratio
  int used = 0;
  int skipped = 0;  // zero denominators
};

/// Max over random points of |d_1..d_nu f0(|x|_p)| / max_{1<=s<=nu} r^{s-nu} |f0^{(s)}(r)|.
/// Points are log-uniform per coordinate in [1e-2, 1e2]; p >= 1 finite.
BoundEstimate derivative_bound_check(const Profile& f, const PNorm& pn, int nu, int samples,
                                     std::uint64_t seed = 1);

/// 2^d Gamma(a/p)^d / (p^{d-1} Gamma(d a/p)) for finite p; 2^d d a^{1-d} at p = inf.
double reduction_constant(int d, double p, double alpha);

/// reduction_constant * int_0^inf t^{d alpha - 1} g(t) dt. Throws DivergenceError
/// if the one-dimensional integral does not converge.
double weighted_integral_reduction(const Profile& g, const PNorm& pn, double alpha,
                                   const QuadratureSpec& quad = {});

struct BruteForceResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool inconclusive = false;
  std::string method;  // "tensor" or "qmc"
};

/// int_{R^d} g(|x|_p) prod |x_j|^{alpha-1} dx computed directly: nested adaptive
/// quadrature for d <= 3, randomly shifted Halton points for d <= 5.
BruteForceResult weighted_integral_bruteforce(const Profile& g, const PNorm& pn, double alpha,
                                              const QuadratureSpec& quad = {}, std::uint64_t seed = 1);

}  // namespace multimono

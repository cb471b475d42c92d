#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "multimono/errors.hpp"
#include "multimono/radial_calculus.hpp"
#include "oracles.hpp"

using namespace multimono;
namespace pf = multimono::profiles;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_point(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(0.3, 2.0);
  std::vector<double> x(d);
  for (double& v : x) v = u(rng);
  return x;
}

}  // namespace

TEST_CASE("coefficient tables") {
  CHECK(gamma_coefficients(1, 2.0)(1) == 1.0);
  const auto t2 = gamma_coefficients(2, 2.0);
  CHECK(t2(1) == -1.0);
  CHECK(t2(2) == 1.0);
  const auto t3 = gamma_coefficients(3, 2.0);
  CHECK(t3(1) == 3.0);
  CHECK(t3(2) == -3.0);
  CHECK(t3(3) == 1.0);
  CHECK(t3(0) == 0.0);
  CHECK(t3(4) == 0.0);
  // recurrence from d = 3 to d = 4
  const double p = 1.5;
  const auto a = gamma_coefficients(3, p), b = gamma_coefficients(4, p);
  for (int nu = 1; nu <= 4; ++nu) CHECK(b(nu) == doctest::Approx((nu - 3 * p) * a(nu) + a(nu - 1)));
  CHECK_THROWS_AS(gamma_coefficients(0, 2.0), ParameterError);
  CHECK_THROWS_AS(gamma_coefficients(9, 2.0), ParameterError);
  CHECK_THROWS_AS(gamma_coefficients(2, 0.0), ParameterError);
}

TEST_CASE("p-norms") {
  const std::vector<double> x{3.0, -4.0};
  CHECK(PNorm(2, 2)(x) == doctest::Approx(5.0));
  CHECK(PNorm(1, 2)(x) == doctest::Approx(7.0));
  CHECK(PNorm(kInf, 2)(x) == 4.0);
  CHECK(PNorm(kInf, 2).is_max());
}

TEST_CASE("mixed derivative closed forms") {
  const auto e = pf::exp_decay(1);
  const std::vector<double> one{1.7};
  CHECK(mixed_derivative(e, PNorm(1, 1), one).real() == doctest::Approx(-std::exp(-1.7)));
  CHECK(mixed_derivative(e, PNorm(3, 1), one).real() == doctest::Approx(-std::exp(-1.7)));

  const std::vector<double> x{1.0, 1.0};
  const double r = std::sqrt(2.0);
  CHECK(mixed_derivative(e, PNorm(2, 2), x).real() ==
        doctest::Approx(std::exp(-r) * (0.5 + 1.0 / (2.0 * r))).epsilon(1e-13));

  const auto f = pf::example1(0, 1, 2);
  const std::vector<double> y{0.4, 1.3};
  CHECK(mixed_derivative(f, PNorm(1, 2), y).real() == doctest::Approx(f.real_derivative(2, 1.7)).epsilon(1e-13));

  CHECK_THROWS_AS(mixed_derivative(e, PNorm(kInf, 2), x), ParameterError);
  const std::vector<double> on_plane{1.0, 0.0};
  CHECK_THROWS_AS(mixed_derivative(e, PNorm(2, 2), on_plane), DomainError);
  const std::vector<double> in_band{1.0, 1e-9};
  CHECK_THROWS_AS(mixed_derivative(e, PNorm(0.5, 2), in_band), DomainError);
}

TEST_CASE("mixed derivative against the tensor finite-difference oracle") {
  std::mt19937_64 rng(11);
  const std::vector<Profile> profiles{pf::exp_decay(1), pf::example1(0, 1, 2)};
  for (int d : {2, 3}) {
    for (double p : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      for (const auto& f : profiles) {
        for (int k = 0; k < 10; ++k) {
          const auto x = random_point(rng, d);
          const double exact = mixed_derivative(f, PNorm(p, d), x).real();
          const double fd = mixed_derivative_fd(f, PNorm(p, d), x, 1e-3).real();
          INFO("d=", d, " p=", p, " ", f.descriptor());
          CHECK(std::abs(exact - fd) <= 1e-3 * std::max(std::abs(exact), 1e-3));
        }
      }
    }
  }
}

TEST_CASE("finite differences at d = 1 and p = inf") {
  const auto f = pf::example1(0, 1, 2);
  const std::vector<double> x{0.8};
  CHECK(mixed_derivative_fd(f, PNorm(2, 1), x, 1e-3).real() ==
        doctest::Approx(finite_difference_derivative(f, 1, 0.8, 1e-3).real()).epsilon(1e-6));
  const std::vector<double> off{0.7, 1.4};
  CHECK(std::abs(mixed_derivative_fd(f, PNorm(kInf, 2), off, 1e-3).real()) < 1e-9);
}

TEST_CASE("homogeneity under dilation") {
  const auto f = pf::example1(0, 2, 1);
  const double lambda = 2.5;
  const auto g = pf::scale_argument(f, lambda);
  const std::vector<double> x{0.6, 0.9, 1.1};
  std::vector<double> lx;
  for (double v : x) lx.push_back(lambda * v);
  for (double p : {1.0, 2.0, 3.0}) {
    const double lhs = mixed_derivative(g, PNorm(p, 3), x).real();
    const double rhs = std::pow(lambda, 3) * mixed_derivative(f, PNorm(p, 3), lx).real();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("derivative bound estimates") {
  const auto e = pf::exp_decay(1);
  const auto b1 = derivative_bound_check(e, PNorm(1.5, 1), 1, 200, 3);
  CHECK(b1.gamma0 <= 1.0 + 1e-12);
  CHECK(b1.used == 200);
  const auto b2 = derivative_bound_check(e, PNorm(2, 2), 2, 500, 3);
  CHECK(b2.gamma0 <= 2.0 + 1e-12);
  CHECK(b2.gamma0 > 0.1);
  // the bound is scale free: the dilated profile gives the same order of constant
  const auto b3 = derivative_bound_check(pf::scale_argument(e, 100.0), PNorm(2, 2), 2, 500, 3);
  CHECK(b3.gamma0 <= 2.0 + 1e-12);
  CHECK(derivative_bound_check(e, PNorm(3, 3), 2, 100, 5).gamma0 < 50.0);
  CHECK_THROWS_AS(derivative_bound_check(e, PNorm(0.5, 2), 2, 10), ParameterError);
}

TEST_CASE("reduction constants and values") {
  const auto e = pf::exp_decay(1);
  CHECK(weighted_integral_reduction(e, PNorm(1, 2), 1.0) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(weighted_integral_reduction(e, PNorm(2, 2), 1.0) == doctest::Approx(2 * kPi).epsilon(1e-8));
  CHECK(weighted_integral_reduction(e, PNorm(2, 3), 1.0) == doctest::Approx(8 * kPi).epsilon(1e-8));
  CHECK(weighted_integral_reduction(e, PNorm(kInf, 2), 1.0) == doctest::Approx(8.0).epsilon(1e-8));
  CHECK(weighted_integral_reduction(e, PNorm(2, 2), 2.0) == doctest::Approx(12.0).epsilon(1e-8));
  CHECK_THROWS_AS(weighted_integral_reduction(pf::example1(0, 1, 1), PNorm(2, 2), 1.0), DivergenceError);

  // finite-p constants approach the p = inf constant
  for (int d : {2, 3}) {
    for (double alpha : {1.0, 2.0}) {
      const double lim = reduction_constant(d, kInf, alpha);
      CHECK(reduction_constant(d, 1e3, alpha) == doctest::Approx(lim).epsilon(1e-2));
      CHECK(reduction_constant(d, 1e6, alpha) == doctest::Approx(lim).epsilon(1e-2));
    }
  }
}

TEST_CASE("brute-force weighted integrals") {
  const auto e = pf::exp_decay(1);
  const auto inf = weighted_integral_bruteforce(e, PNorm(kInf, 2), 1.0);
  CHECK_FALSE(inf.inconclusive);
  CHECK(inf.method == "tensor");
  CHECK(inf.value == doctest::Approx(8.0).epsilon(1e-6));
  const auto two = weighted_integral_bruteforce(e, PNorm(2, 2), 2.0);
  CHECK(two.value == doctest::Approx(12.0).epsilon(1e-6));
  const auto three = weighted_integral_bruteforce(e, PNorm(2, 3), 1.0);
  CHECK(three.value == doctest::Approx(8 * kPi).epsilon(1e-6));
}

TEST_CASE("Dirichlet integral by quasi-Monte-Carlo") {
  // alpha = 1, p = 1: int e^{-|x|_1} dx = 2^d
  const auto e = pf::exp_decay(1);
  const auto r = weighted_integral_bruteforce(e, PNorm(1, 4), 1.0, {}, 42);
  CHECK(r.method == "qmc");
  CHECK(r.value == doctest::Approx(16.0).epsilon(1e-2));
  CHECK(weighted_integral_reduction(e, PNorm(1, 4), 1.0) == doctest::Approx(16.0).epsilon(1e-10));
  const auto again = weighted_integral_bruteforce(e, PNorm(1, 4), 1.0, {}, 42);
  CHECK(again.value == r.value);
  CHECK_THROWS_AS(weighted_integral_bruteforce(e, PNorm(1, 6), 1.0), ParameterError);
}

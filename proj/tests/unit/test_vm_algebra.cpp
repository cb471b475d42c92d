#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "multimono/errors.hpp"
#include "multimono/monotone_check.hpp"
#include "multimono/vm_algebra.hpp"
#include "oracles.hpp"

using namespace multimono;
namespace pf = multimono::profiles;

TEST_CASE("V_m norms of the reference profiles") {
  const auto e = vm_norm(pf::exp_decay(1), 1);
  CHECK(e.sup_part == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.variation_part == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(e.total == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(e.status == Convergence::converged);

  const auto tp = vm_norm(pf::trunc_power(1, 1), 1);
  CHECK(tp.sup_part == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tp.variation_part == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tp.jump_part == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tp.total == doctest::Approx(2.0).epsilon(1e-12));

  const auto r = vm_norm(pf::example1(0, 1, 1), 0);
  CHECK(r.total == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("V_m norm of an oscillating tail diverges") {
  const auto n = vm_norm(pf::real_part(pf::example2(1, 0.5)), 1);
  CHECK(n.status == Convergence::divergent);
  CHECK(std::isinf(n.total));
}

TEST_CASE("V_0 norm equals sup plus total variation on tabulated data") {
  std::vector<double> t, v;
  for (int i = 0; i <= 3000; ++i) {
    t.push_back(0.1 + 0.01 * i);
    v.push_back(std::exp(-t.back()) * (1.0 + 0.5 * std::sin(3.0 * t.back())));
  }
  const auto f = pf::tabulated(t, v);
  const auto n = vm_norm(f, 0);
  // dense resampling of the smooth generator
  std::vector<double> dense;
  double sup = 0.0;
  for (int i = 0; i <= 300000; ++i) {
    const double x = 0.1 + 1e-4 * i;
    dense.push_back(std::exp(-x) * (1.0 + 0.5 * std::sin(3.0 * x)));
    sup = std::max(sup, std::abs(dense.back()));
  }
  const double tv = oracle::total_variation(dense);
  CHECK(n.variation_part == doctest::Approx(tv).epsilon(1e-6));
  CHECK(n.sup_part == doctest::Approx(sup).epsilon(1e-6));
}

TEST_CASE("V_0* norm") {
  CHECK(v0star_norm(pf::exp_decay(1)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(v0star_norm(pf::trunc_power(1, 1)) == doctest::Approx(1.0).epsilon(1e-6));

  // f' = -sin(t) e^{-t}
  const auto f = pf::analytic("osc", [](const Jet<double>& t) { return 0.5 * exp(-t) * (sin(t) + cos(t)); });
  const double got = v0star_norm(f);
  const double ref = oracle::dense_majorant_integral([](double t) { return std::abs(std::sin(t)) * std::exp(-t); }, 40.0);
  const double plain = oracle::simpson([](double t) { return std::abs(std::sin(t)) * std::exp(-t); }, 0.0, 40.0, 400000);
  CHECK(got == doctest::Approx(ref).epsilon(2e-4));
  CHECK(got >= plain);

  // |f'| ~ t^{-1/2} on the peaks
  const auto d = v0star_details(pf::real_part(pf::example2(1, 0.5)));
  CHECK(d.status == Convergence::divergent);
}

TEST_CASE("interval norms on [0, b]") {
  const auto [n1, n2] = interval_norms(pf::exp_decay(1), 1.0);
  // int_0^1 t (1 - t) e^{-t} dt = 3/e - 1
  CHECK(n1 == doctest::Approx(3.0 / std::numbers::e - 1.0).epsilon(1e-8));
  CHECK(n1 == doctest::Approx(oracle::simpson([](double t) { return t * (1 - t) * std::exp(-t); }, 0.0, 1.0)).epsilon(1e-10));
  CHECK(n2 == doctest::Approx(1.0 + 1.0 / std::numbers::e).epsilon(1e-4));

  const auto lin = pf::analytic("linear", [](const Jet<double>& t) { return 2.0 - 0.5 * t; });
  CHECK(interval_norms(lin, 3.0).first == doctest::Approx(0.0));

  const auto e2 = pf::example1(0, 1, 2);
  const double full = vm_norm(e2, 1).variation_part;
  const double b1 = interval_norms(e2, 1e3).first;
  const double b2 = interval_norms(e2, 1e5).first;
  CHECK(std::abs(b2 - full) < std::abs(b1 - full));
  CHECK(b2 == doctest::Approx(full).epsilon(1e-3));
}

TEST_CASE("Steklov smoothing") {
  const double h = 0.3;
  const auto s = steklov_smooth(pf::exp_decay(1), h);
  const double factor = std::pow((1 - std::exp(-h)) / h, 2);
  for (double t : {0.1, 1.0, 3.0}) {
    CHECK(s.real_derivative(0, t) == doctest::Approx(std::exp(-t) * factor).epsilon(1e-9));
    CHECK(s.real_derivative(2, t) ==
          doctest::Approx((std::exp(-t - 2 * h) - 2 * std::exp(-t - h) + std::exp(-t)) / (h * h)).epsilon(1e-9));
  }
  const auto lin = pf::analytic("linear", [](const Jet<double>& t) { return 1.0 + 2.0 * t; });
  CHECK(steklov_smooth(lin, 0.5).real_derivative(0, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(steklov_smooth(lin, 0.0), ParameterError);

  const auto f = pf::example1(0, 1, 2);
  double prev_sup = kInf, prev_gap = kInf;
  const double target = vm_norm(f, 1).total;
  for (double hh : {0.1, 0.01, 0.001}) {
    const auto sh = steklov_smooth(f, hh);
    double sup = 0.0;
    for (double t : geometric_grid(1e-3, 1e3, 20)) sup = std::max(sup, std::abs(sh.real_derivative(0, t) - f.real_derivative(0, t)));
    const auto n = vm_norm(sh, 1);
    CHECK(std::isfinite(n.total));
    const double gap = std::abs(n.total - target);
    CHECK(sup < prev_sup);
    CHECK(gap <= prev_gap);
    CHECK(gap <= 5 * hh);
    prev_sup = sup;
    prev_gap = gap;
  }
}

TEST_CASE("decomposition of exp and the triangle") {
  const auto d = decompose(pf::exp_decay(1), 1);
  for (double t : {0.01, 0.5, 2.0, 10.0}) {
    CHECK(d.f1.real_derivative(0, t) == doctest::Approx(-std::exp(-t)).epsilon(1e-7));
    CHECK(d.f2.real_derivative(0, t) == doctest::Approx(-2 * std::exp(-t)).epsilon(1e-7));
    CHECK(d.f1.real_derivative(1, t) == doctest::Approx(std::exp(-t)).epsilon(1e-7));
  }
  CHECK(d.reconstruction_error <= 2e-8);

  const auto tri = decompose(pf::trunc_power(1, 1), 1);
  for (double t : {0.1, 0.5, 0.9, 1.5}) {
    CHECK(tri.f1.real_derivative(0, t) == doctest::Approx(-std::max(1 - t, 0.0)).epsilon(1e-10));
    CHECK(tri.f2.real_derivative(0, t) == doctest::Approx(-2 * std::max(1 - t, 0.0)).epsilon(1e-10));
  }
}

TEST_CASE("decomposition invariants") {
  const std::vector<std::pair<Profile, int>> cases{
      {pf::example1(0, 1, 2), 1},
      {pf::example1(1, 2, 1), 2},
      {pf::real_part(pf::example2(0.5, 2.5)), 1},
      {pf::williamson_synthesize(DiscreteMeasure({{0.5, 1}, {2, 1}}), 2), 2},
      {pf::gaussian(1), 3},
  };
  for (const auto& [f, m] : cases) {
    INFO(f.descriptor(), " m=", m);
    const auto d = decompose(f, m);
    const double fact = std::tgamma(m + 1.0);
    CHECK(d.reconstruction_error <= 2e-8);
    CHECK(d.norm_f1.total <= (1 + 1 / fact) * d.norm_f.total + 1e-6);
    CHECK(d.norm_f2.total <= (2 + 1 / fact) * d.norm_f.total + 1e-6);
    CHECK(sign_pattern_check(d.f1, m + 1, GridSpec{1e-4, 1e4, 16, true}).passed);
    CHECK(sign_pattern_check(d.f2, m + 1, GridSpec{1e-4, 1e4, 16, true}).passed);
    // f1^{(m)} is nonincreasing
    double prev = kInf;
    for (double t : d.test_grid) {
      const double v = d.f1.real_derivative(m, t);
      CHECK(v <= prev + 1e-10);
      prev = v;
    }
  }
}

TEST_CASE("decomposition errors") {
  CHECK_THROWS_AS(decompose(pf::real_part(pf::example2(1, 0.5)), 1), DivergenceError);
  CHECK_THROWS_AS(decompose(pf::example2(1, 2), 1), ParameterError);
}

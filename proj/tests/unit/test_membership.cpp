#include <cmath>
#include <vector>

#include "doctest.h"
#include "multimono/errors.hpp"
#include "multimono/membership.hpp"
#include "oracles.hpp"

using namespace multimono;
namespace pf = multimono::profiles;

TEST_CASE("condition A") {
  const auto e = condition_A(pf::exp_decay(1), 2);
  CHECK(e.status == Status::holds);
  CHECK(e.condition == Condition::A);
  CHECK(e.evidence.parameters.at("integral") == doctest::Approx(1.0).epsilon(1e-5));

  const auto r = condition_A(pf::example1(0, 1, 1), 2);
  CHECK(r.status == Status::holds);
  CHECK(r.evidence.parameters.at("integral") == doctest::Approx(1.0).epsilon(1e-4));

  // f'' = 1/(1+t)^2, integrand ~ t^{-1}
  const auto lg = pf::analytic("log1p", [](const Jet<double>& t) { return -log(1.0 + t); });
  const auto l = condition_A(lg, 2);
  CHECK(l.status == Status::fails);
  CHECK_FALSE(l.evidence.cutoffs.empty());
  CHECK(l.evidence.cutoffs.size() == l.evidence.truncated_values.size());

  std::vector<double> t, v;
  for (int i = 1; i <= 20; ++i) {
    t.push_back(i);
    v.push_back(1.0 / i);
  }
  CHECK_THROWS_AS(condition_A(pf::tabulated(t, v), 5), CapabilityError);
}

TEST_CASE("condition B") {
  CHECK(condition_B(pf::exp_decay(1), 2, 0.5).status == Status::holds);
  // f'' ~ u^{-1.2} = u^{-d(1-p) - 0.2} at d = 2, p = 1/2
  const auto slow = pf::analytic("slow", [](const Jet<double>& t) { return pow(1.0 + t, 0.8); });
  CHECK(condition_B(slow, 2, 0.5).status == Status::fails);
  CHECK_THROWS_AS(condition_B(pf::exp_decay(1), 2, 1.0), ParameterError);
  CHECK_THROWS_AS(condition_B(pf::exp_decay(1), 2, 0.0), ParameterError);

  // p -> 1 recovers the condition A integrand
  const auto f = pf::example1(0, 1, 2);
  const double a = condition_A(f, 2).evidence.parameters.at("integral");
  CHECK(condition_B_integral(f, 2, 0.9999) == doctest::Approx(a).epsilon(2e-3));
}

TEST_CASE("condition C binomial averages") {
  for (int d : {1, 2, 3, 5}) {
    for (double eps : {0.1, 0.7}) {
      CHECK(condition_C_average(d, eps, 1.0) == doctest::Approx(eps + 0.5 * d));
      for (double delta : {1.3, 2.0}) {
        const double expect = (eps + delta - 1) * (std::ldexp(1.0, d) - 1) / std::ldexp(1.0, d) + 0.5 * d +
                              eps / std::ldexp(1.0, d);
        CHECK(condition_C_average(d, eps, delta) == doctest::Approx(expect));
        CHECK(condition_C_average(d, eps, delta) > 0.5 * d);
      }
    }
  }
  CHECK(DecayParams{0.5, 0.6, 1.0}.admissible(2));
  CHECK_FALSE(DecayParams{0.5, 0.4, 1.0}.admissible(2));
}

TEST_CASE("condition C matches the oscillating-profile region at d = 2") {
  const int d = 2;
  int checked = 0;
  for (double alpha : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    for (double beta : {0.3, 0.65, 0.95, 1.25, 1.55}) {
      if (std::abs(2 * beta - d * alpha) < 0.1) continue;
      const auto f = pf::with_cutoff(pf::example2(alpha, beta), 1.0);
      const auto v = condition_C(f, d, DecayParams{beta, 1.0 - alpha, 1.0});
      INFO("alpha=", alpha, " beta=", beta, " ", v.reason);
      CHECK(v.status == (2 * beta > d * alpha ? Status::holds : Status::fails));
      ++checked;
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("condition C support and parameter checks") {
  const auto f = pf::example2(0.5, 1.2);
  const auto nosupp = condition_C(f, 2, DecayParams{1.2, 0.5, 1.0});
  CHECK(nosupp.status == Status::fails);
  CHECK(nosupp.reason.find("support") != std::string::npos);
  CHECK(condition_C(f, 2).status == Status::fails);

  // claimed decay faster than the profile's
  const auto g = pf::with_cutoff(pf::example2(0.5, 1.2), 1.0);
  CHECK(condition_C(g, 2, DecayParams{2.0, 0.5, 1.0}).status == Status::inconclusive);
  // fitted exponents alone
  const auto fitted = condition_C(g, 2);
  CHECK(fitted.status == Status::holds);
  CHECK(fitted.evidence.fitted_exponents.at("eps_hat") == doctest::Approx(1.2).epsilon(1e-3));
  CHECK(fitted.evidence.fitted_exponents.at("delta_hat") == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("corollary membership and the proposition") {
  CHECK(corollary_membership(pf::exp_decay(1), 2, 3.0).status == Status::holds);
  CHECK(corollary_membership(pf::example1(0, 2, 1), 2, 1.0).status == Status::holds);
  const auto flat = corollary_membership(pf::example1(1, 1, 1), 2, 1.0);
  CHECK(flat.status == Status::fails);
  CHECK(flat.reason.find("C0") != std::string::npos);
  const auto small = corollary_membership(pf::exp_decay(1), 2, 0.5);
  CHECK(small.condition == Condition::Corollary2);
  CHECK(small.evidence.parameters.at("m") == 3);
  CHECK(corollary_membership(pf::exp_decay(1), 2, kInf).condition == Condition::Corollary1);

  CHECK(proposition_p2(pf::exp_decay(1), 2).evidence.parameters.at("m") == 2);
  CHECK(proposition_p2(pf::exp_decay(1), 3).evidence.parameters.at("m") == 2);
  CHECK(proposition_p2(pf::exp_decay(1), 4).evidence.parameters.at("m") == 3);
  CHECK(proposition_p2(pf::exp_decay(1), 3).status == Status::holds);
  const auto tri = proposition_p2(pf::trunc_power(1, 1), 1);
  CHECK(tri.status == Status::holds);
  CHECK(tri.evidence.parameters.at("total") == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("parameter classifiers on rational grids") {
  CHECK(example1_classifier(0, 1, 1));
  CHECK_FALSE(example1_classifier(1, 1, 1));
  CHECK_FALSE(example1_classifier(0, 0, 5));
  CHECK_FALSE(example1_classifier(-0.5, 1, 1));
  // 1/3 * 3 == 1 must not count as strictly greater
  CHECK_FALSE(example1_classifier(1.0, 1.0 / 3, 3.0));

  CHECK(example2_classifier(1, 1.2, 2, 2));
  CHECK_FALSE(example2_classifier(1, 0.8, 2, 2));
  CHECK_FALSE(example2_classifier(1, 1.5, 2, 0.5));
  CHECK(example2_classifier(1, 2.5, 2, 0.5));
  CHECK(example2_classifier(1, 1.2, 2, kInf));
  CHECK_FALSE(example2_classifier(0.6, 0.9, 3, 1.0));

  const std::vector<oracle::Rational> values{{0, 1}, {1, 3}, {1, 2}, {1, 1}, {3, 2}, {2, 1}, {3, 1}};
  for (const auto& g : values)
    for (const auto& a : values)
      for (const auto& b : values) {
        const bool expect = a.num > 0 && oracle::product_greater(a, b, g);
        CHECK(example1_classifier(g.value(), a.value(), b.value()) == expect);
      }
}

TEST_CASE("condition B integral is bounded by the V_{d+1} moment") {
  const std::vector<Profile> profiles{pf::exp_decay(1), pf::example1(0, 1, 2), pf::example1(1, 2, 1), pf::gaussian(1)};
  for (const auto& f : profiles) {
    for (double p : {0.25, 0.5, 0.75}) {
      INFO(f.descriptor(), " p=", p);
      CHECK(condition_B_integral(f, 2, p) <= corollary2_bound(f, 2, p) + 1e-6);
    }
  }
  CHECK_THROWS_AS(corollary2_bound(pf::exp_decay(1), 2, 1.0), ParameterError);
}

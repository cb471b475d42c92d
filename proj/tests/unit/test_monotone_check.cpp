#include <cmath>
#include <vector>

#include "doctest.h"
#include "multimono/errors.hpp"
#include "multimono/monotone_check.hpp"
#include "multimono/profile.hpp"

using namespace multimono;
namespace pf = multimono::profiles;

namespace {

Profile tabulated_sinc() {
  std::vector<double> t, v;
  for (int i = 0; i < 4000; ++i) {
    t.push_back(0.01 + 0.005 * i);
    v.push_back(std::sin(t.back()) / t.back());
  }
  return pf::tabulated(t, v);
}

}  // namespace

TEST_CASE("sign pattern of completely monotone and truncated profiles") {
  const auto e = sign_pattern_check(pf::exp_decay(1), 3);
  CHECK(e.passed);
  CHECK(e.per_order_sign_ok.size() == 4);
  CHECK(e.worst_violation == 0.0);
  CHECK(e.certificate == "checked at resolution");
  CHECK(e.grid_points >= 64 * 8);

  const auto tp = sign_pattern_check(pf::trunc_power(2, 1), 2);
  CHECK(tp.passed);

  // orientation flips with the global sign
  const auto neg = pf::analytic("negexp", [](const Jet<double>& t) { return -exp(-t); });
  const auto a = sign_pattern_check(pf::exp_decay(1), 2);
  const auto b = sign_pattern_check(neg, 2);
  CHECK(a.passed);
  CHECK(b.passed);
  CHECK(a.orientation == -b.orientation);
}

TEST_CASE("tabulated sin(t)/t is not monotone") {
  const auto r = sign_pattern_check(tabulated_sinc(), 1, GridSpec{0.01, 20.0, 64, true});
  CHECK_FALSE(r.passed);
  CHECK(r.worst_violation > r.tol);
}

TEST_CASE("complex profiles are checked per component") {
  const auto r = sign_pattern_check(pf::example2(1, 1.2), 1);
  CHECK(r.components.size() == 2);
  CHECK_FALSE(r.passed);
}

TEST_CASE("capability errors propagate") {
  CHECK_THROWS_AS(sign_pattern_check(pf::trunc_power(1, 1), 3), CapabilityError);
  std::vector<double> t, v;
  for (int i = 1; i <= 20; ++i) {
    t.push_back(i);
    v.push_back(1.0 / i);
  }
  CHECK_THROWS_AS(sign_pattern_check(pf::tabulated(t, v), 5), CapabilityError);
}

TEST_CASE("decay limits") {
  const auto e = decay_limits_check(pf::exp_decay(1), 2);
  CHECK(e.passed);
  CHECK(e.orders.size() == 2);
  for (const auto& o : e.orders) {
    CHECK(o.zero_ok);
    CHECK(o.infinity_ok);
  }
  const auto tp = decay_limits_check(pf::trunc_power(2, 1), 2);
  CHECK(tp.passed);
  CHECK(tp.orders[0].at_infinity == 0.0);
  CHECK(decay_limits_check(pf::example1(0, 1, 1), 1).passed);
  // t f'(t) -> -1 for log-type growth, so the limit at infinity is not zero
  const auto lg = pf::analytic("log1p", [](const Jet<double>& t) { return -log(1.0 + t); });
  CHECK_FALSE(decay_limits_check(lg, 1).passed);
}

TEST_CASE("support thresholds") {
  CHECK(support_threshold(pf::trunc_power(2, 1), 2) == doctest::Approx(1.0).epsilon(0.04));
  CHECK(std::isinf(support_threshold(pf::exp_decay(1), 2)));
  const auto w = pf::williamson_synthesize(DiscreteMeasure({{2, 1}}), 2);
  CHECK(support_threshold(w, 2) == doctest::Approx(0.5).epsilon(0.04));

  // successive orders share the threshold
  const auto mix = pf::williamson_synthesize(DiscreteMeasure({{0.5, 1}, {3, 2}}), 3);
  const auto a = support_thresholds(mix, 3);
  REQUIRE(a.size() == 3);
  for (double v : a) CHECK(v == doctest::Approx(2.0).epsilon(0.04));
}

TEST_CASE("sample points respect the domain and breakpoints") {
  const auto pts = sample_points(pf::trunc_power(2, 1), GridSpec{});
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  int near = 0;
  for (double t : pts)
    if (std::abs(t - 1.0) < 1e-6) ++near;
  CHECK(near >= 4);
}

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multimono/errors.hpp"
#include "multimono/fourier_oracle.hpp"
#include "multimono/membership.hpp"
#include "multimono/monotone_check.hpp"
#include "multimono/radial_calculus.hpp"
#include "multimono/vm_algebra.hpp"
#include "oracles.hpp"

using namespace multimono;
namespace pf = multimono::profiles;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail << "first failure: " << what << "; ";
      passed = false;
    }
  }
};

int failures = 0;

void run(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.passed = false;
    out.detail << "exception: " << e.what() << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s [%d] %s (%s%.2f s)\n", out.passed ? "PASS" : "FAIL", id, title, out.detail.str().c_str(), secs);
  std::fflush(stdout);
  if (!out.passed) ++failures;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Test-profile suite shared by the decomposition and soundness criteria.
struct Case {
  Profile f;
  int m;
};

std::vector<Case> profile_suite() {
  return {
      {pf::exp_decay(1), 1},
      {pf::exp_decay(2), 3},
      {pf::gaussian(1), 3},
      {pf::example1(0, 1, 2), 1},
      {pf::example1(0, 2, 1), 2},
      {pf::example1(1, 2, 1), 2},
      {pf::example1(0, 1, 3), 3},
      {pf::real_part(pf::example2(0.5, 2.5)), 1},
      {pf::trunc_power(1, 1), 1},
      {pf::trunc_power(2, 1), 2},
      {pf::williamson_synthesize(DiscreteMeasure({{0.5, 1}, {2, 1}}), 2), 2},
      {pf::williamson_synthesize(DiscreteMeasure({{1, 1}, {3, 0.5}, {5, 2}}), 3), 3},
  };
}

}  // namespace

int main() {
  run(1, "oscillating-profile L1 ladder at alpha = 1, d = 2, p = 2 matches 2 beta > d alpha", [](Outcome& o) {
    const std::vector<std::pair<double, Status>> cases{
        {0.7, Status::fails}, {0.9, Status::fails}, {1.1, Status::holds}, {1.4, Status::holds}};
    for (const auto& [beta, expect] : cases) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto s = l1_convergence_study(pf::example2(1, beta), PNorm(2, 2));
      const double secs = seconds_since(t0);
      o.detail << "beta=" << beta << ":" << to_string(s.verdict.status) << " ";
      o.require(s.verdict.status == expect, "beta=" + fmt(beta) + " verdict");
      o.require(secs <= 60.0, "beta=" + fmt(beta) + " took " + fmt(secs) + " s");
      o.require(s.ladder.back().N <= 2048, "ladder N above 2048");
    }
  });

  run(2, "weighted-integral reduction agrees with brute force for g = e^{-t}", [](Outcome& o) {
    const auto g = pf::exp_decay(1);
    double worst = 0.0;
    for (int d : {2, 3}) {
      for (double p : {1.0, 2.0, 3.0, kInf}) {
        for (double alpha : {1.0, 2.0}) {
          const double red = weighted_integral_reduction(g, PNorm(p, d), alpha);
          const auto bf = weighted_integral_bruteforce(g, PNorm(p, d), alpha);
          const double rel = std::abs(red - bf.value) / std::abs(bf.value);
          worst = std::max(worst, rel);
          o.require(!bf.inconclusive && rel <= 1e-3,
                    "d=" + std::to_string(d) + " p=" + fmt(p) + " alpha=" + fmt(alpha));
        }
      }
    }
    const double ball = weighted_integral_reduction(g, PNorm(2, 3), 1.0);
    const double exact = 8 * std::numbers::pi;
    o.require(std::abs(ball - exact) <= 1e-8 * exact, "d=3 p=2 alpha=1 is not 8 pi");
    o.detail << "worst rel " << fmt(worst) << ", d=3 p=2 alpha=1 -> " << fmt(ball) << "; ";
  });

  run(3, "mixed derivative formula agrees with tensor finite differences", [](Outcome& o) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.3, 2.0);
    const std::vector<Profile> profiles{pf::exp_decay(1), pf::example1(0, 1, 2)};
    double worst = 0.0;
    int points = 0;
    for (int d : {2, 3}) {
      for (double p : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        for (const auto& f : profiles) {
          for (int k = 0; k < 10; ++k) {
            std::vector<double> x(d);
            for (double& v : x) v = u(rng);
            const double exact = mixed_derivative(f, PNorm(p, d), x).real();
            const double fd = mixed_derivative_fd(f, PNorm(p, d), x, 1e-3).real();
            const double rel = std::abs(exact - fd) / std::max(std::abs(exact), 1e-3);
            worst = std::max(worst, rel);
            o.require(rel <= 1e-3, f.descriptor() + " d=" + std::to_string(d) + " p=" + fmt(p));
            ++points;
          }
        }
      }
    }
    const auto t = gamma_coefficients(2, 2.0);
    o.require(t(1) == -1.0 && t(2) == 1.0, "d=2 p=2 table is not (-1, 1)");
    o.detail << points << " points, worst rel " << fmt(worst) << "; ";
  });

  run(4, "decomposition into two m-monotone parts", [](Outcome& o) {
    const QuadratureSpec quad;
    const double target = 2 * quad.abs_tol;
    double worst = 0.0;
    const auto suite = profile_suite();
    for (const auto& [f, m] : suite) {
      const std::string tag = f.descriptor() + " m=" + std::to_string(m);
      const auto d = decompose(f, m, quad);
      const double fact = std::tgamma(m + 1.0);
      worst = std::max(worst, d.reconstruction_error);
      o.require(d.reconstruction_error <= target, tag + " reconstruction " + fmt(d.reconstruction_error));
      o.require(d.norm_f1.total <= (1 + 1 / fact) * d.norm_f.total + 1e-6, tag + " norm of f1");
      o.require(d.norm_f2.total <= (2 + 1 / fact) * d.norm_f.total + 1e-6, tag + " norm of f2");
      const GridSpec grid{1e-4, 1e4, 16, true};
      o.require(sign_pattern_check(d.f1, m + 1, grid).passed, tag + " f1 sign pattern");
      o.require(sign_pattern_check(d.f2, m + 1, grid).passed, tag + " f2 sign pattern");
    }
    o.detail << suite.size() << " profiles, worst reconstruction " << fmt(worst) << "; ";
  });

  run(5, "random Williamson mixtures are m-monotone", [](Outcome& o) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> atoms(1, 6), order(1, 3);
    std::uniform_real_distribution<double> logu(-1.0, 1.0), weight(0.1, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<DiscreteMeasure::Atom> a(atoms(rng));
      for (auto& at : a) at = {std::pow(10.0, logu(rng)), weight(rng)};
      const int m = order(rng);
      const auto f = pf::williamson_synthesize(DiscreteMeasure(a), m);
      const auto r = sign_pattern_check(f, m);
      worst = std::max(worst, r.worst_violation);
      const std::string tag = "trial " + std::to_string(trial) + " m=" + std::to_string(m);
      o.require(r.passed && r.worst_violation <= 1e-12, tag + " sign pattern");
      if (m >= 2) o.require(decay_limits_check(f, m - 1).passed, tag + " decay limits");
    }
    o.detail << "worst violation " << fmt(worst) << "; ";
  });

  run(6, "Polya-type profiles have nonnegative transforms on the finest rung", [](Outcome& o) {
    const std::vector<std::pair<Profile, int>> cases{{pf::trunc_power(1, 1), 1}, {pf::trunc_power(2, 1), 2}};
    for (const auto& [f, d] : cases) {
      const auto s = l1_convergence_study(f, PNorm(2, d));
      const auto& top = s.ladder.back();
      o.detail << "d=" << d << " min/max " << fmt(top.min_real_part / top.max_abs) << " ";
      o.require(top.min_real_part >= -1e-6 * top.max_abs, f.descriptor() + " d=" + std::to_string(d));
    }
  });

  run(7, "no profile is a member by the norm test while the L1 ladder fails", [](Outcome& o) {
    std::vector<Profile> suite;
    for (const auto& c : profile_suite()) suite.push_back(c.f);
    for (double beta : {0.7, 1.4, 2.5}) suite.push_back(pf::example2(1, beta));
    suite.push_back(pf::example1(0, 1, 1));
    suite.push_back(pf::example1(1, 1, 1));
    int members = 0, failing = 0;
    for (const auto& f : suite) {
      // profiles without the derivatives the norm test needs make no membership claim
      Status member = Status::inconclusive;
      try {
        member = corollary_membership(f, 2, 2.0).status;
      } catch (const CapabilityError&) {
      }
      const auto ladder = l1_convergence_study(f, PNorm(2, 2));
      members += member == Status::holds;
      failing += ladder.verdict.status == Status::fails;
      o.require(!(member == Status::holds && ladder.verdict.status == Status::fails), f.descriptor());
    }
    o.detail << suite.size() << " profiles, " << members << " members, " << failing << " ladder failures; ";
  });

  run(8, "condition B integral is bounded by the V_{d+1} moment at d = 2", [](Outcome& o) {
    const std::vector<Profile> profiles{pf::exp_decay(1), pf::example1(0, 1, 2), pf::example1(1, 2, 1),
                                        pf::gaussian(1), pf::example1(0, 2, 2)};
    double slack = kInf;
    for (const auto& f : profiles) {
      for (double p : {0.25, 0.5, 0.75}) {
        const double lhs = condition_B_integral(f, 2, p);
        const double rhs = corollary2_bound(f, 2, p);
        slack = std::min(slack, rhs - lhs);
        o.require(lhs <= rhs + 1e-6, f.descriptor() + " p=" + fmt(p));
      }
    }
    o.detail << "smallest slack " << fmt(slack) << "; ";
  });

  run(9, "example classifiers on a 7 x 7 rational grid", [](Outcome& o) {
    using oracle::Rational;
    const std::vector<Rational> grid{{0, 1}, {1, 3}, {1, 2}, {1, 1}, {3, 2}, {2, 1}, {3, 1}};
    const auto t0 = std::chrono::steady_clock::now();
    int checked = 0;
    for (const auto& a : grid) {
      for (const auto& b : grid) {
        for (const auto& g : grid) {
          const bool expect = a.num > 0 && oracle::product_greater(a, b, g);
          o.require(example1_classifier(g.value(), a.value(), b.value()) == expect, "example1_classifier");
          ++checked;
        }
        for (int d : {1, 2, 3}) {
          for (double p : {0.5, 1.0, 2.0, kInf}) {
            // 2 beta > d alpha for p >= 1, beta > d alpha below
            const bool expect = b.num > 0 && (p >= 1.0 ? oracle::scaled_greater(2, b, Rational{d * a.num, a.den})
                                                       : oracle::scaled_greater(1, b, Rational{d * a.num, a.den}));
            o.require(example2_classifier(a.value(), b.value(), d, p) == expect, "example2_classifier");
            ++checked;
          }
        }
      }
    }
    const double ms = 1e3 * seconds_since(t0);
    o.require(ms < 1.0, "took " + fmt(ms) + " ms");
    o.detail << checked << " points; ";
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

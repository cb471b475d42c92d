#pragma once

// Discrete Fourier analysis of f0(|x|_{p,d}) on [-L, L)^d.
//
// Convention: f(x) = int g(y) e^{-i(x,y)} dy, so
//   g(y) = (2 pi)^{-d} int f(x) e^{i(x,y)} dx.
// Samples sit at x_k = (k - N/2) h with h = 2L/N (the origin is a sample,
// valued f0(+0)); frequencies at y_m = (m - N/2) pi/L. The discrete pair is
//   g_m = (h/2pi)^d sum_k f_k e^{i x_k y_m},   f_k = (pi/L)^d sum_m g_m e^{-i x_k y_m}.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "multimono/profile.hpp"
#include "multimono/radial_calculus.hpp"
#include "multimono/verdict.hpp"

namespace multimono {

struct GridField {
  enum class Space { physical, frequency };

  int d = 1;
  double L = 1.0;
  int N = 2;
  Space space = Space::physical;
  std::vector<Complex> values;  // row-major, last axis fastest

  double spacing() const { return 2.0 * L / N; }
  double frequency_spacing() const;
  /// Coordinate of index k along an axis in this field's space.
  double coordinate(int k) const;
  std::size_t size() const { return values.size(); }
};

/// Samples f0(|x|_p) on the grid. d in 1..3, N a power of two with N^d <= 2^24.
GridField sample_radial(const Profile& f, const PNorm& pn, double L, int N);

/// Samples an arbitrary function of x.
GridField sample_function(const std::function<Complex(std::span<const double>)>& f, int d, double L, int N);

/// Physical -> frequency (g from f).
GridField transform(const GridField& field);
/// Frequency -> physical (f from g).
GridField synthesize(const GridField& field);

struct Positivity {
  double min_real = 0.0;
  double max_imag_abs = 0.0;
  double max_abs = 0.0;
};

Positivity positivity_check(const GridField& freq);

/// sum |g_m| (pi/L)^d.
double l1_norm(const GridField& freq);

/// Plancherel energies: sum |f|^2 h^d and (2 pi)^d sum |g|^2 (pi/L)^d.
std::pair<double, double> energies(const GridField& phys, const GridField& freq);

struct LadderSpec {
  double L0 = 10.0;
  int N0 = 128;
  int steps = 4;
  bool taper = true;  // smooth window: 1 on |x_j| <= L/2, 0 from 0.95 L
};

struct LadderRung {
  double L = 0.0;
  int N = 0;
  double l1_estimate = 0.0;
  double min_real_part = 0.0;
  double max_abs = 0.0;
};

struct ConvergenceStudy {
  std::vector<LadderRung> ladder;
  double fitted_growth = 0.0;  // slope of log l1 against log L
  double last_relative_change = 0.0;
  Verdict verdict;
};

/// Cauchy test on the L1 estimates along (L0 2^s, N0 2^s): holds when the last
/// relative change is below 2%, fails when the sequence grows monotonically
/// and a log or power trend fits with R^2 > 0.95, inconclusive otherwise.
ConvergenceStudy l1_convergence_study(const Profile& f, const PNorm& pn, const LadderSpec& spec = {});

/// Maximum samples per axis for a dimension.
int max_axis_samples(int d);

struct Lemma3Options {
  double y_min = 1.0 / 256;
  double y_max = 256.0;
  int points_per_octave = 0;  // 0 picks 16 (d <= 2) or 6 (d = 3)
  QuadratureSpec quad;
};

/// Finiteness of int_{R^d} sup_{x_j >= |y_j|} |d_1..d_d f0(|x|_p)| dy, with the
/// majorant taken as a suffix maximum over a tensor grid on the positive orthant.
/// For d = 1 this is the V0* integral.
Verdict lemma3_predicate(const Profile& f, const PNorm& pn, const Lemma3Options& opt = {});

}  // namespace multimono

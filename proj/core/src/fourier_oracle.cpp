#include "multimono/fourier_oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "multimono/errors.hpp"
#include "multimono/vm_algebra.hpp"

namespace multimono {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

void check_shape(int d, int N) {
  if (d < 1 || d > 3) throw ParameterError("fourier oracle: d must be 1, 2 or 3");
  if (!power_of_two(N)) throw ParameterError("fourier oracle: N must be a power of two");
  if (N > max_axis_samples(d)) {
    std::ostringstream os;
    os << "fourier oracle: N = " << N << " exceeds the limit " << max_axis_samples(d) << " for d = " << d;
    throw ParameterError(os.str());
  }
}

std::size_t total(int d, int N) {
  std::size_t n = 1;
  for (int j = 0; j < d; ++j) n *= static_cast<std::size_t>(N);
  return n;
}

// Parity of the index sum of a flat row-major index.
int index_parity(std::size_t flat, int d, int N) {
  int s = 0;
  for (int j = 0; j < d; ++j) {
    s += static_cast<int>(flat % N);
    flat /= N;
  }
  return s & 1;
}

void fft_inplace(std::vector<Complex>& a, int d, int N, int direction) {
  std::vector<int> dims(d, N);
  auto* data = reinterpret_cast<fftw_complex*>(a.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(d, dims.data(), data, data, direction, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

// Exchanges the two spaces: shifts by (-1)^k before and (-1)^m (-1)^{d N/2} after.
GridField exchange(const GridField& in, int direction, double weight, GridField::Space to) {
  GridField out = in;
  out.space = to;
  const int d = in.d, N = in.N;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    if (index_parity(i, d, N)) out.values[i] = -out.values[i];
  fft_inplace(out.values, d, N, direction);
  const double global = ((d * (N / 2)) % 2 == 0) ? weight : -weight;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] *= index_parity(i, d, N) ? -global : global;
  return out;
}

double window(double u) {
  const double a = std::abs(u);
  if (a <= 0.5) return 1.0;
  if (a >= 0.95) return 0.0;
  const double s = (a - 0.5) / 0.45;
  const double e0 = std::exp(-1.0 / s), e1 = std::exp(-1.0 / (1.0 - s));
  return 1.0 - e0 / (e0 + e1);
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y, double* slope) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double vx = n * sxx - sx * sx, vy = n * syy - sy * sy, cxy = n * sxy - sx * sy;
  if (slope) *slope = vx > 0 ? cxy / vx : 0.0;
  if (vx <= 0 || vy <= 0) return 0.0;
  return cxy * cxy / (vx * vy);
}

}  // namespace

int max_axis_samples(int d) {
  switch (d) {
    case 1: return 1 << 20;
    case 2: return 1 << 12;
    case 3: return 1 << 8;
  }
  return 0;
}

double GridField::frequency_spacing() const { return std::numbers::pi / L; }

double GridField::coordinate(int k) const {
  const double step = space == Space::physical ? spacing() : frequency_spacing();
  return (k - N / 2) * step;
}

GridField sample_function(const std::function<Complex(std::span<const double>)>& f, int d, double L, int N) {
  check_shape(d, N);
  if (!(L > 0.0)) throw ParameterError("fourier oracle: L must be positive");
  GridField g;
  g.d = d;
  g.L = L;
  g.N = N;
  g.values.resize(total(d, N));
  std::vector<double> x(d);
  const double h = g.spacing();
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    std::size_t flat = i;
    for (int j = d - 1; j >= 0; --j) {
      x[j] = (static_cast<int>(flat % N) - N / 2) * h;
      flat /= N;
    }
    const Complex v = f(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("fourier oracle: non-finite sample");
    g.values[i] = v;
  }
  return g;
}

GridField sample_radial(const Profile& f, const PNorm& pn, double L, int N) {
  const Complex at_zero = f.value_at_zero();
  return sample_function(
      [&](std::span<const double> x) {
        const double r = pn(x);
        return r == 0.0 ? at_zero : f(r);
      },
      pn.d, L, N);
}

GridField transform(const GridField& field) {
  if (field.space != GridField::Space::physical) throw ParameterError("transform: field is not in physical space");
  const double w = std::pow(field.spacing() / (2.0 * std::numbers::pi), field.d);
  return exchange(field, FFTW_BACKWARD, w, GridField::Space::frequency);
}

GridField synthesize(const GridField& field) {
  if (field.space != GridField::Space::frequency) throw ParameterError("synthesize: field is not in frequency space");
  const double w = std::pow(field.frequency_spacing(), field.d);
  return exchange(field, FFTW_FORWARD, w, GridField::Space::physical);
}

Positivity positivity_check(const GridField& freq) {
  Positivity p;
  p.min_real = kInf;
  for (const Complex& v : freq.values) {
    p.min_real = std::min(p.min_real, v.real());
    p.max_imag_abs = std::max(p.max_imag_abs, std::abs(v.imag()));
    p.max_abs = std::max(p.max_abs, std::abs(v));
  }
  return p;
}

double l1_norm(const GridField& freq) {
  double s = 0.0;
  for (const Complex& v : freq.values) s += std::abs(v);
  return s * std::pow(freq.frequency_spacing(), freq.d);
}

std::pair<double, double> energies(const GridField& phys, const GridField& freq) {
  double ep = 0.0, ef = 0.0;
  for (const Complex& v : phys.values) ep += std::norm(v);
  for (const Complex& v : freq.values) ef += std::norm(v);
  ep *= std::pow(phys.spacing(), phys.d);
  ef *= std::pow(2.0 * std::numbers::pi * freq.frequency_spacing(), freq.d);
  return {ep, ef};
}

ConvergenceStudy l1_convergence_study(const Profile& f, const PNorm& pn, const LadderSpec& spec) {
  if (spec.steps < 1) throw ParameterError("l1_convergence_study: need at least one rung");
  ConvergenceStudy study;
  Verdict& v = study.verdict;
  v.condition = Condition::FFTOracle;
  bool truncated = false;
  for (int s = 0; s < spec.steps; ++s) {
    const double L = spec.L0 * std::ldexp(1.0, s);
    const long long N = static_cast<long long>(spec.N0) << s;
    if (N > max_axis_samples(pn.d)) {
      truncated = true;
      v.evidence.notes.push_back("ladder truncated at the sample limit for this dimension");
      break;
    }
    GridField phys = sample_radial(f, pn, L, static_cast<int>(N));
    if (spec.taper) {
      const int d = pn.d;
      const double h = phys.spacing();
      for (std::size_t i = 0; i < phys.values.size(); ++i) {
        std::size_t flat = i;
        double w = 1.0;
        for (int j = 0; j < d; ++j) {
          w *= window((static_cast<int>(flat % N) - N / 2) * h / L);
          flat /= N;
        }
        phys.values[i] *= w;
      }
    }
    const GridField g = transform(phys);
    const Positivity pos = positivity_check(g);
    study.ladder.push_back({L, static_cast<int>(N), l1_norm(g), pos.min_real, pos.max_abs});
  }

  const std::size_t n = study.ladder.size();
  std::vector<double> logL, l1, logl1;
  for (const auto& r : study.ladder) {
    v.evidence.cutoffs.push_back(r.L);
    v.evidence.truncated_values.push_back(r.l1_estimate);
    logL.push_back(std::log(r.L));
    l1.push_back(r.l1_estimate);
    logl1.push_back(std::log(std::max(r.l1_estimate, 1e-300)));
  }
  if (n < 2) {
    v.status = Status::inconclusive;
    v.reason = "fewer than two ladder rungs";
    return study;
  }
  double power_slope = 0.0, log_slope = 0.0;
  const double r2_power = r_squared(logL, logl1, &power_slope);
  const double r2_log = r_squared(logL, l1, &log_slope);
  study.fitted_growth = power_slope;
  study.last_relative_change = std::abs(l1[n - 1] - l1[n - 2]) / std::max(l1[n - 2], 1e-300);
  v.evidence.fitted_exponents["power_growth"] = power_slope;
  v.evidence.fitted_exponents["log_growth"] = log_slope;
  v.evidence.parameters["r2_power"] = r2_power;
  v.evidence.parameters["r2_log"] = r2_log;
  v.evidence.parameters["last_relative_change"] = study.last_relative_change;

  bool increasing = true;
  for (std::size_t i = 1; i < n; ++i) increasing = increasing && l1[i] > l1[i - 1];
  std::ostringstream os;
  os << "last relative change " << study.last_relative_change;
  if (study.last_relative_change < 0.02) {
    v.status = Status::holds;
  } else if (increasing && n >= 3 &&
             ((r2_power > 0.95 && power_slope > 0) || (r2_log > 0.95 && log_slope > 0))) {
    v.status = Status::fails;
    os << "; monotone growth, power slope " << power_slope << " (R^2 " << r2_power << "), log slope "
       << log_slope << " (R^2 " << r2_log << ")";
  } else {
    v.status = Status::inconclusive;
  }
  if (truncated && v.status != Status::holds) v.status = Status::inconclusive;
  v.reason = os.str();
  return study;
}

Verdict lemma3_predicate(const Profile& f, const PNorm& pn, const Lemma3Options& opt) {
  const int d = pn.d;
  if (d < 1 || d > 3) throw ParameterError("lemma3_predicate: d must be 1, 2 or 3");
  Verdict v;
  v.condition = Condition::Lemma3;
  if (d == 1) {
    const auto r = v0star_details(f, opt.quad);
    v.status = status_from(r.status);
    v.evidence.cutoffs = r.cutoffs;
    v.evidence.truncated_values = r.truncated_values;
    v.evidence.fitted_exponents["tail_slope"] = r.tail_slope;
    v.evidence.parameters["integral"] = 2.0 * r.value;
    v.reason = "one-dimensional majorant integral " + to_string(r.status);
    return v;
  }
  if (pn.is_max()) throw ParameterError("lemma3_predicate: p must be finite");
  const int ppo = opt.points_per_octave > 0 ? opt.points_per_octave : (d <= 2 ? 16 : 6);
  const int oct_lo = static_cast<int>(std::lround(std::log2(opt.y_min)));
  const int oct_hi = static_cast<int>(std::lround(std::log2(opt.y_max)));
  if (oct_hi - oct_lo < 6) throw ParameterError("lemma3_predicate: grid must span at least 6 octaves");
  std::vector<double> c{0.0};
  for (int i = 0; i <= (oct_hi - oct_lo) * ppo; ++i) c.push_back(std::exp2(oct_lo + double(i) / ppo));
  const int n = static_cast<int>(c.size());
  std::size_t cells = 1;
  for (int j = 0; j < d; ++j) cells *= n;

  std::vector<double> M(cells, 0.0);
  std::vector<int> idx(d);
  std::vector<double> x(d);
  int excluded = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    std::size_t flat = i;
    for (int j = d - 1; j >= 0; --j) {
      idx[j] = static_cast<int>(flat % n);
      flat /= n;
      x[j] = c[std::max(idx[j], 1)];
    }
    try {
      M[i] = std::abs(mixed_derivative(f, pn, x));
    } catch (const DomainError&) {
      ++excluded;
    }
  }
  // Suffix maximum along each axis.
  std::size_t stride = 1;
  for (int j = d - 1; j >= 0; --j) {
    for (std::size_t i = 0; i < cells; ++i) {
      const int k = static_cast<int>((i / stride) % n);
      if (k == 0) {
        for (int q = n - 2; q >= 0; --q) {
          const std::size_t a = i + q * stride, b = a + stride;
          M[a] = std::max(M[a], M[b]);
        }
      }
    }
    stride *= n;
  }

  std::vector<double> shells(oct_hi - oct_lo, 0.0);
  double head = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    std::size_t flat = i;
    double vol = 1.0, upper = 0.0;
    bool inside = true;
    for (int j = d - 1; j >= 0; --j) {
      const int k = static_cast<int>(flat % n);
      flat /= n;
      if (k + 1 >= n) {
        inside = false;
        break;
      }
      vol *= c[k + 1] - c[k];
      upper = std::max(upper, c[k + 1]);
    }
    if (!inside) continue;
    const double contrib = M[i] * vol;
    const int s = static_cast<int>(std::ceil(std::log2(upper) - 1e-9)) - oct_lo - 1;
    if (s < 0) {
      head += contrib;
    } else {
      shells[std::min<std::size_t>(s, shells.size() - 1)] += contrib;
    }
  }
  const double sigma = block_growth(shells, 5);
  const Convergence status = classify_growth(sigma, opt.quad);
  double partial = head;
  for (std::size_t s = 0; s < shells.size(); ++s) {
    partial += shells[s];
    v.evidence.cutoffs.push_back(std::exp2(oct_lo + 1 + static_cast<int>(s)));
    v.evidence.truncated_values.push_back(std::ldexp(partial, d));
  }
  v.status = status_from(status);
  v.evidence.fitted_exponents["shell_growth"] = sigma;
  v.evidence.parameters["integral"] = status == Convergence::divergent ? kInf : std::ldexp(partial, d);
  v.evidence.parameters["guard_band_exclusions"] = excluded;
  std::ostringstream os;
  os << "tensor majorant integral " << to_string(status) << ", shell growth exponent " << sigma;
  v.reason = os.str();
  return v;
}

}  // namespace multimono

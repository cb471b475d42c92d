#include "multimono/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "multimono/errors.hpp"

namespace multimono {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

double checked(const RealFn& f, double t) {
  const double v = f(t);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "integrand is not finite at t = " << t;
    throw DomainError(os.str());
  }
  return v;
}

Panel gk15(const RealFn& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = checked(f, c);
  double k = kWgk[7] * fc, g = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double s = checked(f, c - x) + checked(f, c + x);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

IntegralResult integrate_split(const RealFn& f, double a, double b, std::span<const double> bps,
                               double abs_tol, double rel_tol, int max_intervals) {
  std::vector<double> cuts{a};
  for (double p : bps)
    if (p > a && p < b) cuts.push_back(p);
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);
  IntegralResult out;
  const double share = abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (!(cuts[k + 1] > cuts[k])) continue;
    const auto r = integrate_adaptive(f, cuts[k], cuts[k + 1], share, rel_tol, max_intervals);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.ok = out.ok && r.ok;
  }
  return out;
}

double fit_growth(const std::vector<double>& blocks, int window) {
  const int n = static_cast<int>(blocks.size());
  const int m = std::min(window, n);
  if (m < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int j = n - m; j < n; ++j) {
    const double y = std::log2(std::max(std::abs(blocks[j]), 1e-300));
    sx += j;
    sy += y;
    sxx += double(j) * j;
    sxy += j * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

bool trailing_zeros(const std::vector<double>& blocks, int count) {
  const int n = static_cast<int>(blocks.size());
  if (n < count) return false;
  for (int j = n - count; j < n; ++j)
    if (blocks[j] != 0.0) return false;
  return true;
}

struct BlockRun {
  double sum = 0.0;
  double error = 0.0;
  double remainder = 0.0;
  double sigma = 0.0;
  Convergence status = Convergence::inconclusive;
  std::vector<double> edges;
  std::vector<double> partial;
};

// Integrates dyadic blocks outward from `start`: [T, 2T] when outward, [s/2, s] otherwise.
BlockRun run_blocks(const RealFn& f, double start, bool outward, std::span<const double> bps,
                    const QuadratureSpec& spec, int min_blocks) {
  BlockRun run;
  std::vector<double> blocks;
  double edge = start;
  const double block_tol = spec.abs_tol / 64.0;
  for (int k = 0; k < spec.max_doublings; ++k) {
    const double a = outward ? edge : 0.5 * edge;
    const double b = outward ? 2.0 * edge : edge;
    const auto r = integrate_split(f, a, b, bps, block_tol, spec.rel_tol, spec.max_intervals);
    blocks.push_back(r.value);
    run.sum += r.value;
    run.error += r.error;
    edge = outward ? b : a;
    run.edges.push_back(edge);
    run.partial.push_back(run.sum);
    if (static_cast<int>(blocks.size()) < min_blocks) continue;
    if (trailing_zeros(blocks, 3)) {
      run.sigma = -std::numeric_limits<double>::infinity();
      run.status = Convergence::converged;
      return run;
    }
    const double sigma = fit_growth(blocks, spec.fit_blocks);
    if (sigma < -spec.slope_margin) {
      const double r2 = std::exp2(sigma);
      const double rem = std::abs(blocks.back()) * r2 / (1.0 - r2);
      const double tol = std::max(block_tol, spec.rel_tol * std::abs(run.sum));
      // The remainder is also settled once the previous window predicts the same value.
      const std::vector<double> prior(blocks.begin(), blocks.end() - 1);
      const double r2p = std::exp2(std::min(fit_growth(prior, spec.fit_blocks), -spec.slope_margin));
      const double remp = std::abs(prior.back()) * r2p * r2p / (1.0 - r2p);
      if (rem <= tol || std::abs(rem - remp) <= tol) {
        run.sigma = sigma;
        run.remainder = std::copysign(rem, blocks.back());
        run.error += std::abs(rem - remp);
        run.status = Convergence::converged;
        return run;
      }
    }
    if (!r.ok) break;
  }
  run.sigma = fit_growth(blocks, spec.fit_blocks);
  run.status = classify_growth(run.sigma, spec);
  if (run.sigma < 0.0) {
    const double r2 = std::exp2(run.sigma);
    run.remainder = std::copysign(std::abs(blocks.back()) * r2 / (1.0 - r2), blocks.back());
  }
  return run;
}

Convergence combine(Convergence a, Convergence b) {
  if (a == Convergence::divergent || b == Convergence::divergent) return Convergence::divergent;
  if (a == Convergence::inconclusive || b == Convergence::inconclusive) return Convergence::inconclusive;
  return Convergence::converged;
}

double power_integral(double a, double b, double k) {
  if (std::abs(k + 1.0) < 1e-14) return std::log(b / a);
  return (std::pow(b, k + 1.0) - std::pow(a, k + 1.0)) / (k + 1.0);
}

}  // namespace

std::string to_string(Convergence c) {
  switch (c) {
    case Convergence::converged: return "converged";
    case Convergence::divergent: return "divergent";
    case Convergence::inconclusive: return "inconclusive";
  }
  return "?";
}

double kronrod15(const RealFn& f, double a, double b) { return gk15(f, a, b).value; }

double block_growth(const std::vector<double>& blocks, int window) {
  if (trailing_zeros(blocks, 3)) return -std::numeric_limits<double>::infinity();
  return fit_growth(blocks, window);
}

IntegralResult integrate_adaptive(const RealFn& f, double a, double b, double abs_tol,
                                  double rel_tol, int max_intervals) {
  if (!(b >= a) || !std::isfinite(a) || !std::isfinite(b))
    throw ParameterError("integrate_adaptive: need finite a <= b");
  IntegralResult out;
  if (a == b) return out;
  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b);
  heap.push(first);
  double total = first.value, err = first.error;
  int evals = 15, intervals = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (intervals >= max_intervals) {
      out.ok = false;
      break;
    }
    const Panel p = heap.top();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      out.ok = false;
      break;
    }
    heap.pop();
    const Panel l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
    evals += 30;
    ++intervals;
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to avoid drift from the incremental updates.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = err;
  out.evaluations = evals;
  return out;
}

Convergence classify_growth(double sigma, const QuadratureSpec& spec) {
  if (sigma < -spec.slope_margin) return Convergence::converged;
  if (sigma >= spec.slope_margin) return Convergence::divergent;
  if (sigma >= -spec.log_band) return Convergence::divergent;
  return Convergence::inconclusive;
}

ImproperResult integrate_improper(const RealFn& f, double lo, double hi,
                                  std::span<const double> breakpoints, const QuadratureSpec& spec) {
  if (!(lo >= 0.0) || !(hi > lo)) throw ParameterError("integrate_improper: need 0 <= lo < hi");
  ImproperResult out;
  const bool open_head = lo == 0.0;
  const bool open_tail = std::isinf(hi);

  if (!open_head && !open_tail) {
    const auto r = integrate_split(f, lo, hi, breakpoints, spec.abs_tol, spec.rel_tol,
                                   spec.max_intervals * 4);
    out.value = r.value;
    out.error = r.error;
    out.status = r.ok ? Convergence::converged : Convergence::inconclusive;
    out.cutoffs.push_back(hi);
    out.truncated_values.push_back(r.value);
    return out;
  }

  // Pivots: head on (0, h0], middle on [h0, t0], tail on [t0, inf).
  const double h0 = open_head ? std::min(1.0, hi) : lo;
  const double t0 = open_tail ? std::max(1.0, lo) : hi;

  double head = 0.0;
  if (open_head) {
    const BlockRun run = run_blocks(f, h0, false, breakpoints, spec, 8);
    head = run.sum + run.remainder;
    out.error += run.error + 0.5 * std::abs(run.remainder);
    out.head_slope = -run.sigma - 1.0;
    out.status = combine(out.status, run.status);
    if (run.status == Convergence::divergent) head = std::copysign(kInf, run.sum);
  }

  double middle = 0.0;
  if (t0 > h0) {
    const auto r = integrate_split(f, h0, t0, breakpoints, spec.abs_tol, spec.rel_tol,
                                   spec.max_intervals * 4);
    middle = r.value;
    out.error += r.error;
    if (!r.ok) out.status = combine(out.status, Convergence::inconclusive);
  }

  double tail = 0.0;
  if (open_tail) {
    const BlockRun run = run_blocks(f, t0, true, breakpoints, spec, spec.min_tail_blocks);
    tail = run.sum + run.remainder;
    out.error += run.error + 0.5 * std::abs(run.remainder);
    out.tail_slope = run.sigma - 1.0;
    out.status = combine(out.status, run.status);
    if (run.status == Convergence::divergent) tail = std::copysign(kInf, run.sum);
    const double base = (std::isfinite(head) ? head : 0.0) + middle;
    for (std::size_t k = 0; k < run.edges.size(); ++k) {
      out.cutoffs.push_back(run.edges[k]);
      out.truncated_values.push_back(base + run.partial[k]);
    }
  } else {
    out.cutoffs.push_back(hi);
    out.truncated_values.push_back(head + middle);
  }
  out.value = head + middle + tail;
  if (out.status == Convergence::divergent && std::isfinite(out.value)) out.value = kInf;
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, double per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || !(per_decade > 0.0))
    throw ParameterError("geometric_grid: need 0 < lo < hi and a positive density");
  const int n = std::max(1, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)));
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = lo * std::pow(hi / lo, double(i) / n);
  t.front() = lo;
  t.back() = hi;
  return t;
}

MajorantResult integrate_majorant(const RealFn& g, double k, const MajorantGrid& grid,
                                  const QuadratureSpec& spec, std::span<const double> extra_points) {
  const int nblocks = spec.min_tail_blocks;
  const double last_edge = std::ldexp(1.0, nblocks);
  if (!(grid.t_min > 0.0) || grid.t_min >= 1.0 || grid.t_max <= last_edge || grid.points < 16)
    throw ParameterError("integrate_majorant: grid must cover [t_min < 1, t_max > 2^blocks]");

  const double decades = std::log10(grid.t_max / grid.t_min);
  std::vector<double> t = geometric_grid(grid.t_min, grid.t_max, (grid.points - 1) / decades);
  for (int j = 0; j <= nblocks; ++j) t.push_back(std::ldexp(1.0, j));
  for (double x : extra_points)
    if (x > grid.t_min && x < grid.t_max) t.push_back(x);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  const int n = static_cast<int>(t.size());

  std::vector<double> h(n), M(n);
  for (int i = 0; i < n; ++i) {
    const double v = g(t[i]);
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream os;
      os << "majorant integrand must be finite and nonnegative; got " << v << " at t = " << t[i];
      throw DomainError(os.str());
    }
    h[i] = v;
  }
  M[n - 1] = h[n - 1];
  for (int i = n - 2; i >= 0; --i) M[i] = std::max(h[i], M[i + 1]);

  auto weighted = [&](double x) { return std::pow(x, k) * std::max(g(x), 0.0); };
  std::vector<double> cum(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    const double P = power_integral(t[i], t[i + 1], k);
    double piece;
    if (h[i] < M[i]) {
      piece = M[i + 1] * P;
    } else {
      const double lo_b = M[i + 1] * P, hi_b = M[i] * P;
      piece = std::clamp(kronrod15(weighted, t[i], t[i + 1]), lo_b, hi_b);
    }
    cum[i + 1] = cum[i] + piece;
  }

  MajorantResult out;
  std::ostringstream note;

  // Head (0, t_min): M ~ M0 (t/t_min)^s, s <= 0.
  if (M[0] > 0.0) {
    int j = 0;
    while (j + 1 < n && t[j] < 10.0 * t[0]) ++j;
    const double s = M[j] == M[0] ? 0.0 : std::log(M[j] / M[0]) / std::log(t[j] / t[0]);
    const double e = k + s + 1.0;
    if (e > spec.slope_margin) {
      out.head = M[0] * std::pow(t[0], k + 1.0) / e;
    } else {
      out.head = kInf;
      note << "majorant not integrable at 0 (local exponent " << (k + s) << "); ";
    }
  }

  auto index_of = [&](double x) {
    return static_cast<int>(std::lower_bound(t.begin(), t.end(), x) - t.begin());
  };
  std::vector<double> blocks;
  for (int j = 0; j < nblocks; ++j) {
    const int a = index_of(std::ldexp(1.0, j)), b = index_of(std::ldexp(1.0, j + 1));
    blocks.push_back(cum[b] - cum[a]);
    out.cutoffs.push_back(std::ldexp(1.0, j + 1));
    out.truncated_values.push_back(out.head + cum[b]);
  }
  double sigma;
  if (trailing_zeros(blocks, 3)) {
    sigma = -std::numeric_limits<double>::infinity();
  } else {
    sigma = fit_growth(blocks, spec.fit_blocks);
  }
  out.tail_slope = sigma - 1.0;
  out.status = classify_growth(sigma, spec);

  // Far tail (t_max, inf) from the last decade of t^k M(t).
  if (M[n - 1] > 0.0) {
    int j = n - 1;
    while (j > 0 && t[j] > 0.1 * t[n - 1]) --j;
    const double wN = std::pow(t[n - 1], k) * M[n - 1], wj = std::pow(t[j], k) * M[j];
    const double q = std::log(wN / wj) / std::log(t[n - 1] / t[j]);
    if (q < -1.0 - spec.log_band) {
      out.tail = wN * t[n - 1] / (-(q + 1.0));
    } else {
      out.tail = kInf;
      if (out.status == Convergence::converged) {
        out.status = Convergence::inconclusive;
        note << "block sums decay but the slope near t = " << t[n - 1] << " is " << q << "; ";
      }
    }
  }
  if (std::isinf(out.head)) out.status = Convergence::divergent;

  if (out.status == Convergence::divergent) {
    out.value = kInf;
  } else {
    out.value = out.head + cum[n - 1] + (std::isfinite(out.tail) ? out.tail : 0.0);
  }
  out.note = note.str();
  return out;
}

double integrate_majorant_finite(const RealFn& g, double a, double b, int points) {
  if (!(b > a) || points < 2) throw ParameterError("integrate_majorant_finite: need a < b");
  std::vector<double> t(points + 1), h(points + 1), M(points + 1);
  for (int i = 0; i <= points; ++i) {
    t[i] = a + (b - a) * i / points;
    h[i] = checked(g, t[i]);
  }
  M[points] = h[points];
  for (int i = points - 1; i >= 0; --i) M[i] = std::max(h[i], M[i + 1]);
  double s = 0.0;
  for (int i = 0; i < points; ++i) {
    const double w = t[i + 1] - t[i];
    if (h[i] < M[i]) {
      s += M[i + 1] * w;
    } else {
      s += std::clamp(kronrod15(g, t[i], t[i + 1]), M[i + 1] * w, M[i] * w);
    }
  }
  return s;
}

}  // namespace multimono

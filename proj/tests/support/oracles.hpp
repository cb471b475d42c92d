#pragma once

// Reference computations that share no code with the library: composite
// Simpson rules, dense backward-max majorants, direct DFT sums, exact
// rational comparisons.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

inline double simpson(const Fn& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Simpson in s = log t over [a, b], 0 < a < b.
inline double log_simpson(const Fn& f, double a, double b, int n = 200000) {
  return simpson([&](double s) { const double t = std::exp(s); return t * f(t); }, std::log(a), std::log(b), n);
}

// int_0^T sup_{u >= t} g(u) dt on a dense uniform grid with the sup taken over [t, T].
inline double dense_majorant_integral(const Fn& g, double T, int n = 2000000) {
  const double h = T / n;
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = g(std::max(i * h, 1e-300));
  for (int i = n - 1; i >= 0; --i) v[i] = std::max(v[i], v[i + 1]);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += 0.5 * (v[i] + v[i + 1]) * h;
  return s;
}

// Direct O(N^2) transform on the origin-centred grid of one axis:
// g_m = (h / 2 pi) sum_k f_k exp(i x_k y_m).
inline std::vector<std::complex<double>> direct_dft_1d(const std::vector<std::complex<double>>& f, double L) {
  const int N = static_cast<int>(f.size());
  const double h = 2.0 * L / N, dy = std::numbers::pi / L;
  std::vector<std::complex<double>> g(N);
  for (int m = 0; m < N; ++m) {
    std::complex<double> s = 0.0;
    for (int k = 0; k < N; ++k) {
      const double phase = ((k - N / 2) * h) * ((m - N / 2) * dy);
      s += f[k] * std::polar(1.0, phase);
    }
    g[m] = s * h / (2.0 * std::numbers::pi);
  }
  return g;
}

inline double total_variation(const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) s += std::abs(v[i] - v[i - 1]);
  return s;
}

struct Rational {
  std::int64_t num;
  std::int64_t den;  // > 0
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// a * b > c, exact.
inline bool product_greater(Rational a, Rational b, Rational c) {
  return a.num * b.num * c.den > c.num * a.den * b.den;
}

// k * a > b, exact.
inline bool scaled_greater(std::int64_t k, Rational a, Rational b) { return k * a.num * b.den > b.num * a.den; }

}  // namespace oracle

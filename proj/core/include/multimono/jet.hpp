#pragma once

// Truncated Taylor series ("jets") used to differentiate the closed-form
// profile families exactly. A jet of order n stores c_0..c_n with
// f(t + h) = sum c_k h^k + O(h^{n+1}); the k-th derivative is k! c_k.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace multimono {

inline double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

template <class T>
class Jet {
 public:
  Jet() = default;
  Jet(int order, T value) : c_(static_cast<std::size_t>(order) + 1, T(0)) { c_[0] = value; }

  /// The identity map t -> t expanded at t0.
  static Jet variable(int order, double t0) {
    Jet j(order, T(t0));
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  T& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  T value() const { return c_[0]; }
  T derivative(int k) const { return c_[static_cast<std::size_t>(k)] * factorial(k); }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= order(); ++k) (*this)[k] += o[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= order(); ++k) (*this)[k] -= o[k];
    return *this;
  }
  Jet& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Jet& operator+=(T s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, T s) { return a += s; }
  friend Jet operator+(T s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, T s) { return a += -s; }
  friend Jet operator-(T s, const Jet& a) { return -a + s; }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }
  friend Jet operator-(Jet a) { return a *= T(-1); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order(), T(0));
    for (int k = 0; k <= a.order(); ++k) {
      T s(0);
      for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
      r[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(a.order(), T(0));
    for (int k = 0; k <= a.order(); ++k) {
      T s = a[k];
      for (int j = 1; j <= k; ++j) s -= b[j] * r[k - j];
      r[k] = s / b[0];
    }
    return r;
  }

  friend Jet operator/(T s, const Jet& b) { return Jet(b.order(), s) / b; }

 private:
  std::vector<T> c_;
};

template <class T>
Jet<T> exp(const Jet<T>& a) {
  Jet<T> e(a.order(), std::exp(a[0]));
  for (int k = 1; k <= a.order(); ++k) {
    T s(0);
    for (int j = 1; j <= k; ++j) s += T(j) * a[j] * e[k - j];
    e[k] = s / T(k);
  }
  return e;
}

template <class T>
Jet<T> log(const Jet<T>& a) {
  Jet<T> l(a.order(), std::log(a[0]));
  for (int k = 1; k <= a.order(); ++k) {
    T s = T(k) * a[k];
    for (int j = 1; j < k; ++j) s -= a[j] * T(k - j) * l[k - j];
    l[k] = s / (T(k) * a[0]);
  }
  return l;
}

/// a^r for a real exponent; requires a[0] != 0.
template <class T>
Jet<T> pow(const Jet<T>& a, double r) {
  Jet<T> p(a.order(), std::pow(a[0], r));
  for (int k = 1; k <= a.order(); ++k) {
    T s(0);
    for (int j = 1; j <= k; ++j) s += T((r + 1.0) * j - k) * a[j] * p[k - j];
    p[k] = s / (T(k) * a[0]);
  }
  return p;
}

template <class T>
void sincos(const Jet<T>& a, Jet<T>& s, Jet<T>& c) {
  s = Jet<T>(a.order(), std::sin(a[0]));
  c = Jet<T>(a.order(), std::cos(a[0]));
  for (int k = 1; k <= a.order(); ++k) {
    T ss(0), cc(0);
    for (int j = 1; j <= k; ++j) {
      ss += T(j) * a[j] * c[k - j];
      cc -= T(j) * a[j] * s[k - j];
    }
    s[k] = ss / T(k);
    c[k] = cc / T(k);
  }
}

template <class T>
Jet<T> sin(const Jet<T>& a) {
  Jet<T> s, c;
  sincos(a, s, c);
  return s;
}

template <class T>
Jet<T> cos(const Jet<T>& a) {
  Jet<T> s, c;
  sincos(a, s, c);
  return c;
}

/// Lifts a real jet to a complex one.
inline Jet<std::complex<double>> to_complex(const Jet<double>& a) {
  Jet<std::complex<double>> r(a.order(), 0.0);
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k];
  return r;
}

}  // namespace multimono

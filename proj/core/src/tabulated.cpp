#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "multimono/errors.hpp"
#include "multimono/profile.hpp"

namespace multimono::profiles {
namespace {

// Fornberg's recursion: weights w[j] such that sum_j w[j] f(x[j]) approximates
// f^{(order)}(z) using the interpolating polynomial through all nodes.
std::vector<double> fornberg_weights(double z, std::span<const double> x, int order) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][order];
  return w;
}

class TabulatedProfile final : public ProfileModel {
 public:
  static constexpr int kMaxOrder = 4;

  TabulatedProfile(std::vector<double> t, std::vector<Complex> v, bool complex)
      : t_(std::move(t)), v_(std::move(v)), complex_(complex) {}

  Complex derivative(int order, double t, Side) const override {
    const int n_nodes = static_cast<int>(t_.size());
    const int n = order + 4;
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    int i = static_cast<int>(it - t_.begin()) - 1;
    i = std::clamp(i, 0, n_nodes - 2);
    int start = i - (n / 2 - 1);
    start = std::clamp(start, 0, n_nodes - n);
    const auto w = fornberg_weights(t, std::span<const double>(t_).subspan(start, n), order);
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) acc += w[j] * v_[start + j];
    return acc;
  }
  int max_order() const override { return kMaxOrder; }
  bool is_complex() const override { return complex_; }
  std::string descriptor() const override {
    std::ostringstream os;
    os << "tabulated(n=" << t_.size() << ",t=[" << t_.front() << "," << t_.back() << "])";
    return os.str();
  }
  Domain domain() const override { return {t_.front(), t_.back()}; }
  int accuracy_order() const override { return 4; }

 private:
  std::vector<double> t_;
  std::vector<Complex> v_;
  bool complex_;
};

}  // namespace

Profile tabulated(std::vector<double> t, std::vector<double> re, std::vector<double> im) {
  if (t.size() != re.size() || (!im.empty() && im.size() != t.size()))
    throw ParameterError("tabulated: column lengths differ");
  if (t.size() < TabulatedProfile::kMaxOrder + 5)
    throw ParameterError("tabulated: need at least 9 samples");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(t[k] > 0.0) || !std::isfinite(t[k])) throw ParameterError("tabulated: t must be > 0");
    if (k > 0 && !(t[k] > t[k - 1])) throw ParameterError("tabulated: t must be strictly increasing");
  }
  std::vector<Complex> v(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) v[k] = Complex(re[k], im.empty() ? 0.0 : im[k]);
  const bool complex = !im.empty();
  return Profile(std::make_shared<TabulatedProfile>(std::move(t), std::move(v), complex));
}

Profile load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("load_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("load_csv: empty file " + path);
  line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
             line.end());
  bool has_im = false;
  if (line == "t,re,im") has_im = true;
  else if (line != "t,re") throw ParameterError("load_csv: header must be 't,re' or 't,re,im'");

  std::vector<double> t, re, im;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ss, cell, ',')) {
      try {
        cells.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParameterError("load_csv: bad number on line " + std::to_string(lineno));
      }
    }
    if (cells.size() != (has_im ? 3u : 2u))
      throw ParameterError("load_csv: wrong column count on line " + std::to_string(lineno));
    t.push_back(cells[0]);
    re.push_back(cells[1]);
    if (has_im) im.push_back(cells[2]);
  }
  return tabulated(std::move(t), std::move(re), std::move(im));
}

}  // namespace multimono::profiles

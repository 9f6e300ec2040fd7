#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sigmafrac {

/// Samples of a function on a uniform grid over [a, b], the carrier for the
/// sampled-data derivative and the Volterra solver. Serialized as two-column
/// CSV with header "t,f".
class GridFunction {
 public:
  GridFunction(double a, double b, std::vector<double> values)
      : a_(a), b_(b), values_(std::move(values)) {
    if (!(b_ > a_)) throw std::invalid_argument("GridFunction: need b > a");
    if (values_.size() < 3)
      throw std::invalid_argument("GridFunction: need at least n = 2 panels (3 samples)");
    for (double v : values_)
      if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite sample");
  }

  template <class F>
  static GridFunction sample(F&& f, double a, double b, std::size_t n) {
    if (n < 2) throw std::invalid_argument("GridFunction::sample: need n >= 2");
    std::vector<double> v(n + 1);
    const double h = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) v[i] = f(a + static_cast<double>(i) * h);
    return GridFunction(a, b, std::move(v));
  }

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t n() const { return values_.size() - 1; }
  double h() const { return (b_ - a_) / static_cast<double>(n()); }
  double node(std::size_t i) const { return a_ + static_cast<double>(i) * h(); }
  const std::vector<double>& values() const { return values_; }

  /// Second-order finite-difference derivative samples: centered in the
  /// interior, one-sided three-point formulas at both ends.
  std::vector<double> derivative_samples() const {
    const std::size_t m = n();
    const double hh = h();
    std::vector<double> d(m + 1);
    d[0] = (-3.0 * values_[0] + 4.0 * values_[1] - values_[2]) / (2.0 * hh);
    for (std::size_t i = 1; i < m; ++i)
      d[i] = (values_[i + 1] - values_[i - 1]) / (2.0 * hh);
    d[m] = (3.0 * values_[m] - 4.0 * values_[m - 1] + values_[m - 2]) / (2.0 * hh);
    return d;
  }

  void write_csv(std::ostream& os) const {
    os << "t,f\n";
    char buf[80];
    for (std::size_t i = 0; i <= n(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", node(i), values_[i]);
      os << buf;
    }
  }

  static GridFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
      throw std::invalid_argument("GridFunction: empty CSV input");
    // header "t,f" (tolerate surrounding whitespace / CR)
    std::vector<double> ts, fs;
    auto parse_row = [&](const std::string& row) {
      const auto comma = row.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("GridFunction: malformed CSV row: " + row);
      ts.push_back(std::stod(row.substr(0, comma)));
      fs.push_back(std::stod(row.substr(comma + 1)));
    };
    if (line.find("t") == std::string::npos || line.find("f") == std::string::npos)
      parse_row(line);  // headerless input: treat first line as data
    while (std::getline(is, line)) {
      if (line.empty() || line == "\r") continue;
      parse_row(line);
    }
    if (ts.size() < 3)
      throw std::invalid_argument("GridFunction: need at least 3 samples");
    const double a = ts.front(), b = ts.back();
    const double h = (b - a) / static_cast<double>(ts.size() - 1);
    if (!(h > 0.0)) throw std::invalid_argument("GridFunction: nodes must increase");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double expect = a + static_cast<double>(i) * h;
      if (std::fabs(ts[i] - expect) > 1e-9 * (b - a))
        throw std::invalid_argument("GridFunction: grid must be uniform");
    }
    return GridFunction(a, b, std::move(fs));
  }

 private:
  double a_, b_;
  std::vector<double> values_;
};

}  // namespace sigmafrac

#include "hetstab/findex.hpp"

#include <algorithm>
#include <cmath>

#include "hetstab/error.hpp"

namespace hetstab {

namespace {

void check_components(const std::vector<double>& c) {
  if (c.empty()) throw Error(ErrorKind::ZeroVector, "alpha has no components");
  bool any_nonzero = false;
  for (double x : c) {
    if (!std::isfinite(x)) throw Error(ErrorKind::NonFiniteValue, "alpha component is not finite");
    if (x != 0.0) any_nonzero = true;
  }
  if (!any_nonzero) throw Error(ErrorKind::ZeroVector, "alpha is the zero vector");
}

}  // namespace

AlphaVector::AlphaVector(std::vector<double> components) : components_(std::move(components)) {
  check_components(components_);
}

AlphaVector::AlphaVector(std::initializer_list<double> components)
    : AlphaVector(std::vector<double>(components)) {}

AlphaVector AlphaVector::negated() const {
  std::vector<double> out(components_.size());
  std::transform(components_.begin(), components_.end(), out.begin(),
                 [](double x) { return -x; });
  return AlphaVector(std::move(out));
}

// Shewchuk's algorithm with the half-way correction used by Python's math.fsum.
double exact_sum(std::span<const double> values) {
  std::vector<double> partials;
  for (double x : values) {
    std::size_t i = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }
  if (partials.empty()) return 0.0;

  std::size_t n = partials.size();
  double hi = partials[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials[--n];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    const double yr = x - hi;
    if (y == yr) hi = x;
  }
  if (!std::isfinite(hi)) {
    double naive = 0.0;
    for (double v : values) naive += v;
    return naive;
  }
  return hi;
}

ExtendedReal f_plus(const AlphaVector& alpha) {
  const auto c = alpha.components();
  const double amin = *std::min_element(c.begin(), c.end());
  if (amin >= 0.0) return ExtendedReal::plus_infinity();
  const double sum = exact_sum(c);
  if (sum <= 0.0) return ExtendedReal(0.0);
  return ExtendedReal(-sum / amin);
}

ExtendedReal f_minus(const AlphaVector& alpha) { return f_plus(alpha.negated()); }

ExtendedReal f_index(const AlphaVector& alpha) { return f_plus(alpha) - f_minus(alpha); }

FIndexValues evaluate_findex(const AlphaVector& alpha) {
  const auto plus = f_plus(alpha);
  const auto minus = f_minus(alpha);
  return {plus, minus, plus - minus};
}

ExtendedReal f_index_n3(double a1, double a2, double a3) {
  const AlphaVector alpha{a1, a2, a3};
  const auto c = alpha.components();
  const double amin = std::min({a1, a2, a3});
  const double amax = std::max({a1, a2, a3});
  if (amin >= 0.0) return ExtendedReal::plus_infinity();
  if (amax <= 0.0) return ExtendedReal::minus_infinity();
  const double sum = exact_sum(c);
  if (sum == 0.0) return ExtendedReal(0.0);
  if (sum < 0.0) return ExtendedReal(sum / amax);
  return ExtendedReal(-sum / amin);
}

}  // namespace hetstab

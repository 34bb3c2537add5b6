#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "hetstab/extended_real.hpp"

namespace hetstab {

/// Normal vector of a basin half-space {y : alpha . y < 0}. Never all zero.
class AlphaVector {
 public:
  /// Throws ZeroVector when every component is zero, NonFiniteValue on inf/NaN.
  explicit AlphaVector(std::vector<double> components);
  AlphaVector(std::initializer_list<double> components);

  std::span<const double> components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }
  AlphaVector negated() const;

  friend bool operator==(const AlphaVector&, const AlphaVector&) = default;

 private:
  std::vector<double> components_;
};

/// Correctly rounded sum of `values` (Shewchuk's exact partials). The result
/// does not depend on the order of the inputs and negates exactly with them.
double exact_sum(std::span<const double> values);

/// Growth exponent of the complement of the half-space slice:
///   +inf               if min(alpha) >= 0
///   0                  if sum(alpha) <= 0
///   -sum/min(alpha)    otherwise
ExtendedReal f_plus(const AlphaVector& alpha);

/// F^-(alpha) = F^+(-alpha).
ExtendedReal f_minus(const AlphaVector& alpha);

/// F^index = F^+ - F^-; the local stability index of the slice U_R(alpha; 0; ...; 0).
ExtendedReal f_index(const AlphaVector& alpha);

/// Five-branch closed form for three components. Agrees exactly with f_index.
ExtendedReal f_index_n3(double a1, double a2, double a3);

struct FIndexValues {
  ExtendedReal plus;
  ExtendedReal minus;
  ExtendedReal index;
};

FIndexValues evaluate_findex(const AlphaVector& alpha);

}  // namespace hetstab

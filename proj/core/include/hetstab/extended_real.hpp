#pragma once

#include <compare>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace hetstab {

/// A real number or one of the two infinities. Stability indices live here.
///
/// Stored as an IEEE double restricted to non-NaN values, so ordering and
/// negation come for free. The only undefined operation is the difference of
/// two equal infinities, which throws.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  explicit ExtendedReal(double value);

  static constexpr ExtendedReal plus_infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity(), Unchecked{});
  }
  static constexpr ExtendedReal minus_infinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity(), Unchecked{});
  }

  constexpr double value() const noexcept { return value_; }
  constexpr bool is_finite() const noexcept {
    return value_ != plus_infinity().value_ && value_ != minus_infinity().value_;
  }
  constexpr bool is_plus_infinity() const noexcept { return value_ == plus_infinity().value_; }
  constexpr bool is_minus_infinity() const noexcept { return value_ == minus_infinity().value_; }

  constexpr ExtendedReal operator-() const noexcept { return ExtendedReal(-value_, Unchecked{}); }

  // Throws Error(InvalidArgument) for (+inf) - (+inf) and (-inf) - (-inf).
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b);

  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) noexcept {
    return a.value_ == b.value_;
  }
  friend constexpr std::weak_ordering operator<=>(ExtendedReal a, ExtendedReal b) noexcept {
    if (a.value_ < b.value_) return std::weak_ordering::less;
    if (b.value_ < a.value_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

  /// "+inf", "-inf", or the shortest decimal that round-trips.
  std::string to_string() const;
  static std::optional<ExtendedReal> parse(std::string_view text);

 private:
  struct Unchecked {};
  constexpr ExtendedReal(double value, Unchecked) : value_(value) {}

  double value_ = 0.0;
};

constexpr ExtendedReal min(ExtendedReal a, ExtendedReal b) noexcept { return b < a ? b : a; }
constexpr ExtendedReal max(ExtendedReal a, ExtendedReal b) noexcept { return a < b ? b : a; }

/// Shortest round-trip decimal representation of a finite double.
std::string format_double(double value);

}  // namespace hetstab

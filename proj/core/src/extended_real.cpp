#include "hetstab/extended_real.hpp"

#include <charconv>
#include <cmath>

#include "hetstab/error.hpp"

namespace hetstab {

ExtendedReal::ExtendedReal(double value) : value_(value) {
  if (std::isnan(value)) throw Error(ErrorKind::InvalidArgument, "extended real cannot be NaN");
}

ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
  if (!a.is_finite() && a == b) {
    throw Error(ErrorKind::InvalidArgument, "difference of equal infinities is undefined");
  }
  return ExtendedReal(a.value_ - b.value_, ExtendedReal::Unchecked{});
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string ExtendedReal::to_string() const {
  if (is_plus_infinity()) return "+inf";
  if (is_minus_infinity()) return "-inf";
  return format_double(value_);
}

std::optional<ExtendedReal> ExtendedReal::parse(std::string_view text) {
  if (text == "+inf" || text == "inf") return plus_infinity();
  if (text == "-inf") return minus_infinity();
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return ExtendedReal(v);
}

}  // namespace hetstab

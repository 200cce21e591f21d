#include "packclass/rational.hpp"

#include <charconv>
#include <limits>

#include "packclass/errors.hpp"

namespace packclass {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInstance: return "InvalidInstance";
    case ErrorKind::kUnknownBox: return "UnknownBox";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kDimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::kInvalidPacking: return "InvalidPacking";
    case ErrorKind::kUnknownVertex: return "UnknownVertex";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kNotInterval: return "NotInterval";
    case ErrorKind::kNotPackingClass: return "NotPackingClass";
    case ErrorKind::kCyclicOrientation: return "CyclicOrientation";
    case ErrorKind::kNoUndecided: return "NoUndecided";
    case ErrorKind::kInfeasibleCrossSection: return "InfeasibleCrossSection";
    case ErrorKind::kParse: return "Parse";
  }
  return "Unknown";
}

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::kParse,
                "not an exact rational: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const std::int64_t num = parse_integer(text.substr(0, slash), text);
  const std::int64_t den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw Error(ErrorKind::kParse, "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

namespace {

std::int64_t to_int64(const boost::multiprecision::cpp_int& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::kTooLarge, "integer " + x.str() + " exceeds 64 bits");
  }
  return static_cast<std::int64_t>(x);
}

}  // namespace

std::int64_t numerator64(const Rational& r) { return to_int64(numerator(r)); }
std::int64_t denominator64(const Rational& r) { return to_int64(denominator(r)); }

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num > 0) == (den > 0))) ++q;
  return q;
}

}  // namespace packclass

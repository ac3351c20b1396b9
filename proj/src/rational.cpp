#include "layercache/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace layercache {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("not a rational: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text, text));
  }
  const std::int64_t num = parse_int(text.substr(0, slash), text);
  const std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string to_fraction(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_display(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return to_fraction(r);
}

std::string to_decimal(const Rational& r, int digits) {
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;

  const bool negative = r < 0;
  const std::int64_t num = negative ? -r.numerator() : r.numerator();
  const std::int64_t den = r.denominator();

  // Round half away from zero on the scaled value. rem < den keeps the
  // fractional product well inside 64 bits for realistic denominators.
  std::int64_t int_part = num / den;
  const std::int64_t rem = num % den;
  std::int64_t frac_part = rem * scale / den;
  const std::int64_t frac_rem = rem * scale % den;
  if (2 * frac_rem >= den) ++frac_part;
  if (frac_part == scale) {
    ++int_part;
    frac_part = 0;
  }
  const bool nonzero = int_part != 0 || frac_part != 0;

  std::string out = (negative && nonzero) ? "-" : "";
  out += std::to_string(int_part);
  if (digits > 0) {
    std::string frac = std::to_string(frac_part);
    out += '.';
    out += std::string(static_cast<std::size_t>(digits) - frac.size(), '0');
    out += frac;
  }
  return out;
}

double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace layercache

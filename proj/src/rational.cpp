#include "exactne/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace exactne {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text, bool allow_sign) {
  std::size_t i = 0;
  bool negative = false;
  if (allow_sign && !text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw std::invalid_argument("empty integer");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("invalid digit '" + std::string(1, ch) + "' in integer");
    }
    value = value * 10 + (ch - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, true));
  const BigInt num = parse_integer(text.substr(0, slash), true);
  const BigInt den = parse_integer(text.substr(slash + 1), false);
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

}  // namespace exactne

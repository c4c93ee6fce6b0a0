#include "gwlc/rational.hpp"

#include <cstddef>
#include <stdexcept>

namespace gwlc {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);  // canonicalizes
  return r;
}

namespace {

// Strict base-10 integer parse. The BigInt string constructor honors
// C-style base prefixes (leading 0 = octal, 0x = hex), which is wrong for
// decimal literals like "0.25" whose digit strings carry leading zeros.
BigInt parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = (text[i] == '-');
    ++i;
  }
  if (i == text.size()) throw std::invalid_argument("missing digits in integer literal");
  BigInt value(0);
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("non-digit in integer literal");
    value *= 10;
    value += c - '0';
  }
  return negative ? -value : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::string s(text);
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      BigInt num = parse_integer(s.substr(0, slash));
      BigInt den = parse_integer(s.substr(slash + 1));
      return make_rational(num, den);
    }
    // Decimal / scientific literal, converted exactly.
    std::string digits;
    digits.reserve(s.size());
    bool negative = false;
    std::int64_t frac_digits = 0;
    std::int64_t exponent = 0;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
      negative = (s[i] == '-');
      ++i;
    }
    bool seen_digit = false, seen_point = false;
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (c >= '0' && c <= '9') {
        digits.push_back(c);
        seen_digit = true;
        if (seen_point) ++frac_digits;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else if ((c == 'e' || c == 'E') && seen_digit) {
        const std::string rest = s.substr(i + 1);
        std::size_t used = 0;
        exponent = std::stoll(rest, &used);
        if (used != rest.size()) {
          throw std::invalid_argument("malformed rational literal: " + s);
        }
        break;
      } else {
        throw std::invalid_argument("malformed rational literal: " + s);
      }
    }
    if (!seen_digit) throw std::invalid_argument("malformed rational literal: " + s);
    BigInt num = digits.empty() ? BigInt(0) : parse_integer(digits);
    if (negative) num = -num;
    std::int64_t power = exponent - frac_digits;
    BigInt ten(10);
    if (power >= 0) return Rational(num * int_pow(ten, static_cast<std::uint64_t>(power)));
    return make_rational(num, int_pow(ten, static_cast<std::uint64_t>(-power)));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

std::string to_fraction_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt result;
  mpz_bin_uiui(result.backend().data(), n, k);
  return result;
}

BigInt factorial(std::uint64_t n) {
  BigInt result;
  mpz_fac_ui(result.backend().data(), n);
  return result;
}

BigInt odd_double_factorial(std::int64_t n) {
  BigInt result = 1;
  for (std::int64_t k = n; k >= 2; k -= 2) result *= k;
  return result;
}

BigInt int_pow(const BigInt& base, std::uint64_t exp) {
  BigInt result;
  mpz_pow_ui(result.backend().data(), base.backend().data(), exp);
  return result;
}

}  // namespace gwlc

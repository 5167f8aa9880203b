#include "qcf/rational.hpp"

#include "qcf/error.hpp"

#include <cctype>
#include <cstdint>
#include <cstring>

namespace qcf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::NotAvailable: return "not-available";
    case ErrorKind::IllConditioned: return "ill-conditioned";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    fail(ErrorKind::InvalidInput, "not a number: '" + std::string(whole) + "'");
  }
  BigInt v{std::string(s)};
  return neg ? BigInt(-v) : v;
}

BigInt pow10(long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string_view whole = text;
  if (text.empty()) fail(ErrorKind::InvalidInput, "empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt p = parse_integer(text.substr(0, slash), whole);
    std::string_view qs = text.substr(slash + 1);
    if (!all_digits(qs)) fail(ErrorKind::InvalidInput, "bad denominator in '" + std::string(whole) + "'");
    BigInt q(std::string{qs});
    if (q == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + std::string(whole) + "'");
    return Rational(p, q);
  }

  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = text.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 4) fail(ErrorKind::InvalidInput, "bad exponent in '" + std::string(whole) + "'");
    exponent = std::stol(std::string(es));
    if (eneg) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  long frac = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
      fail(ErrorKind::InvalidInput, "not a number: '" + std::string(whole) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    frac = static_cast<long>(fp.size());
  } else {
    if (!all_digits(text)) fail(ErrorKind::InvalidInput, "not a number: '" + std::string(whole) + "'");
    digits = std::string(text);
  }
  BigInt mant(digits);
  if (neg) mant = -mant;
  long scale = exponent - frac;
  if (scale >= 0) return Rational(mant * pow10(scale));
  return Rational(mant, pow10(-scale));
}

std::string to_string(const Rational& x) {
  const BigInt& num = boost::multiprecision::numerator(x);
  const BigInt& den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) fail(ErrorKind::InvalidInput, "non-finite value");
  int exp = 0;
  double m = std::frexp(x, &exp);
  // 53 bits of mantissa fit in an int64 after scaling.
  auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  exp -= 53;
  Rational r(mant);
  BigInt two = 2;
  if (exp > 0) {
    r *= Rational(boost::multiprecision::pow(two, static_cast<unsigned>(exp)));
  } else if (exp < 0) {
    r /= Rational(boost::multiprecision::pow(two, static_cast<unsigned>(-exp)));
  }
  return r;
}

}  // namespace qcf

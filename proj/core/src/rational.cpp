#include "scgroup/rational.hpp"

#include <limits>

#include "scgroup/word.hpp"

namespace scg {

Rational parse_rational(std::string_view s) {
  std::string t(s);
  if (t.empty()) throw Error("empty number");
  try {
    if (auto slash = t.find('/'); slash != std::string::npos) {
      BigInt num(t.substr(0, slash)), den(t.substr(slash + 1));
      if (den == 0) throw Error("zero denominator in '" + t + "'");
      return Rational(num, den);
    }
    if (auto dot = t.find('.'); dot != std::string::npos) {
      std::string frac = t.substr(dot + 1);
      std::string whole = t.substr(0, dot);
      bool neg = !whole.empty() && whole[0] == '-';
      if (neg) whole = whole.substr(1);
      if (whole.empty()) whole = "0";
      BigInt den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      BigInt num = BigInt(whole) * den + (frac.empty() ? BigInt(0) : BigInt(frac));
      Rational r(num, den);
      return neg ? Rational(-r) : r;
    }
    return Rational(BigInt(t));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("bad number '" + t + "'");
  }
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt floor_big(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q;
}

BigInt ceil_big(const Rational& r) { return -floor_big(Rational(-r)); }

namespace {
std::int64_t clamp64(const BigInt& b) {
  if (b > std::numeric_limits<std::int64_t>::max()) return std::numeric_limits<std::int64_t>::max();
  if (b < std::numeric_limits<std::int64_t>::min()) return std::numeric_limits<std::int64_t>::min();
  return b.convert_to<std::int64_t>();
}
}  // namespace

std::int64_t floor_i64(const Rational& r) { return clamp64(floor_big(r)); }
std::int64_t ceil_i64(const Rational& r) { return clamp64(ceil_big(r)); }

}  // namespace scg

#include "bridgesurf/rational.hpp"

#include "bridgesurf/error.hpp"

namespace bsurf {

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt den(text.substr(slash + 1));
    if (den == 0) fail(ErrorKind::Parse, "zero denominator in " + text);
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail(ErrorKind::Parse, "not a rational number: " + text);
  }
}

}  // namespace bsurf

#include "nilsect/integer.hpp"

namespace nilsect {

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const Integer num = mp::numerator(value);
  const Integer den = mp::denominator(value);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

namespace {

template <typename V>
std::string join(const V& v) {
  std::string out = "(";
  for (Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v(i));
  return out + ")";
}

}  // namespace

std::string to_string(const IntVector& v) { return join(v); }
std::string to_string(const RatVector& v) { return join(v); }

}  // namespace nilsect

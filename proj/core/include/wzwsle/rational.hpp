#ifndef WZWSLE_RATIONAL_HPP
#define WZWSLE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace wzwsle {

/// Exact rational scalar used for all algebraic data (Casimirs, weights,
/// kappa/tau/rho, residuals).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline std::string to_string(const Rational& r)
{
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

} // namespace wzwsle

#endif

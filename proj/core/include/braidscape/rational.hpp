#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace braidscape {

// Exact arithmetic everywhere; no floating point in any invariant computation.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  return r.str();
}

inline Rational make_rational(long long num, long long den) {
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace braidscape

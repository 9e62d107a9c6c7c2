#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bruhat {

// One integer policy for every count or predicted size that can outgrow a
// machine word.
using BigInt = boost::multiprecision::cpp_int;

// Inversion counts, pair counts and anything else bounded by (#ones)^2.
using Count = std::uint64_t;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

BigInt factorial(unsigned n);

BigInt pow(const BigInt& base, unsigned exp);

// C(x, 2), zero for x in {0, 1}.
inline BigInt choose2(const BigInt& x) {
  if (x < 2) return 0;
  return x * (x - 1) / 2;
}

}  // namespace bruhat

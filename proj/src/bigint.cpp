#include "bruhat/bigint.hpp"

namespace bruhat {

BigInt factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

BigInt pow(const BigInt& base, unsigned exp) {
  BigInt out = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1U) out *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return out;
}

}  // namespace bruhat

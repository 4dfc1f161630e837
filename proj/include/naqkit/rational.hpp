#pragma once
// Exact arithmetic aliases. Kraft sums, cdf values and mid-ranks are exact
// rationals; floating point appears only where the spec of a quantity is
// itself real-valued (entropies, DKW exponentials).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace naqkit {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt pow2(uint64_t e) { return BigInt(1) << e; }

// 2^-e as an exact rational.
inline Rat pow2_inv(uint64_t e) { return Rat(BigInt(1), pow2(e)); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rat& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

// Smallest integer t >= 0 with 2^t >= r, for r >= 1 (exact ceil of log2).
inline uint64_t ceil_log2(const Rat& r) {
  uint64_t t = 0;
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt p = den;
  while (p < num) {
    p <<= 1;
    ++t;
  }
  return t;
}

// Smallest integer t >= 0 with 2^t >= n, for n >= 1.
inline uint64_t ceil_log2_u64(uint64_t n) {
  uint64_t t = 0;
  while (t < 63 && (uint64_t(1) << t) < n) ++t;
  if (t == 63 && (uint64_t(1) << 63) < n) return 64;
  return t;
}

}  // namespace naqkit

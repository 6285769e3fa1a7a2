#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qrank {

// Arbitrary-precision integers and rationals used for counts, weight
// distribution coefficients and the exact linear-system solver.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, uint64_t exp) {
    BigInt r = 1;
    BigInt b = base;
    uint64_t e = exp;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// q^e for a possibly negative exponent, as an exact rational.
inline BigRat big_pow_signed(const BigInt& base, int64_t exp) {
    if (exp >= 0) return BigRat(big_pow(base, static_cast<uint64_t>(exp)));
    return BigRat(1, big_pow(base, static_cast<uint64_t>(-exp)));
}

// If value == base^t for an integer t >= 0 returns t, otherwise -1.
inline int64_t exact_log(const BigInt& value, const BigInt& base) {
    if (base <= 1 || value <= 0) return -1;
    BigInt v = value;
    int64_t t = 0;
    while (v > 1) {
        if (v % base != 0) return -1;
        v /= base;
        ++t;
    }
    return t;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

} // namespace qrank

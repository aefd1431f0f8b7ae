#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cyclehopf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Int128 = __int128;

// Raised by the checked fixed-width arithmetic below. Callers catch it and
// redo the computation in BigInt.
struct ArithmeticOverflow : std::overflow_error {
  ArithmeticOverflow() : std::overflow_error("fixed-width integer overflow") {}
};

namespace detail {

template <class Int>
inline void add_to(Int& acc, const Int& x) {
  acc += x;
}

template <>
inline void add_to<Int128>(Int128& acc, const Int128& x) {
  if (__builtin_add_overflow(acc, x, &acc)) throw ArithmeticOverflow{};
}

template <class Int>
inline Int mul(const Int& a, const Int& b) {
  return a * b;
}

template <>
inline Int128 mul<Int128>(const Int128& a, const Int128& b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow{};
  return r;
}

template <class Int>
inline Int sub(const Int& a, const Int& b) {
  return a - b;
}

template <>
inline Int128 sub<Int128>(const Int128& a, const Int128& b) {
  Int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow{};
  return r;
}

template <class Int>
inline BigInt to_big(const Int& x) {
  return BigInt(x);
}

template <class Int>
inline Int from_big(const BigInt& x);

template <>
inline BigInt from_big<BigInt>(const BigInt& x) {
  return x;
}

template <>
inline Int128 from_big<Int128>(const BigInt& x) {
  if (boost::multiprecision::abs(x) > BigInt((Int128(1) << 126))) throw ArithmeticOverflow{};
  return static_cast<Int128>(x);
}

}  // namespace detail

inline std::string to_decimal(const BigInt& x) { return x.str(); }

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

}  // namespace cyclehopf

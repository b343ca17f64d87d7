#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qhp {

// Arbitrary-precision integers and rationals. No floating point anywhere in
// the pipeline: discriminants and Smith pivots overflow machine words fast.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Int int_abs(const Int& a) { return boost::multiprecision::abs(a); }

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

} // namespace qhp

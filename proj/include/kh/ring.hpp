#pragma once
#include <boost/multiprecision/cpp_int.hpp>

namespace kh {

using Int = boost::multiprecision::cpp_int;
using Coeff = boost::multiprecision::cpp_rational;

enum class GroundRing { integers, rationals };

// Invertible coefficients: +-1 over Z, any nonzero over Q.
inline bool is_unit(const Coeff& c, GroundRing ring) {
    if (c == 0) return false;
    if (ring == GroundRing::rationals) return true;
    return c == 1 || c == -1;
}

inline const char* ring_name(GroundRing r) { return r == GroundRing::integers ? "z" : "q"; }

}  // namespace kh

#pragma once

#include "catembed/cyclotomic.hpp"

namespace catembed {

inline CycElement imag_unit() { return CycElement::zeta(4); }
inline CycElement omega8() { return CycElement::zeta(8); }
inline CycElement omega3() { return CycElement::zeta(3); }

// zeta8 + zeta8^7
inline CycElement sqrt2() { return CycElement::make(8, {{1, 1}, {7, 1}}); }
// zeta12 + zeta12^11
inline CycElement sqrt3() { return CycElement::make(12, {{1, 1}, {11, 1}}); }
// 1 + 2(zeta5 + zeta5^4)
inline CycElement sqrt5() { return CycElement::make(5, {{0, 1}, {1, 2}, {4, 2}}); }
// (zeta5 + zeta5^4) / 2
inline CycElement cos_2pi_5() { return CycElement::make(5, {{1, Rational(1, 2)}, {4, Rational(1, 2)}}); }

}  // namespace catembed

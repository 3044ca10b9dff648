#pragma once

// Pre-embeddings built directly from the hand-transcribed matrices.

#include "catembed/embed.hpp"
#include "reference.hpp"

namespace towers {

using namespace catembed;

inline RingSpec d_ring() { return RingSpec::dyadic(); }
inline RingSpec d_i() { return RingSpec({imag_unit()}, std::set<Conductor>{2}, "D[i]"); }
inline RingSpec d_omega8() { return RingSpec({omega8()}, std::set<Conductor>{2}, "D[w8]"); }
inline RingSpec clifford_t_ring() { return RingSpec({sqrt2(), imag_unit()}, std::set<Conductor>{2}, "Z[1/2,sqrt2,i]"); }
inline RingSpec clifford_t_cos() {
  return RingSpec({sqrt2(), imag_unit(), cos_2pi_5()}, std::set<Conductor>{2}, "Z[1/2,sqrt2,i,c]");
}

inline PreEmbedding sqrt5() {
  return preembed_make(RingTower(RingSpec::rationals(), catembed::sqrt5()), reference::sqrt5_lambda());
}
inline PreEmbedding omega8_over_di() { return preembed_make(RingTower(d_i(), omega8()), reference::lambda1()); }
inline PreEmbedding i_over_d() { return preembed_make(RingTower(d_ring(), imag_unit()), reference::lambda2()); }
inline PreEmbedding omega3() {
  return preembed_make(RingTower(d_omega8(), catembed::omega3()), reference::omega3_lambda());
}
inline PreEmbedding zeta5() {
  return preembed_make(RingTower(clifford_t_ring(), CycElement::zeta(5, 1)), reference::zeta5_lambda());
}
inline PreEmbedding cos_inner() {
  return preembed_make(RingTower(clifford_t_cos(), CycElement::zeta(5, 1)), reference::cos_tower_lambda1());
}
inline PreEmbedding cos_outer() {
  return preembed_make(RingTower(clifford_t_ring(), cos_2pi_5()), reference::cos_tower_lambda2());
}

}  // namespace towers

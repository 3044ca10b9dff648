#pragma once

#include <string>

#include "catembed/circuit.hpp"

namespace catembed {

// H, T, Tdg, S, Sdg, Z, X, CX over conductor 8.
GateSet clifford_t();
// X, CX, CCX
GateSet toffoli_gates();
// clifford_t plus E = diag(1, omega3), registered over conductor 24.
GateSet clifford_t_e();

// H and CR<k> = diag(1, 1, 1, zeta_{2^k}) for 2 <= k <= n.
GateSet qft_source(std::size_t n);
// Decrementers wider than this are emitted by the compiler but carry no
// registered evaluation.
inline constexpr std::size_t kMaxEvaluatedDecrement = 6;

// H, X, CX, CCX, CDEC<k> and CCDEC<k> for 1 <= k <= min(n, kMaxEvaluatedDecrement).
GateSet qft_target(std::size_t n);

// X, CX, CCX and CR<k-1> (CR1 is the controlled Z); target of one tower level.
GateSet rk_level_gates(std::size_t k);

// R = diag(1, omega3), X
GateSet order3_gates();

// k-qubit decrement mod 2^k; the first (most significant) wire holds the
// least significant bit of the counter.
ExactMatrix decrement_matrix(std::size_t k);
// |0><0| (x) I + |1><1| (x) U, applied `controls` times.
ExactMatrix controlled(const ExactMatrix& u, std::size_t controls = 1);

std::string cr_name(std::size_t k);
std::string cdec_name(std::size_t k, std::size_t controls);

// "clifford_t", "toffoli", "clifford_t_e", "order3", "qft_source:<n>", "qft_target:<n>",
// "rk_level:<k>".
GateSet gateset_by_name(const std::string& name);

}  // namespace catembed

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catembed/circuit.hpp"
#include "catembed/io.hpp"

namespace catembed {

struct CatalystSlot {
  std::string label;
  std::vector<std::size_t> wires;
  ExactMatrix vector;  // unnormalized column
  CycElement norm_sq;
};

struct CompiledProgram {
  Circuit circuit = Circuit::identity(1);
  GateSet gates;
  std::vector<CatalystSlot> catalysts;  // in wire order, after the data register
  std::string source_description;
  std::map<std::string, std::vector<std::size_t>> register_layout;
  std::size_t data_qubits = 0;
  std::optional<ExactMatrix> source_evaluation;  // only when small enough to write down
  std::optional<long> tcount;                    // recorded metadata, not a recount
};

std::size_t total_wires(const CompiledProgram& p);
// Tensor product of all catalyst vectors, in wire order.
ExactMatrix catalyst_state(const CompiledProgram& p);
ExactMatrix catalyst_state(const std::vector<CatalystSlot>& slots);

// Controlled omega8^5 H S on (data, catalyst) over Clifford+T, with the
// omega3/Domega8 catalyst. The optimized flag only changes the recorded
// T-count (6 -> 4); no circuit optimization is performed.
CompiledProgram compile_E(bool optimized = false);
long egate_template_tcount();  // T + Tdg gates actually present in the template

// H and controlled R_k = diag(1, 1, 1, zeta_{2^k}) layers followed by the
// bit-reversal swaps, so that the evaluation is the DFT matrix.
Circuit build_QFT(std::size_t n);
ExactMatrix dft_matrix(std::size_t n);

// One level of the 2^k tower: R_k on x becomes CX then controlled R_{k-1}
// on (x, psi_k). CR1 is the controlled Z.
CompiledProgram rk_one_level_template(std::size_t k);

// Each CR_k becomes a doubly controlled decrement of psi_k .. psi_1.
// Layout: data x_1..x_n, then psi_n .. psi_1, then (n = 2 with expansion)
// one |0> ancilla used as a borrowed wire.
CompiledProgram compile_QFT(std::size_t n, bool expand_decrementers = false);
// Same circuit with catalysts X|psi_k>; implements the inverse DFT.
CompiledProgram compile_inverse_QFT(std::size_t n, bool expand_decrementers = false);

// The decrement of `targets` (first = least significant) controlled on
// `controls`, expanded into X, CX, CCX on a num_wires register. Needs one
// wire outside controls and targets once more than two controls are in play.
Circuit expanded_decrement(std::size_t num_wires, const std::vector<std::size_t>& controls,
                           const std::vector<std::size_t>& targets);
// X on target controlled by all of `controls`. Wires outside the call are
// borrowed in whatever state they hold and restored.
Circuit multi_controlled_x(std::size_t num_wires, const std::vector<std::size_t>& controls, std::size_t target);

struct CostReport {
  std::string kind;  // "egate" or "qft"
  std::size_t size = 0;
  std::string epsilon;
  std::string approx_tcount;     // 30 significant digits
  std::string catalytic_tcount;  // 30 significant digits
  std::string ratio;             // catalytic / approx
  std::string reduction;         // 1 - ratio
  std::optional<std::string> asymptotic_ratio;
  double approx = 0;
  double catalytic = 0;
  std::vector<std::string> notes;
};

// Decimal strings such as "1e-15", "0.001", "3/4" to an exact rational.
Rational parse_epsilon(const std::string& text);

// egate: approx = m 3 log2(m / eps), catalytic = 6 log2(1 / eps) + 4 m.
// qft: r = n(n-1)/2 rotations; approx = r 3 log2(r / eps);
// catalytic = sum_{k=2}^{n} (n - k + 1) 4 (k - 1) + n 3 log2(n / eps).
// eps must lie in (0, 1].
CostReport cost_model(const std::string& kind, std::size_t size, const std::string& epsilon);

json program_to_json(const CompiledProgram& p);
// Rebuilds the gate set from its registry name.
CompiledProgram program_from_json(const json& j);
json cost_to_json(const CostReport& r);
std::string cost_to_csv(const CostReport& r);

// Flat gate list on wires, in time order. Swaps are tracked as relabelings
// and any leftover permutation is emitted as swap ops.
struct WireOp {
  std::string name;
  std::vector<std::size_t> wires;
};
std::vector<WireOp> flatten(const Circuit& c);
std::string export_qasm(const CompiledProgram& p);

}  // namespace catembed

#include "catembed/gatesets.hpp"

#include <algorithm>

#include "catembed/constants.hpp"
#include "catembed/error.hpp"

namespace catembed {

namespace {

ExactMatrix hadamard() {
  const CycElement r = sqrt2().inv();
  return {{r, r}, {r, -r}};
}

ExactMatrix pauli_x() { return {{0, 1}, {1, 0}}; }

}  // namespace

ExactMatrix controlled(const ExactMatrix& u, std::size_t controls) {
  ExactMatrix out = u;
  for (std::size_t i = 0; i < controls; ++i) out = direct_sum(ExactMatrix::identity(out.rows()), out);
  return out;
}

ExactMatrix decrement_matrix(std::size_t k) {
  const std::size_t dim = pow2(k);
  // Basis index has wire 0 as its top bit; the counter reads wire 0 as bit 0.
  auto counter = [k](std::size_t index) {
    std::size_t value = 0;
    for (std::size_t w = 0; w < k; ++w) {
      if (index >> (k - 1 - w) & 1) value |= std::size_t{1} << w;
    }
    return value;
  };
  std::vector<std::size_t> index_of(dim);
  for (std::size_t i = 0; i < dim; ++i) index_of[counter(i)] = i;
  ExactMatrix out(dim, dim);
  std::vector<CycElement> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t target = index_of[(counter(i) + dim - 1) % dim];
    e[target * dim + i] = CycElement(1);
  }
  return ExactMatrix(dim, dim, std::move(e));
}

std::string cr_name(std::size_t k) { return "CR" + std::to_string(k); }

std::string cdec_name(std::size_t k, std::size_t controls) {
  return std::string(controls == 2 ? "CCDEC" : "CDEC") + std::to_string(k);
}

GateSet clifford_t() {
  GateSet gs("clifford_t");
  const CycElement w = omega8();
  gs.add("H", hadamard());
  gs.add("T", ExactMatrix::diagonal({1, w}));
  gs.add("Tdg", ExactMatrix::diagonal({1, w.pow(7)}));
  gs.add("S", ExactMatrix::diagonal({1, w.pow(2)}));
  gs.add("Sdg", ExactMatrix::diagonal({1, w.pow(6)}));
  gs.add("Z", ExactMatrix::diagonal({1, -1}));
  gs.add("X", pauli_x());
  gs.add("CX", controlled(pauli_x()));
  return gs;
}

GateSet toffoli_gates() {
  GateSet gs("toffoli");
  gs.add("X", pauli_x());
  gs.add("CX", controlled(pauli_x()));
  gs.add("CCX", controlled(pauli_x(), 2));
  return gs;
}

GateSet clifford_t_e() {
  GateSet e("e");
  e.add("E", ExactMatrix::diagonal({1, omega3()}).lifted(24));
  return clifford_t().merged(e, "clifford_t_e");
}

GateSet qft_source(std::size_t n) {
  GateSet gs("qft_source:" + std::to_string(n));
  gs.add("H", hadamard());
  for (std::size_t k = 2; k <= n; ++k) {
    gs.add(cr_name(k), ExactMatrix::diagonal({1, 1, 1, CycElement::zeta(pow2(k), 1)}));
  }
  return gs;
}

GateSet qft_target(std::size_t n) {
  GateSet gs("qft_target:" + std::to_string(n));
  gs.add("H", hadamard());
  gs.add("X", pauli_x());
  gs.add("CX", controlled(pauli_x()));
  gs.add("CCX", controlled(pauli_x(), 2));
  for (std::size_t k = 1; k <= std::min(n, kMaxEvaluatedDecrement); ++k) {
    const ExactMatrix d = decrement_matrix(k);
    gs.add(cdec_name(k, 1), controlled(d, 1));
    gs.add(cdec_name(k, 2), controlled(d, 2));
  }
  return gs;
}

GateSet rk_level_gates(std::size_t k) {
  if (k < 2 || k > 20) throw Error(ErrorKind::InvalidArgument, "tower level must lie in [2, 20]");
  GateSet gs = toffoli_gates().merged(GateSet(), "rk_level:" + std::to_string(k));
  gs.add(cr_name(k - 1), controlled(ExactMatrix::diagonal({1, CycElement::zeta(pow2(k - 1), 1)})));
  return gs;
}

GateSet order3_gates() {
  GateSet gs("order3");
  gs.add("R", ExactMatrix::diagonal({1, omega3()}));
  gs.add("X", pauli_x());
  return gs;
}

GateSet gateset_by_name(const std::string& name) {
  if (name == "clifford_t") return clifford_t();
  if (name == "toffoli") return toffoli_gates();
  if (name == "clifford_t_e") return clifford_t_e();
  if (name == "order3") return order3_gates();
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    std::size_t n = 0;
    try {
      n = std::stoul(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "bad gate set size in '" + name + "'");
    }
    if (n < 1 || n > 20) throw Error(ErrorKind::InvalidArgument, "gate set size out of range in '" + name + "'");
    if (head == "qft_source") return qft_source(n);
    if (head == "qft_target") return qft_target(n);
    if (head == "rk_level") return rk_level_gates(n);
  }
  throw Error(ErrorKind::UnknownId, "unknown gate set '" + name + "'");
}

}  // namespace catembed

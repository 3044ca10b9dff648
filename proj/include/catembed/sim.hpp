#pragma once

#include <string>
#include <vector>

#include "catembed/compilers.hpp"

namespace catembed {

inline constexpr std::size_t kMaxStateDimension = std::size_t{1} << 12;

// Unnormalized amplitudes with their exact squared norm.
class ExactState {
 public:
  const ExactMatrix& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const { return amplitudes_.rows(); }
  const CycElement& norm_sq() const { return norm_sq_; }
  bool norm_consistent() const;

  friend bool operator==(const ExactState& a, const ExactState& b) { return a.amplitudes_ == b.amplitudes_; }
  friend bool operator!=(const ExactState& a, const ExactState& b) { return !(a == b); }

 private:
  friend ExactState state_make(const ExactMatrix& amplitudes);
  ExactMatrix amplitudes_;
  CycElement norm_sq_;
};

ExactState state_make(const ExactMatrix& column);
ExactState state_make(const std::vector<CycElement>& amplitudes);
ExactState state_make(std::initializer_list<CycElement> amplitudes);
ExactState basis_state(std::size_t dim, std::size_t index);
ExactState tensor(const ExactState& a, const ExactState& b);

// Walks the circuit tree and applies each leaf to its slice of the vector,
// so no full matrix is ever formed.
ExactState apply(const Circuit& c, const GateSet& gs, const ExactState& s);

struct ProbeResult {
  std::size_t index = 0;
  bool pass = false;
  std::string detail;
};

struct ActionReport {
  std::string program;
  std::vector<ProbeResult> probes;
  bool all_pass() const;
};

// circuit (psi (x) chi) == (source_eval psi) (x) chi for every probe psi,
// with chi the program's catalyst state.
ActionReport check_catalytic_action(const CompiledProgram& p, const ExactMatrix& source_eval,
                                    const std::vector<ExactState>& probes);

// Same with a substituted catalyst family and the twisted evaluation. When the
// program carries its source evaluation, twisted_eval must equal g applied to it.
ActionReport check_galois_action(const CompiledProgram& p, const GaloisAutomorphism& g,
                                 const std::vector<CatalystSlot>& conj_catalysts, const ExactMatrix& twisted_eval,
                                 const std::vector<ExactState>& probes);

std::vector<ExactState> computational_basis(std::size_t dim);

json state_to_json(const ExactState& s);
json report_to_json(const ActionReport& r);

}  // namespace catembed

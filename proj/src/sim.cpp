#include "catembed/sim.hpp"

#include "catembed/error.hpp"

namespace catembed {

bool ExactState::norm_consistent() const { return inner(amplitudes_, amplitudes_) == norm_sq_; }

ExactState state_make(const ExactMatrix& column) {
  if (column.cols() != 1 || column.rows() == 0) throw Error(ErrorKind::ShapeMismatch, "a state is a nonempty column");
  if (column.rows() > kMaxStateDimension) {
    throw Error(ErrorKind::TooLarge, "state dimension " + std::to_string(column.rows()) + " exceeds 2^12");
  }
  if (column.is_zero()) throw Error(ErrorKind::InvalidArgument, "the zero vector is not a state");
  ExactState s;
  s.amplitudes_ = column;
  s.norm_sq_ = inner(column, column);
  return s;
}

ExactState state_make(const std::vector<CycElement>& amplitudes) { return state_make(ExactMatrix::column(amplitudes)); }

ExactState state_make(std::initializer_list<CycElement> amplitudes) {
  return state_make(std::vector<CycElement>(amplitudes));
}

ExactState basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
  std::vector<CycElement> v(dim);
  v[index] = CycElement(1);
  return state_make(v);
}

ExactState tensor(const ExactState& a, const ExactState& b) { return state_make(tensor(a.amplitudes(), b.amplitudes())); }

namespace {

class Applier {
 public:
  explicit Applier(const GateSet& gs) : gs_(gs) {}

  // Acts on v[offset + i * stride] for i < c.dim().
  void run(const Circuit& c, std::vector<CycElement>& v, std::size_t offset, std::size_t stride) {
    switch (c.kind()) {
      case Circuit::Kind::Identity:
        return;
      case Circuit::Kind::Gate:
        return leaf(gs_.get(c.name()).evaluation, v, offset, stride);
      case Circuit::Kind::Swap: {
        // |a>|b> -> |b>|a>
        const std::size_t m = c.swap_m();
        const std::size_t n = c.swap_n();
        std::vector<CycElement> tmp(m * n);
        for (std::size_t a = 0; a < m; ++a) {
          for (std::size_t b = 0; b < n; ++b) tmp[b * m + a] = v[offset + (a * n + b) * stride];
        }
        for (std::size_t i = 0; i < m * n; ++i) v[offset + i * stride] = std::move(tmp[i]);
        return;
      }
      case Circuit::Kind::Seq:
        run(c.right(), v, offset, stride);
        run(c.left(), v, offset, stride);
        return;
      case Circuit::Kind::Par: {
        const std::size_t a = c.left().dim();
        const std::size_t b = c.right().dim();
        if (c.right().kind() != Circuit::Kind::Identity) {
          for (std::size_t i = 0; i < a; ++i) run(c.right(), v, offset + i * b * stride, stride);
        }
        if (c.left().kind() != Circuit::Kind::Identity) {
          for (std::size_t j = 0; j < b; ++j) run(c.left(), v, offset + j * stride, b * stride);
        }
        return;
      }
    }
  }

 private:
  static void leaf(const ExactMatrix& m, std::vector<CycElement>& v, std::size_t offset, std::size_t stride) {
    const std::size_t d = m.rows();
    std::vector<CycElement> out(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const CycElement& e = m(i, j);
        const CycElement& x = v[offset + j * stride];
        if (e.is_zero() || x.is_zero()) continue;
        out[i] += e * x;
      }
    }
    for (std::size_t i = 0; i < d; ++i) v[offset + i * stride] = std::move(out[i]);
  }

  const GateSet& gs_;
};

// Names the first amplitude that differs; full vectors are unreadable past a few qubits.
std::string describe_mismatch(const ExactMatrix& got, const ExactMatrix& want) {
  for (std::size_t i = 0; i < want.rows(); ++i) {
    if (got(i, 0) != want(i, 0)) {
      return "amplitude " + std::to_string(i) + " is " + got(i, 0).to_string() + ", expected " + want(i, 0).to_string();
    }
  }
  return "";
}

ActionReport check_action(const CompiledProgram& p, const std::vector<CatalystSlot>& catalysts,
                          const ExactMatrix& eval, const std::vector<ExactState>& probes) {
  ActionReport r;
  r.program = p.source_description;
  const ExactState chi = state_make(catalyst_state(catalysts));
  for (std::size_t i = 0; i < probes.size(); ++i) {
    ProbeResult pr;
    pr.index = i;
    const ExactState& psi = probes[i];
    if (psi.dimension() != eval.cols()) {
      pr.detail = "probe dimension " + std::to_string(psi.dimension()) + " does not match the data register";
      r.probes.push_back(std::move(pr));
      continue;
    }
    const ExactState got = apply(p.circuit, p.gates, tensor(psi, chi));
    const ExactMatrix want = tensor(eval * psi.amplitudes(), chi.amplitudes());
    pr.pass = got.amplitudes() == want;
    if (!pr.pass) pr.detail = describe_mismatch(got.amplitudes(), want);
    r.probes.push_back(std::move(pr));
  }
  return r;
}

}  // namespace

ExactState apply(const Circuit& c, const GateSet& gs, const ExactState& s) {
  if (c.dim() != s.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "circuit dimension " + std::to_string(c.dim()) + " vs state dimension " +
                                                  std::to_string(s.dimension()));
  }
  std::vector<CycElement> v = s.amplitudes().entries();
  Applier(gs).run(c, v, 0, 1);
  return state_make(ExactMatrix::column(std::move(v)));
}

bool ActionReport::all_pass() const {
  for (const auto& p : probes) {
    if (!p.pass) return false;
  }
  return true;
}

ActionReport check_catalytic_action(const CompiledProgram& p, const ExactMatrix& source_eval,
                                    const std::vector<ExactState>& probes) {
  return check_action(p, p.catalysts, source_eval, probes);
}

ActionReport check_galois_action(const CompiledProgram& p, const GaloisAutomorphism& g,
                                 const std::vector<CatalystSlot>& conj_catalysts, const ExactMatrix& twisted_eval,
                                 const std::vector<ExactState>& probes) {
  ActionReport r = check_action(p, conj_catalysts, twisted_eval, probes);
  if (p.source_evaluation) {
    const ExactMatrix want = mat_galois(g, *p.source_evaluation);
    ProbeResult pr;
    pr.index = probes.size();
    pr.pass = want == twisted_eval;
    pr.detail = pr.pass ? "twisted evaluation matches g(source)" : "twisted evaluation differs from g(source)";
    r.probes.push_back(std::move(pr));
  }
  return r;
}

std::vector<ExactState> computational_basis(std::size_t dim) {
  std::vector<ExactState> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(basis_state(dim, i));
  return out;
}

json state_to_json(const ExactState& s) {
  json amps = json::array();
  for (std::size_t i = 0; i < s.dimension(); ++i) amps.push_back(cyc_to_json(s.amplitudes()(i, 0)));
  return {{"dimension", s.dimension()}, {"amplitudes", amps}, {"norm_sq", cyc_to_json(s.norm_sq())}};
}

json report_to_json(const ActionReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes) {
    json j = {{"index", p.index}, {"pass", p.pass}};
    if (!p.detail.empty()) j["detail"] = p.detail;
    probes.push_back(std::move(j));
  }
  return {{"program", r.program}, {"pass", r.all_pass()}, {"probes", probes}};
}

}  // namespace catembed

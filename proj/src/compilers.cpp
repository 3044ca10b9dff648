#include "catembed/compilers.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "catembed/companion.hpp"
#include "catembed/constants.hpp"
#include "catembed/error.hpp"
#include "catembed/gatesets.hpp"

namespace catembed {

std::size_t total_wires(const CompiledProgram& p) {
  std::size_t w = p.data_qubits;
  for (const auto& c : p.catalysts) w += c.wires.size();
  return w;
}

ExactMatrix catalyst_state(const std::vector<CatalystSlot>& slots) {
  ExactMatrix out = ExactMatrix::column({1});
  for (const auto& s : slots) out = tensor(out, s.vector);
  return out;
}

ExactMatrix catalyst_state(const CompiledProgram& p) { return catalyst_state(p.catalysts); }

namespace {

Circuit on(const std::string& name, std::size_t arity, std::size_t num_wires, std::vector<std::size_t> wires) {
  return place_on_wires(Circuit::gate(name, pow2(arity)), num_wires, wires);
}

}  // namespace

// The template, read right to left as a matrix product:
//   (Z (x) I)(T (x) I) . CH . CS
//   CS = (T (x) T) CX (I (x) Tdg) CX
//   CH = (I (x) Sdg)(I (x) H)(I (x) Tdg) CX (I (x) T)(I (x) H)(I (x) S)
CompiledProgram compile_E(bool optimized) {
  std::vector<Circuit> ops;
  auto add = [&](const std::string& name, const std::vector<std::size_t>& wires) {
    ops.push_back(on(name, wires.size(), 2, wires));
  };
  add("CX", {0, 1});
  add("Tdg", {1});
  add("CX", {0, 1});
  add("T", {0});
  add("T", {1});

  add("S", {1});
  add("H", {1});
  add("T", {1});
  add("CX", {0, 1});
  add("Tdg", {1});
  add("H", {1});
  add("Sdg", {1});

  add("T", {0});
  add("Z", {0});

  CompiledProgram p;
  p.circuit = Circuit::sequence(ops);
  p.gates = clifford_t();
  const CatalogEntry entry = catalog_get("omega3/Domega8");
  p.catalysts.push_back({"v", {1}, entry.catalyst, entry.norm_sq});
  p.source_description = "E = diag(1, omega3)";
  p.register_layout = {{"data", {0}}, {"catalyst", {1}}};
  p.data_qubits = 1;
  p.source_evaluation = ExactMatrix::diagonal({1, omega3()});
  p.tcount = optimized ? 4 : 6;
  return p;
}

long egate_template_tcount() {
  const auto h = gate_histogram(compile_E(false).circuit);
  long n = 0;
  for (const char* g : {"T", "Tdg"}) {
    if (auto it = h.find(g); it != h.end()) n += it->second;
  }
  return n;
}

namespace {

void check_qft_size(std::size_t n) {
  if (n < 1 || n > 20) throw Error(ErrorKind::InvalidArgument, "QFT size must lie in [1, 20]");
}

// Wire-level ops of the QFT in time order, with each controlled R_k handed to
// `rotation(k, j, l)` for controls on data wires j and l.
template <class Rotation>
std::vector<Circuit> qft_layers(std::size_t n, std::size_t num_wires, Rotation rotation) {
  std::vector<Circuit> ops;
  for (std::size_t j = 0; j < n; ++j) {
    ops.push_back(on("H", 1, num_wires, {j}));
    for (std::size_t k = 2; j + k <= n; ++k) {
      for (auto& c : rotation(k, j, j + k - 1)) ops.push_back(std::move(c));
    }
  }
  for (std::size_t j = 0; j < n / 2; ++j) {
    ops.push_back(place_on_wires(Circuit::swap(2, 2), num_wires, {j, n - 1 - j}));
  }
  return ops;
}

}  // namespace

Circuit build_QFT(std::size_t n) {
  check_qft_size(n);
  return Circuit::sequence(qft_layers(n, n, [n](std::size_t k, std::size_t a, std::size_t b) {
    return std::vector<Circuit>{on(cr_name(k), 2, n, {a, b})};
  }));
}

ExactMatrix dft_matrix(std::size_t n) {
  check_qft_size(n);
  const std::size_t dim = pow2(n);
  CycElement scale(Rational(1, static_cast<long>(pow2(n / 2))));
  if (n % 2) scale = scale * sqrt2().inv();
  std::vector<CycElement> e;
  e.reserve(dim * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) e.push_back(scale * CycElement::zeta(dim, static_cast<std::int64_t>(j * k % dim)));
  }
  return ExactMatrix(dim, dim, std::move(e));
}

CompiledProgram rk_one_level_template(std::size_t k) {
  if (k < 2 || k > 20) throw Error(ErrorKind::InvalidArgument, "one-level template needs 2 <= k <= 20");
  CompiledProgram p;
  p.circuit = Circuit::sequence({Circuit::gate("CX", 4), Circuit::gate(cr_name(k - 1), 4)});
  p.gates = rk_level_gates(k);
  p.data_qubits = 1;
  p.catalysts.push_back({"psi" + std::to_string(k), {1}, ExactMatrix::column({1, CycElement::zeta(pow2(k), 1)}),
                         CycElement(2)});
  p.register_layout = {{"data", {0}}, {"psi" + std::to_string(k), {1}}};
  p.source_description = "R" + std::to_string(k);
  p.source_evaluation = ExactMatrix::diagonal({1, CycElement::zeta(pow2(k), 1)});
  return p;
}

Circuit multi_controlled_x(std::size_t num_wires, const std::vector<std::size_t>& controls, std::size_t target) {
  switch (controls.size()) {
    case 0:
      return on("X", 1, num_wires, {target});
    case 1:
      return on("CX", 2, num_wires, {controls[0], target});
    case 2:
      return on("CCX", 3, num_wires, {controls[0], controls[1], target});
    default:
      break;
  }
  std::vector<bool> busy(num_wires, false);
  for (auto c : controls) busy[c] = true;
  busy[target] = true;
  const auto it = std::find(busy.begin(), busy.end(), false);
  if (it == busy.end()) {
    throw Error(ErrorKind::InvalidArgument, "multi-controlled X with " + std::to_string(controls.size()) +
                                                " controls needs one more wire");
  }
  const std::size_t a = static_cast<std::size_t>(it - busy.begin());
  const std::size_t half = (controls.size() + 1) / 2;
  const std::vector<std::size_t> c1(controls.begin(), controls.begin() + static_cast<long>(half));
  std::vector<std::size_t> c2a(controls.begin() + static_cast<long>(half), controls.end());
  c2a.push_back(a);
  // t ^= C2 a; a ^= C1; t ^= C2 a; a ^= C1  leaves t ^= C1 C2 and a unchanged.
  const Circuit low = multi_controlled_x(num_wires, c2a, target);
  const Circuit high = multi_controlled_x(num_wires, c1, a);
  return Circuit::sequence({low, high, low, high});
}

Circuit expanded_decrement(std::size_t num_wires, const std::vector<std::size_t>& controls,
                           const std::vector<std::size_t>& targets) {
  std::vector<Circuit> ops;
  // Bit j flips when every lower bit is 0; high bits go first so that the
  // lower bits still hold their old values.
  for (std::size_t j = targets.size(); j-- > 0;) {
    std::vector<std::size_t> cs = controls;
    for (std::size_t l = 0; l < j; ++l) {
      ops.push_back(on("X", 1, num_wires, {targets[l]}));
      cs.push_back(targets[l]);
    }
    ops.push_back(multi_controlled_x(num_wires, cs, targets[j]));
    for (std::size_t l = 0; l < j; ++l) ops.push_back(on("X", 1, num_wires, {targets[l]}));
  }
  if (ops.empty()) return Circuit::identity(pow2(num_wires));
  return Circuit::sequence(ops);
}

namespace {

CompiledProgram qft_program(std::size_t n, bool expand, bool conjugate_catalysts) {
  check_qft_size(n);
  const std::size_t catalyst_wires = n > 1 ? n : 0;
  const bool ancilla = expand && n == 2;
  const std::size_t num_wires = n + catalyst_wires + (ancilla ? 1 : 0);
  // psi_k sits on wire n + (n - k), so psi_n is the top of the catalyst block.
  auto psi_wire = [n](std::size_t k) { return n + (n - k); };

  auto rotation = [&](std::size_t k, std::size_t a, std::size_t b) {
    std::vector<std::size_t> targets;
    for (std::size_t l = k; l >= 1; --l) targets.push_back(psi_wire(l));
    std::vector<Circuit> out;
    if (expand && k <= 3) {
      out.push_back(expanded_decrement(num_wires, {a, b}, targets));
    } else {
      std::vector<std::size_t> wires = {a, b};
      wires.insert(wires.end(), targets.begin(), targets.end());
      out.push_back(on(cdec_name(k, 2), k + 2, num_wires, wires));
    }
    return out;
  };

  CompiledProgram p;
  p.circuit = Circuit::sequence(qft_layers(n, num_wires, rotation));
  p.gates = qft_target(n);
  p.data_qubits = n;
  std::vector<std::size_t> data(n);
  std::iota(data.begin(), data.end(), 0);
  p.register_layout["data"] = data;
  for (std::size_t k = catalyst_wires; k >= 1; --k) {
    const CycElement z = CycElement::zeta(pow2(k), 1);
    ExactMatrix v = conjugate_catalysts ? ExactMatrix::column({z, 1}) : ExactMatrix::column({1, z});
    const std::string label = std::string(conjugate_catalysts ? "Xpsi" : "psi") + std::to_string(k);
    p.catalysts.push_back({label, {psi_wire(k)}, std::move(v), CycElement(2)});
    p.register_layout[label] = {psi_wire(k)};
  }
  if (ancilla) {
    p.catalysts.push_back({"ancilla", {num_wires - 1}, ExactMatrix::column({1, 0}), CycElement(1)});
    p.register_layout["ancilla"] = {num_wires - 1};
  }
  if (n <= 6) {
    const ExactMatrix f = dft_matrix(n);
    p.source_evaluation = conjugate_catalysts ? f.dagger() : f;
  }
  p.source_description = std::string(conjugate_catalysts ? "inverse " : "") + "QFT on " + std::to_string(n) +
                         " qubit" + (n == 1 ? "" : "s");
  return p;
}

}  // namespace

CompiledProgram compile_QFT(std::size_t n, bool expand_decrementers) { return qft_program(n, expand_decrementers, false); }

CompiledProgram compile_inverse_QFT(std::size_t n, bool expand_decrementers) {
  return qft_program(n, expand_decrementers, true);
}

// ---------------------------------------------------------------- cost model

Rational parse_epsilon(const std::string& text) {
  const auto bad = [&] { return Error(ErrorKind::InvalidArgument, "cannot read epsilon '" + text + "'"); };
  if (text.find('/') != std::string::npos) {
    try {
      return parse_rational(text);
    } catch (const std::exception&) {
      throw bad();
    }
  }
  std::size_t pos = 0;
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (; pos < text.size() && text[pos] != 'e' && text[pos] != 'E'; ++pos) {
    const char c = text[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_point) --scale;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  if (pos < text.size()) {
    const std::string exp = text.substr(pos + 1);
    if (exp.empty()) throw bad();
    std::size_t used = 0;
    try {
      scale += std::stol(exp, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != exp.size()) throw bad();
  }
  if (scale > 400 || scale < -400) throw bad();
  Rational q{mpz_class(digits, 10)};
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale < 0) {
    q /= p10;
  } else {
    q *= p10;
  }
  q.canonicalize();
  return q;
}

namespace {

constexpr mpfr_prec_t kPrecision = 256;

class Real {
 public:
  Real() { mpfr_init2(v_, kPrecision); mpfr_set_zero(v_, 1); }
  explicit Real(const Rational& q) : Real() { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
  Real(const Real& o) : Real() { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real& operator=(const Real& o) { mpfr_set(v_, o.v_, MPFR_RNDN); return *this; }
  ~Real() { mpfr_clear(v_); }

  static Real log2(const Rational& q) {
    Real r(q);
    mpfr_log2(r.v_, r.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.30Rg", v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

 private:
  mpfr_t v_;
};

Real integer(long v) { return Real(Rational(v)); }

}  // namespace

CostReport cost_model(const std::string& kind, std::size_t size, const std::string& epsilon) {
  const Rational eps = parse_epsilon(epsilon);
  if (eps <= 0 || eps > 1) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1]");
  if (size < 1) throw Error(ErrorKind::InvalidArgument, "size must be at least 1");
  CostReport r;
  r.kind = kind;
  r.size = size;
  r.epsilon = epsilon;
  const long s = static_cast<long>(size);
  Real approx;
  Real catalytic;
  if (kind == "egate") {
    approx = integer(s) * integer(3) * Real::log2(Rational(s) / eps);
    catalytic = integer(6) * Real::log2(Rational(1) / eps) + integer(4 * s);
    r.notes.push_back("approx: m independent rotations, each 3 log2(m/eps) T gates");
    r.notes.push_back("catalytic: one catalyst prepared to eps (6 log2(1/eps)) plus 4 T per embedded gate");
    if (eps == Rational(1, 1000000000000000L)) {
      const Real asym = integer(4) / (integer(3) * (integer(50) + Real::log2(Rational(s))));
      r.asymptotic_ratio = asym.str();
      r.notes.push_back("asymptotic ratio 4/(3(50 + log2 m)) uses log2(1e15) ~ 50");
    }
  } else if (kind == "qft") {
    if (size < 2) throw Error(ErrorKind::InvalidArgument, "qft cost needs n >= 2 (n = 1 has no rotations)");
    const long rot = s * (s - 1) / 2;
    approx = integer(rot) * integer(3) * Real::log2(Rational(rot) / eps);
    long decrements = 0;
    for (long k = 2; k <= s; ++k) decrements += (s - k + 1) * 4 * (k - 1);
    catalytic = integer(decrements) + integer(s) * integer(3) * Real::log2(Rational(s) / eps);
    r.notes.push_back("approx: n(n-1)/2 controlled rotations, each 3 log2(r/eps) T gates");
    r.notes.push_back("catalytic: each k-qubit controlled decrement costed at 4(k-1) T gates (adder constant chosen here)");
    r.notes.push_back("catalytic: n catalyst states, each prepared to eps/n at 3 log2(n/eps) T gates");
  } else {
    throw Error(ErrorKind::InvalidArgument, "cost kind must be egate or qft, got '" + kind + "'");
  }
  const Real ratio = catalytic / approx;
  r.approx_tcount = approx.str();
  r.catalytic_tcount = catalytic.str();
  r.ratio = ratio.str();
  r.reduction = (integer(1) - ratio).str();
  r.approx = approx.to_double();
  r.catalytic = catalytic.to_double();
  return r;
}

json cost_to_json(const CostReport& r) {
  json j = {{"kind", r.kind},
            {"size", r.size},
            {"epsilon", r.epsilon},
            {"approx_tcount", r.approx_tcount},
            {"catalytic_tcount", r.catalytic_tcount},
            {"ratio", r.ratio},
            {"reduction", r.reduction},
            {"notes", r.notes}};
  if (r.asymptotic_ratio) j["asymptotic_ratio"] = *r.asymptotic_ratio;
  return j;
}

std::string cost_to_csv(const CostReport& r) {
  std::ostringstream os;
  os << "kind,size,epsilon,approx_tcount,catalytic_tcount,ratio,reduction,asymptotic_ratio\n";
  os << r.kind << ',' << r.size << ',' << r.epsilon << ',' << r.approx_tcount << ',' << r.catalytic_tcount << ','
     << r.ratio << ',' << r.reduction << ',' << r.asymptotic_ratio.value_or("") << '\n';
  return os.str();
}

// ---------------------------------------------------------------- export

namespace {

std::size_t qubits_of(std::size_t dim) {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < dim) ++w;
  if ((std::size_t{1} << w) != dim) throw Error(ErrorKind::InvalidArgument, "not a qubit circuit");
  return w;
}

// Returns the wire now holding each position of c after it acts.
std::vector<std::size_t> flatten_into(const Circuit& c, const std::vector<std::size_t>& wires,
                                      std::vector<WireOp>& out) {
  switch (c.kind()) {
    case Circuit::Kind::Identity:
      return wires;
    case Circuit::Kind::Gate:
      out.push_back({c.name(), wires});
      return wires;
    case Circuit::Kind::Swap: {
      const std::size_t a = qubits_of(c.swap_m());
      const std::size_t b = qubits_of(c.swap_n());
      std::vector<std::size_t> moved(a + b);
      for (std::size_t i = 0; i < a; ++i) moved[b + i] = wires[i];
      for (std::size_t j = 0; j < b; ++j) moved[j] = wires[a + j];
      return moved;
    }
    case Circuit::Kind::Seq: {
      const auto mid = flatten_into(c.right(), wires, out);
      return flatten_into(c.left(), mid, out);
    }
    case Circuit::Kind::Par: {
      const std::size_t a = qubits_of(c.left().dim());
      std::vector<std::size_t> lw(wires.begin(), wires.begin() + static_cast<long>(a));
      std::vector<std::size_t> rw(wires.begin() + static_cast<long>(a), wires.end());
      auto l = flatten_into(c.left(), lw, out);
      const auto r = flatten_into(c.right(), rw, out);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
  }
  return wires;
}

}  // namespace

std::vector<WireOp> flatten(const Circuit& c) {
  const std::size_t w = qubits_of(c.dim());
  std::vector<std::size_t> wires(w);
  std::iota(wires.begin(), wires.end(), 0);
  std::vector<WireOp> ops;
  std::vector<std::size_t> at = flatten_into(c, wires, ops);
  // at[i] is the physical wire holding logical position i; route it home.
  for (std::size_t i = 0; i < w; ++i) {
    if (at[i] == i) continue;
    const auto j = static_cast<std::size_t>(std::find(at.begin(), at.end(), i) - at.begin());
    ops.push_back({"swap", {std::min(at[i], i), std::max(at[i], i)}});
    std::swap(at[i], at[j]);
  }
  return ops;
}

std::string export_qasm(const CompiledProgram& p) {
  std::ostringstream os;
  os << "// " << p.source_description << "\n";
  for (const auto& c : p.catalysts) {
    os << "// catalyst " << c.label << " on q[" << c.wires.front() << "]: (";
    for (std::size_t i = 0; i < c.vector.rows(); ++i) os << (i ? ", " : "") << c.vector(i, 0).to_string();
    os << ") / sqrt(" << c.norm_sq.to_string() << ")\n";
  }
  os << "qreg q[" << total_wires(p) << "];\n";
  for (const auto& op : flatten(p.circuit)) {
    std::string name = op.name;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
    os << name;
    for (std::size_t i = 0; i < op.wires.size(); ++i) os << (i ? ",q[" : " q[") << op.wires[i] << "]";
    os << ";";
    if (op.name.rfind("CDEC", 0) == 0 || op.name.rfind("CCDEC", 0) == 0) os << "  // macro: controlled decrement";
    os << "\n";
  }
  return os.str();
}

json program_to_json(const CompiledProgram& p) {
  json cats = json::array();
  for (const auto& c : p.catalysts) {
    json v = json::array();
    for (std::size_t i = 0; i < c.vector.rows(); ++i) v.push_back(cyc_to_json(c.vector(i, 0)));
    cats.push_back({{"label", c.label}, {"wires", c.wires}, {"vector", v}, {"norm_sq", cyc_to_json(c.norm_sq)}});
  }
  json j = {{"source", p.source_description},
            {"gate_set", p.gates.name()},
            {"wires", total_wires(p)},
            {"circuit", circuit_to_json(p.circuit)},
            {"catalysts", cats},
            {"layout", p.register_layout},
            {"gate_counts", gate_histogram(p.circuit)}};
  if (p.tcount) j["tcount"] = *p.tcount;
  if (p.source_evaluation) j["source_evaluation"] = matrix_to_json(*p.source_evaluation);
  return j;
}

CompiledProgram program_from_json(const json& j) {
  try {
    CompiledProgram p;
    p.gates = gateset_by_name(j.at("gate_set").get<std::string>());
    p.circuit = circuit_from_any(j.at("circuit"), p.gates);
    p.source_description = j.value("source", "");
    for (const auto& c : j.at("catalysts")) {
      std::vector<CycElement> v;
      for (const auto& e : c.at("vector")) v.push_back(cyc_from_json(e));
      CatalystSlot slot{c.value("label", ""), c.at("wires").get<std::vector<std::size_t>>(), ExactMatrix::column(v),
                        cyc_from_json(c.at("norm_sq"))};
      if (inner(slot.vector, slot.vector) != slot.norm_sq) {
        throw Error(ErrorKind::InvalidArgument, "catalyst " + slot.label + ": norm_sq does not match its vector");
      }
      p.catalysts.push_back(std::move(slot));
    }
    p.register_layout = j.value("layout", std::map<std::string, std::vector<std::size_t>>{});
    const std::size_t wires = j.at("wires").get<std::size_t>();
    std::size_t cat_wires = 0;
    for (const auto& c : p.catalysts) cat_wires += c.wires.size();
    if (cat_wires > wires || pow2(wires) != p.circuit.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "wire count does not match the circuit");
    }
    p.data_qubits = wires - cat_wires;
    if (j.contains("tcount")) p.tcount = j["tcount"].get<long>();
    if (j.contains("source_evaluation")) p.source_evaluation = matrix_from_json(j["source_evaluation"]);
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed program: ") + e.what());
  }
}

}  // namespace catembed

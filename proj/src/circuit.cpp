#include "catembed/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "catembed/error.hpp"

namespace catembed {

std::size_t pow2(std::size_t k) { return std::size_t{1} << k; }

void GateSet::add(Gate gate) {
  if (gate.name.empty()) throw Error(ErrorKind::InvalidArgument, "gate with empty name");
  if (gates_.count(gate.name)) throw Error(ErrorKind::InvalidArgument, "duplicate gate " + gate.name);
  const ExactMatrix& e = gate.evaluation;
  if (!e.is_square() || e.rows() != gate.dimension) {
    throw Error(ErrorKind::DimensionMismatch, "gate " + gate.name + " evaluation does not match its dimension");
  }
  if (!is_unitary(e)) throw Error(ErrorKind::InvalidArgument, "gate " + gate.name + " is not unitary");
  gates_.emplace(gate.name, std::move(gate));
}

void GateSet::add(const std::string& name, const ExactMatrix& evaluation) {
  add(Gate{name, evaluation.rows(), evaluation});
}

const Gate& GateSet::get(const std::string& name) const {
  auto it = gates_.find(name);
  if (it == gates_.end()) throw Error(ErrorKind::UnknownGate, "'" + name + "' not in gate set " + name_);
  return it->second;
}

GateSet GateSet::merged(const GateSet& other, std::string name) const {
  GateSet out(std::move(name));
  out.gates_ = gates_;
  for (const auto& [n, g] : other.gates_) {
    auto it = out.gates_.find(n);
    if (it == out.gates_.end()) {
      out.gates_.emplace(n, g);
    } else if (it->second.evaluation != g.evaluation) {
      throw Error(ErrorKind::InvalidArgument, "conflicting definitions of gate " + n);
    }
  }
  return out;
}

Circuit Circuit::identity(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "identity of dimension 0");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Identity;
  node->dim = n;
  return Circuit(std::move(node));
}

Circuit Circuit::swap(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw Error(ErrorKind::InvalidArgument, "swap of dimension 0");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Swap;
  node->dim = m * n;
  node->m = m;
  node->n = n;
  return Circuit(std::move(node));
}

Circuit Circuit::gate(std::string name, std::size_t dimension) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Gate;
  node->dim = dimension;
  node->name = std::move(name);
  return Circuit(std::move(node));
}

Circuit Circuit::seq(Circuit c, Circuit d) {
  if (c.dim() != d.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "seq of dimensions " + std::to_string(c.dim()) + " and " + std::to_string(d.dim()));
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Seq;
  node->dim = c.dim();
  node->left = std::move(c.node_);
  node->right = std::move(d.node_);
  return Circuit(std::move(node));
}

Circuit Circuit::par(Circuit c, Circuit d) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Par;
  node->dim = c.dim() * d.dim();
  node->left = std::move(c.node_);
  node->right = std::move(d.node_);
  return Circuit(std::move(node));
}

Circuit Circuit::sequence(const std::vector<Circuit>& in_time_order) {
  if (in_time_order.empty()) throw Error(ErrorKind::InvalidArgument, "empty sequence");
  // Left-nested so evaluation multiplies an accumulated product by one gate at a time.
  Circuit acc = in_time_order.back();
  for (std::size_t i = in_time_order.size() - 1; i-- > 0;) acc = seq(acc, in_time_order[i]);
  return acc;
}

std::size_t Circuit::node_count() const {
  std::size_t count = 0;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    ++count;
    if (n->left) stack.push_back(n->left.get());
    if (n->right) stack.push_back(n->right.get());
  }
  return count;
}

bool operator==(const Circuit& a, const Circuit& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.dim() != b.dim()) return false;
  switch (a.kind()) {
    case Circuit::Kind::Identity: return true;
    case Circuit::Kind::Swap: return a.swap_m() == b.swap_m() && a.swap_n() == b.swap_n();
    case Circuit::Kind::Gate: return a.name() == b.name();
    case Circuit::Kind::Seq:
    case Circuit::Kind::Par: return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const GateSet& gs) : text_(text), gs_(gs) {}

  Circuit parse_all() {
    Circuit c = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string atom() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail("expected a token");
    return text_.substr(start, pos_ - start);
  }

  std::size_t number() {
    const std::string tok = atom();
    if (!std::all_of(tok.begin(), tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      fail("expected a number, got '" + tok + "'");
    }
    return std::stoul(tok);
  }

  Circuit parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      const std::string head = atom();
      Circuit result = Circuit::identity(1);
      if (head == "swap") {
        const std::size_t m = number();
        const std::size_t n = number();
        result = Circuit::swap(m, n);
      } else if (head == "seq" || head == "par") {
        result = parse();
        int args = 1;
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] != ')') {
          Circuit next = parse();
          result = head == "seq" ? Circuit::seq(result, next) : Circuit::par(result, next);
          ++args;
          skip_ws();
        }
        if (args < 2) fail(head + " needs at least two arguments");
      } else {
        fail("unknown form '" + head + "'");
      }
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return result;
    }
    const std::string tok = atom();
    if (tok.size() > 1 && tok[0] == 'I' &&
        std::all_of(tok.begin() + 1, tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      return Circuit::identity(std::stoul(tok.substr(1)));
    }
    const Gate& g = gs_.get(tok);
    return Circuit::gate(g.name, g.dimension);
  }

  const std::string& text_;
  const GateSet& gs_;
  std::size_t pos_ = 0;
};

void print_into(const Circuit& c, std::string& out) {
  switch (c.kind()) {
    case Circuit::Kind::Identity: out += "I" + std::to_string(c.dim()); return;
    case Circuit::Kind::Swap: out += "(swap " + std::to_string(c.swap_m()) + " " + std::to_string(c.swap_n()) + ")"; return;
    case Circuit::Kind::Gate: out += c.name(); return;
    case Circuit::Kind::Seq:
    case Circuit::Kind::Par:
      out += c.kind() == Circuit::Kind::Seq ? "(seq " : "(par ";
      print_into(c.left(), out);
      out += " ";
      print_into(c.right(), out);
      out += ")";
      return;
  }
}

}  // namespace

Circuit circuit_parse(const std::string& text, const GateSet& gs) { return Parser(text, gs).parse_all(); }

std::string circuit_print(const Circuit& c) {
  std::string out;
  print_into(c, out);
  return out;
}

ExactMatrix evaluate(const Circuit& c, const GateSet& gs) {
  switch (c.kind()) {
    case Circuit::Kind::Identity: return ExactMatrix::identity(c.dim());
    case Circuit::Kind::Swap: return swap_matrix(c.swap_m(), c.swap_n());
    case Circuit::Kind::Gate: {
      const Gate& g = gs.get(c.name());
      if (g.dimension != c.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "gate " + c.name() + " has dimension " +
                                                      std::to_string(g.dimension) + " in " + gs.name());
      }
      return g.evaluation;
    }
    case Circuit::Kind::Seq: return evaluate(c.left(), gs) * evaluate(c.right(), gs);
    case Circuit::Kind::Par: return tensor(evaluate(c.left(), gs), evaluate(c.right(), gs));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown circuit node");
}

namespace {

void visit_gates(const Circuit& c, const std::function<void(const std::string&)>& f) {
  std::vector<Circuit> stack{c};
  while (!stack.empty()) {
    Circuit n = stack.back();
    stack.pop_back();
    if (n.kind() == Circuit::Kind::Gate) {
      f(n.name());
    } else if (n.kind() == Circuit::Kind::Seq || n.kind() == Circuit::Kind::Par) {
      stack.push_back(n.left());
      stack.push_back(n.right());
    }
  }
}

}  // namespace

long gate_count(const Circuit& c, const std::map<std::string, long>& weights) {
  long total = 0;
  visit_gates(c, [&](const std::string& name) {
    auto it = weights.find(name);
    if (it != weights.end()) total += it->second;
  });
  return total;
}

std::map<std::string, long> gate_histogram(const Circuit& c) {
  std::map<std::string, long> hist;
  visit_gates(c, [&](const std::string& name) { ++hist[name]; });
  return hist;
}

namespace {

Circuit pad(std::size_t before, const Circuit& c, std::size_t after) {
  Circuit out = c;
  if (after > 1) out = Circuit::par(out, Circuit::identity(after));
  if (before > 1) out = Circuit::par(Circuit::identity(before), out);
  return out;
}

}  // namespace

Circuit place_on_wires(const Circuit& g, std::size_t num_wires, const std::vector<std::size_t>& wires) {
  const std::size_t r = wires.size();
  if (g.dim() != pow2(r)) throw Error(ErrorKind::DimensionMismatch, "gate arity does not match wire list");
  for (std::size_t i = 0; i < r; ++i) {
    if (wires[i] >= num_wires) throw Error(ErrorKind::InvalidArgument, "wire index out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (wires[i] == wires[j]) throw Error(ErrorKind::InvalidArgument, "repeated wire");
    }
  }
  // Bring the target wires to the front one at a time; each move is a
  // single Swap(2^(p-j), 2) that rotates positions j..p right by one.
  std::vector<std::size_t> order(num_wires);
  for (std::size_t i = 0; i < num_wires; ++i) order[i] = i;
  std::vector<Circuit> forward;
  std::vector<Circuit> backward;
  for (std::size_t j = 0; j < r; ++j) {
    const std::size_t p = static_cast<std::size_t>(std::find(order.begin(), order.end(), wires[j]) - order.begin());
    if (p == j) continue;
    std::rotate(order.begin() + static_cast<long>(j), order.begin() + static_cast<long>(p),
                order.begin() + static_cast<long>(p) + 1);
    const std::size_t before = pow2(j);
    const std::size_t after = pow2(num_wires - p - 1);
    forward.push_back(pad(before, Circuit::swap(pow2(p - j), 2), after));
    backward.push_back(pad(before, Circuit::swap(2, pow2(p - j)), after));
  }
  std::vector<Circuit> steps = forward;
  steps.push_back(pad(1, g, pow2(num_wires - r)));
  steps.insert(steps.end(), backward.rbegin(), backward.rend());
  return Circuit::sequence(steps);
}

}  // namespace catembed

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "catembed/matrix.hpp"

namespace catembed {

struct Gate {
  std::string name;
  std::size_t dimension = 0;
  ExactMatrix evaluation;
};

class GateSet {
 public:
  explicit GateSet(std::string name = "") : name_(std::move(name)) {}

  // Rejects duplicate names, non-unitary evaluations and dimension mismatches.
  void add(Gate gate);
  void add(const std::string& name, const ExactMatrix& evaluation);

  const std::string& name() const { return name_; }
  bool contains(const std::string& name) const { return gates_.count(name) != 0; }
  const Gate& get(const std::string& name) const;
  const std::map<std::string, Gate>& gates() const { return gates_; }

  // Union; gates present in both must agree.
  GateSet merged(const GateSet& other, std::string name) const;

 private:
  std::string name_;
  std::map<std::string, Gate> gates_;
};

// A circuit word: identity, swap, gate leaf, sequential or parallel composition.
// Seq(C, D) denotes C after D, so its evaluation is e(C) * e(D).
class Circuit {
 public:
  enum class Kind { Identity, Swap, Gate, Seq, Par };

  static Circuit identity(std::size_t n);
  static Circuit swap(std::size_t m, std::size_t n);
  static Circuit gate(std::string name, std::size_t dimension);
  static Circuit seq(Circuit c, Circuit d);
  static Circuit par(Circuit c, Circuit d);

  // Gates listed in the order they act (first element acts first).
  static Circuit sequence(const std::vector<Circuit>& in_time_order);

  Kind kind() const { return node_->kind; }
  std::size_t dim() const { return node_->dim; }
  const std::string& name() const { return node_->name; }
  std::size_t swap_m() const { return node_->m; }
  std::size_t swap_n() const { return node_->n; }
  Circuit left() const { return Circuit(node_->left); }
  Circuit right() const { return Circuit(node_->right); }

  std::size_t node_count() const;

  friend bool operator==(const Circuit& a, const Circuit& b);
  friend bool operator!=(const Circuit& a, const Circuit& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind = Kind::Identity;
    std::size_t dim = 1;
    std::string name;
    std::size_t m = 0;
    std::size_t n = 0;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };
  explicit Circuit(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// S-expression: I<n> | (swap m n) | name | (seq c d) | (par c d).
// seq and par also accept more than two arguments, nested to the left.
Circuit circuit_parse(const std::string& text, const GateSet& gs);
std::string circuit_print(const Circuit& c);

ExactMatrix evaluate(const Circuit& c, const GateSet& gs);

long gate_count(const Circuit& c, const std::map<std::string, long>& weights);
std::map<std::string, long> gate_histogram(const Circuit& c);

// Qubit circuits: apply a gate acting on wires.size() qubits to the given
// wires (first listed = most significant factor) of a num_wires register.
Circuit place_on_wires(const Circuit& g, std::size_t num_wires, const std::vector<std::size_t>& wires);

std::size_t pow2(std::size_t k);

}  // namespace catembed

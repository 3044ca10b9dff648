#include "catembed/io.hpp"

#include <algorithm>
#include <cctype>

#include "catembed/constants.hpp"
#include "catembed/error.hpp"

namespace catembed {

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : s_(text) {}

  CycElement parse_all() {
    CycElement v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " in '" + s_ + "' at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  CycElement sum() {
    CycElement v = product();
    for (;;) {
      if (eat('+')) {
        v += product();
      } else if (eat('-')) {
        v -= product();
      } else {
        return v;
      }
    }
  }

  CycElement product() {
    CycElement v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        CycElement d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  CycElement unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  CycElement power() {
    CycElement base = primary();
    if (!eat('^')) return base;
    skip();
    bool negative = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    const std::string digits = read_digits();
    if (digits.empty()) fail("expected an integer exponent");
    const std::int64_t e = std::stoll(digits);
    if (negative && base.is_zero()) fail("division by zero");
    return base.pow(negative ? -e : e);
  }

  std::string read_digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  CycElement primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      CycElement v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      return CycElement(Rational(mpz_class(read_digits())));
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string word = s_.substr(start, pos_ - start);
    if (word == "i") return imag_unit();
    if (word == "sqrt2") return sqrt2();
    if (word == "sqrt3") return sqrt3();
    if (word == "sqrt5") return sqrt5();
    if (word.size() > 1 && word[0] == 'z' &&
        std::all_of(word.begin() + 1, word.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const Conductor n = std::stoull(word.substr(1));
      if (n == 0) fail("z0 is not a root of unity");
      return CycElement::zeta(n, 1);
    }
    pos_ = start;
    fail("unknown symbol '" + word + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

CycElement parse_cyc(const std::string& text) { return ExprParser(text).parse_all(); }

json cyc_to_json(const CycElement& a) { return a.to_string(); }

CycElement cyc_from_json(const json& j) {
  if (j.is_number_integer()) return CycElement(j.get<long>());
  if (j.is_string()) return parse_cyc(j.get<std::string>());
  throw Error(ErrorKind::ParseError, "expected a number or expression string, got " + j.dump());
}

json matrix_to_json(const ExactMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(cyc_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

ExactMatrix matrix_from_json(const json& j) {
  const json& rows = j.is_object() ? j.at("entries") : j;
  if (!rows.is_array() || rows.empty()) throw Error(ErrorKind::ParseError, "matrix needs a nonempty array of rows");
  const std::size_t r = rows.size();
  const std::size_t c = rows[0].size();
  std::vector<CycElement> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != c) throw Error(ErrorKind::ParseError, "ragged matrix rows");
    for (const auto& e : row) entries.push_back(cyc_from_json(e));
  }
  if (j.is_object() && (j.value("rows", r) != r || j.value("cols", c) != c)) {
    throw Error(ErrorKind::ShapeMismatch, "declared shape disagrees with entries");
  }
  return ExactMatrix(r, c, std::move(entries));
}

json polynomial_to_json(const Polynomial& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(cyc_to_json(c));
  return out;
}

json circuit_to_json(const Circuit& c) {
  switch (c.kind()) {
    case Circuit::Kind::Identity: return {{"tag", "id"}, {"dim", c.dim()}};
    case Circuit::Kind::Swap: return {{"tag", "swap"}, {"m", c.swap_m()}, {"n", c.swap_n()}};
    case Circuit::Kind::Gate: return {{"tag", "gate"}, {"name", c.name()}, {"dim", c.dim()}};
    case Circuit::Kind::Seq:
    case Circuit::Kind::Par:
      return {{"tag", c.kind() == Circuit::Kind::Seq ? "seq" : "par"},
              {"left", circuit_to_json(c.left())},
              {"right", circuit_to_json(c.right())}};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown circuit node");
}

Circuit circuit_from_json(const json& j, const GateSet& gs) {
  try {
    const std::string tag = j.at("tag").get<std::string>();
    if (tag == "id") return Circuit::identity(j.at("dim").get<std::size_t>());
    if (tag == "swap") return Circuit::swap(j.at("m").get<std::size_t>(), j.at("n").get<std::size_t>());
    if (tag == "gate") {
      const Gate& g = gs.get(j.at("name").get<std::string>());
      return Circuit::gate(g.name, g.dimension);
    }
    if (tag == "seq") return Circuit::seq(circuit_from_json(j.at("left"), gs), circuit_from_json(j.at("right"), gs));
    if (tag == "par") return Circuit::par(circuit_from_json(j.at("left"), gs), circuit_from_json(j.at("right"), gs));
    throw Error(ErrorKind::ParseError, "unknown circuit tag '" + tag + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed circuit JSON: ") + e.what());
  }
}

Circuit circuit_from_any(const json& j, const GateSet& gs) {
  if (j.is_string()) return circuit_parse(j.get<std::string>(), gs);
  return circuit_from_json(j, gs);
}

json ring_to_json(const RingSpec& r) {
  json gens = json::array();
  for (const auto& g : r.generators()) gens.push_back(cyc_to_json(g));
  json primes = nullptr;
  if (!r.all_denominators()) primes = r.denominator_primes();
  return {{"name", r.name()}, {"generators", std::move(gens)}, {"denominator_primes", std::move(primes)}};
}

RingSpec ring_from_json(const json& j) {
  try {
    std::vector<CycElement> gens;
    for (const auto& g : j.at("generators")) gens.push_back(cyc_from_json(g));
    std::optional<std::set<Conductor>> primes;
    if (!j.at("denominator_primes").is_null()) primes = j.at("denominator_primes").get<std::set<Conductor>>();
    return RingSpec(std::move(gens), std::move(primes), j.value("name", ""));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed ring JSON: ") + e.what());
  }
}

}  // namespace catembed

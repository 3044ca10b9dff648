#include "catembed/companion.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>

#include "catembed/constants.hpp"
#include "catembed/error.hpp"

namespace catembed {

ExactMatrix shift_companion(const CycElement& s) {
  if (s * s.conj() != CycElement(1)) {
    throw Error(ErrorKind::InvalidArgument, "shift companion needs a unimodular entry, got " + s.to_string());
  }
  return {{0, 1}, {s, 0}};
}

ExactMatrix sum_of_squares_companion(const CycElement& a, const CycElement& b) { return {{a, b}, {b, -a}}; }

ExactMatrix shifted_rotation_companion(const CycElement& c) {
  if (c != c.conj()) throw Error(ErrorKind::InvalidArgument, "cosine must be real");
  const CycElement half(Rational(1, 2));
  const CycElement b = half + c;
  const CycElement sin_sq = half * half + b * b;
  if (sin_sq != CycElement(1) - c * c) {
    throw Error(ErrorKind::InvalidArgument, "sin^2 = 1/4 + (1/2 + c)^2 fails for c = " + c.to_string());
  }
  if (sin_sq.is_zero()) throw Error(ErrorKind::InvalidArgument, "degenerate rotation: sin = 0");
  // 1/2 [[1, 1 + 2c], [1 + 2c, -1]] has eigenvalues +- sin
  const ExactMatrix rotation = sum_of_squares_companion(half, b);
  const ExactMatrix out = rotation.scaled(imag_unit()) + ExactMatrix::identity(2).scaled(c);
  // eigenvalues c +- i sin: trace 2c, determinant c^2 + sin^2 = 1
  if (char_poly(out) != Polynomial({1, c.scaled(-2), 1})) {
    throw Error(ErrorKind::InvalidArgument, "rotation companion has an unexpected characteristic polynomial");
  }
  return out;
}

namespace {

ExactMatrix column_from_json(const json& j) {
  std::vector<CycElement> v;
  for (const auto& e : j) v.push_back(cyc_from_json(e));
  if (v.empty()) throw Error(ErrorKind::ParseError, "empty catalyst");
  return ExactMatrix::column(std::move(v));
}

CatalogEntry make_entry(std::string id, const RingTower& tower, const ExactMatrix& lambda,
                        std::optional<ExactMatrix> catalyst, std::optional<CycElement> norm_sq, std::string provenance,
                        std::vector<ExactMatrix> probes) {
  PreEmbedding pe = preembed_make(tower, lambda);
  const ExactMatrix v = catalyst ? *catalyst : pe.catalyst.basis.front();
  if (v.rows() != pe.k || v.cols() != 1) throw Error(ErrorKind::ShapeMismatch, id + ": catalyst has the wrong shape");
  if (lambda * v != v.scaled(tower.alpha())) {
    throw Error(ErrorKind::AlphaNotEigenvalue, id + ": catalyst is not an alpha eigenvector");
  }
  const CycElement n = inner(v, v);
  if (norm_sq && *norm_sq != n) {
    throw Error(ErrorKind::InvalidArgument, id + ": stated norm^2 " + norm_sq->to_string() + " differs from " +
                                                n.to_string());
  }
  if (pe.catalyst.multiplicity == 1 && rank_one_projector(v) != pe.projector) {
    throw Error(ErrorKind::InvalidArgument, id + ": catalyst does not span the alpha eigenspace");
  }
  for (const auto& p : probes) {
    if (!catalytic_check(pe, p)) throw Error(ErrorKind::InvalidArgument, id + ": catalytic check fails on a probe");
  }
  return CatalogEntry{std::move(id), std::move(pe), v, n, std::move(provenance), std::move(probes), std::nullopt};
}

}  // namespace

CatalogEntry entry_from_json(const json& j) {
  try {
    const std::string id = j.at("id").get<std::string>();
    const RingTower tower(ring_from_json(j.at("tower").at("base")), cyc_from_json(j.at("tower").at("alpha")));
    const ExactMatrix lambda = matrix_from_json(j.at("lambda"));
    std::optional<ExactMatrix> catalyst;
    if (j.contains("catalyst") && !j["catalyst"].is_null()) catalyst = column_from_json(j["catalyst"]);
    std::optional<CycElement> norm_sq;
    if (j.contains("norm_sq") && !j["norm_sq"].is_null()) norm_sq = cyc_from_json(j["norm_sq"]);
    std::vector<ExactMatrix> probes;
    for (const auto& p : j.value("probes", json::array())) probes.push_back(matrix_from_json(p));
    CatalogEntry e = make_entry(id, tower, lambda, catalyst, norm_sq, j.value("provenance", ""), std::move(probes));
    if (j.contains("power") && j["power"].get<std::size_t>() != e.embedding.power) {
      throw Error(ErrorKind::InvalidArgument, id + ": stated power differs from char_poly");
    }
    if (j.contains("concat")) {
      e.concat_of = std::make_pair(j["concat"].at("outer").get<std::string>(), j["concat"].at("inner").get<std::string>());
    }
    return e;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::ParseError, std::string("malformed catalog entry: ") + ex.what());
  }
}

json entry_to_json(const CatalogEntry& e) {
  json catalyst = json::array();
  for (std::size_t i = 0; i < e.catalyst.rows(); ++i) catalyst.push_back(cyc_to_json(e.catalyst(i, 0)));
  json probes = json::array();
  for (const auto& p : e.probes) probes.push_back(matrix_to_json(p));
  json out = {{"id", e.id},
              {"tower", {{"base", ring_to_json(e.embedding.tower.base())}, {"alpha", cyc_to_json(e.embedding.tower.alpha())}}},
              {"min_poly", polynomial_to_json(e.embedding.tower.min_poly())},
              {"power", e.embedding.power},
              {"lambda", matrix_to_json(e.embedding.lambda)},
              {"catalyst", std::move(catalyst)},
              {"norm_sq", cyc_to_json(e.norm_sq)},
              {"provenance", e.provenance},
              {"probes", std::move(probes)}};
  if (e.concat_of) out["concat"] = {{"outer", e.concat_of->first}, {"inner", e.concat_of->second}};
  return out;
}

CatalogEntry two_power_tower(std::size_t k) {
  if (k < 2 || k > 20) throw Error(ErrorKind::InvalidArgument, "tower index must lie in [2, 20]");
  const Conductor n = Conductor{1} << k;
  const CycElement zeta_half = CycElement::zeta(n / 2, 1);
  const CycElement alpha = CycElement::zeta(n, 1);
  const RingSpec base({zeta_half}, std::set<Conductor>{}, "Z[zeta" + std::to_string(n / 2) + "]");
  const ExactMatrix catalyst = ExactMatrix::column({1, alpha});
  return make_entry("zeta2k/tower(" + std::to_string(k) + ")", RingTower(base, alpha), shift_companion(zeta_half),
                    catalyst, CycElement(2), "shift companion of x^2 - zeta" + std::to_string(n / 2),
                    {ExactMatrix{{alpha}}});
}

std::string catalog_path() {
  if (const char* env = std::getenv("CATEMBED_CATALOG"); env && *env) return env;
  return CATEMBED_DEFAULT_CATALOG;
}

json read_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read catalog " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "catalog " + path + ": " + e.what());
  }
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "catalog must be a JSON array");
  return j;
}

std::vector<std::string> catalog_ids(const std::string& path) {
  std::vector<std::string> ids;
  for (const auto& e : read_catalog(path)) ids.push_back(e.at("id").get<std::string>());
  return ids;
}

CatalogEntry catalog_get(const std::string& id, const std::string& path) {
  static const std::regex tower(R"(zeta2k/tower\((\d+)\))");
  std::smatch m;
  if (std::regex_match(id, m, tower)) return two_power_tower(std::stoul(m[1]));
  for (const auto& e : read_catalog(path)) {
    if (e.value("id", "") == id) return entry_from_json(e);
  }
  throw Error(ErrorKind::UnknownId, "no catalog entry '" + id + "'");
}

void verify_concat(const CatalogEntry& e, const std::string& path) {
  if (!e.concat_of) return;
  const CatalogEntry outer = catalog_get(e.concat_of->first, path);
  const CatalogEntry inner = catalog_get(e.concat_of->second, path);
  const PreEmbedding c = concat(outer.embedding, inner.embedding);
  if (c.lambda != e.embedding.lambda) {
    throw Error(ErrorKind::RingChainMismatch, e.id + ": Lambda differs from the concatenation of its parts");
  }
  if (c.projector != e.embedding.projector) {
    throw Error(ErrorKind::RingChainMismatch, e.id + ": projector differs from P1 (x) P2");
  }
}

}  // namespace catembed

#include "catembed/embed.hpp"

#include <algorithm>
#include <functional>

#include "catembed/error.hpp"

namespace catembed {

namespace {

std::string entry_location(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r) + ", " + std::to_string(c) + ")";
}

}  // namespace

PreEmbedding preembed_make(const RingTower& tower, const ExactMatrix& lambda) {
  if (!lambda.is_square() || lambda.rows() == 0) throw Error(ErrorKind::NotSquare, "Lambda must be square");
  const RingSpec& base = tower.base();
  for (std::size_t r = 0; r < lambda.rows(); ++r) {
    for (std::size_t c = 0; c < lambda.cols(); ++c) {
      if (!base.contains(lambda(r, c))) {
        throw Error(ErrorKind::RingViolation, "Lambda entry " + entry_location(r, c) + " = " +
                                                  lambda(r, c).to_string() + " is not in " + base.name());
      }
    }
  }
  if (!is_normal(lambda)) throw Error(ErrorKind::NotNormal, "Lambda is not normal");
  if (!evaluate_polynomial(tower.min_poly(), lambda).is_zero()) {
    throw Error(ErrorKind::NotAnnihilated, "min poly " + tower.min_poly().to_string() + " does not vanish at Lambda");
  }
  const std::size_t k = lambda.rows();
  const std::size_t d = tower.degree();
  // p irreducible and p(Lambda) = 0 force char_poly = p^(k/d); checked anyway.
  if (k % d != 0 || char_poly(lambda) != tower.min_poly().pow(static_cast<unsigned>(k / d))) {
    throw Error(ErrorKind::NotAnnihilated, "characteristic polynomial is not a power of the min poly");
  }
  Eigenspace es;
  try {
    es = eigenspace_for(lambda, tower.alpha());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotEigenvalue) throw;
    throw Error(ErrorKind::AlphaNotEigenvalue, "alpha = " + tower.alpha().to_string() + " is not an eigenvalue");
  }
  if (es.multiplicity == 0) throw Error(ErrorKind::AlphaNotEigenvalue, "alpha eigenspace is trivial");

  std::vector<ExactMatrix> powers{ExactMatrix::identity(k)};
  for (std::size_t i = 1; i < d; ++i) powers.push_back(powers.back() * lambda);
  ExactMatrix projector = es.projector;
  return PreEmbedding{tower, lambda, std::move(projector), std::move(es), k, k / d, std::move(powers)};
}

ExactMatrix phi_apply(const PreEmbedding& pe, const ExactMatrix& m) {
  const std::size_t k = pe.k;
  const std::size_t rows = m.rows() * k;
  const std::size_t cols = m.cols() * k;
  std::vector<CycElement> out(rows * cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const CycElement& x = m(r, c);
      if (x.is_zero()) continue;
      const auto coeffs = pe.tower.decompose(x);
      if (!coeffs) {
        throw Error(ErrorKind::RingViolation, "entry " + entry_location(r, c) + " = " + x.to_string() +
                                                  " is not in " + pe.tower.extended().name());
      }
      for (std::size_t t = 0; t < coeffs->size(); ++t) {
        const CycElement& ct = (*coeffs)[t];
        if (ct.is_zero()) continue;
        if (!pe.tower.base().denominators_ok(ct)) {
          throw Error(ErrorKind::RingViolation, "entry " + entry_location(r, c) + " = " + x.to_string() +
                                                    " has a coefficient outside " + pe.tower.base().name());
        }
        const ExactMatrix& lp = pe.lambda_powers[t];
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            if (lp(i, j).is_zero()) continue;
            out[(r * k + i) * cols + c * k + j] += ct * lp(i, j);
          }
        }
      }
    }
  }
  return ExactMatrix(rows, cols, std::move(out));
}

bool catalytic_law(const ExactMatrix& phi_m, const ExactMatrix& m, const ExactMatrix& projector) {
  if (phi_m.cols() != m.cols() * projector.rows()) return false;
  return phi_m * tensor(ExactMatrix::identity(m.cols()), projector) == tensor(m, projector);
}

bool left_catalytic_law(const ExactMatrix& phi_m, const ExactMatrix& m, const ExactMatrix& projector) {
  if (phi_m.rows() != m.rows() * projector.rows()) return false;
  return tensor(ExactMatrix::identity(m.rows()), projector) * phi_m == tensor(m, projector);
}

bool catalytic_check(const PreEmbedding& pe, const ExactMatrix& m) {
  const ExactMatrix phi = phi_apply(pe, m);
  return catalytic_law(phi, m, pe.projector) && left_catalytic_law(phi, m, pe.projector);
}

std::vector<TwistedProjector> projector_family(const PreEmbedding& pe) {
  const Conductor n = pe.tower.conductor();
  std::vector<TwistedProjector> family;
  for (Conductor e : pe.tower.conjugate_exponents()) {
    GaloisAutomorphism tau(n, static_cast<std::int64_t>(e));
    family.push_back({tau, mat_galois(tau, pe.projector)});
  }
  if (family.size() != pe.tower.degree()) {
    throw Error(ErrorKind::UnsupportedCase, "Galois orbit size differs from the tower degree");
  }
  ExactMatrix sum(pe.k, pe.k);
  for (std::size_t i = 0; i < family.size(); ++i) {
    sum = sum + family[i].projector;
    for (std::size_t j = 0; j < i; ++j) {
      if (!(family[i].projector * family[j].projector).is_zero()) {
        throw Error(ErrorKind::UnsupportedCase, "twisted projectors are not mutually orthogonal");
      }
    }
  }
  if (sum != ExactMatrix::identity(pe.k)) {
    throw Error(ErrorKind::UnsupportedCase, "twisted projectors do not sum to the identity");
  }
  return family;
}

bool twisted_check(const PreEmbedding& pe, const TwistedProjector& t, const ExactMatrix& m) {
  return catalytic_law(phi_apply(pe, m), mat_galois(t.tau, m), t.projector);
}

ExactMatrix trace_reconstruction(const std::vector<TwistedProjector>& family, const ExactMatrix& m) {
  if (family.empty()) throw Error(ErrorKind::InvalidArgument, "empty projector family");
  const std::size_t k = family.front().projector.rows();
  ExactMatrix sum(m.rows() * k, m.cols() * k);
  for (const auto& t : family) sum = sum + tensor(mat_galois(t.tau, m), t.projector);
  return sum;
}

namespace {

CatalyticEmbedding build_embedding(const GateSet& source, const GateSet& target, const ExactMatrix& projector,
                                   const std::map<std::string, Circuit>& templates,
                                   const std::function<std::optional<Circuit>(const Gate&)>& default_template,
                                   const std::function<bool(const Gate&, const ExactMatrix&)>& accept) {
  if (!projector.is_square() || projector.rows() == 0) throw Error(ErrorKind::NotSquare, "projector must be square");
  CatalyticEmbedding emb{source, target, projector, projector.rows(), {}};
  for (const auto& [name, _] : templates) {
    if (!source.contains(name)) throw Error(ErrorKind::UnknownGate, "template for unknown gate " + name);
  }
  for (const auto& [name, gate] : source.gates()) {
    std::optional<Circuit> tmpl;
    if (auto it = templates.find(name); it != templates.end()) {
      tmpl = it->second;
    } else {
      tmpl = default_template(gate);
    }
    if (!tmpl) throw Error(ErrorKind::TemplateMismatch, "no template for gate " + name);
    if (tmpl->dim() != gate.dimension * emb.k) {
      throw Error(ErrorKind::TemplateMismatch, "template for " + name + " has dimension " +
                                                   std::to_string(tmpl->dim()));
    }
    if (!accept(gate, evaluate(*tmpl, target))) {
      throw Error(ErrorKind::TemplateMismatch, "template for " + name + " does not match its embedding");
    }
    emb.gates.emplace(name, GateEmbedding{name, gate.evaluation, *tmpl});
  }
  return emb;
}

}  // namespace

CatalyticEmbedding lift_gateset(const PreEmbedding& pe, const GateSet& source, const GateSet& target,
                                const std::map<std::string, Circuit>& templates) {
  auto fallback = [&](const Gate& g) -> std::optional<Circuit> {
    if (!target.contains(g.name) || target.get(g.name).evaluation != g.evaluation) return std::nullopt;
    return Circuit::par(Circuit::gate(g.name, g.dimension), Circuit::identity(pe.k));
  };
  auto accept = [&](const Gate& g, const ExactMatrix& e) { return e == phi_apply(pe, g.evaluation); };
  return build_embedding(source, target, pe.projector, templates, fallback, accept);
}

CatalyticEmbedding catalytic_embedding(const GateSet& source, const GateSet& target, const ExactMatrix& projector,
                                       const std::map<std::string, Circuit>& templates) {
  auto none = [](const Gate&) -> std::optional<Circuit> { return std::nullopt; };
  auto accept = [&](const Gate& g, const ExactMatrix& e) { return catalytic_law(e, g.evaluation, projector); };
  return build_embedding(source, target, projector, templates, none, accept);
}

Circuit lift_circuit(const CatalyticEmbedding& emb, const Circuit& c) {
  const std::size_t k = emb.k;
  switch (c.kind()) {
    case Circuit::Kind::Identity: return Circuit::identity(c.dim() * k);
    case Circuit::Kind::Swap: return Circuit::par(c, Circuit::identity(k));
    case Circuit::Kind::Gate: {
      auto it = emb.gates.find(c.name());
      if (it == emb.gates.end()) throw Error(ErrorKind::UnknownGate, "no embedding for gate " + c.name());
      return it->second.circuit;
    }
    case Circuit::Kind::Seq: return Circuit::seq(lift_circuit(emb, c.left()), lift_circuit(emb, c.right()));
    case Circuit::Kind::Par: {
      const std::size_t m = c.left().dim();
      const std::size_t n = c.right().dim();
      const Circuit im = Circuit::identity(m);
      // (I_m (x) phi2) (I_m (x) swap(k,n)) (phi1 (x) I_n) (I_m (x) swap(n,k))
      return Circuit::sequence({Circuit::par(im, Circuit::swap(n, k)),
                                Circuit::par(lift_circuit(emb, c.left()), Circuit::identity(n)),
                                Circuit::par(im, Circuit::swap(k, n)),
                                Circuit::par(im, lift_circuit(emb, c.right()))});
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown circuit node");
}

PreEmbedding concat(const PreEmbedding& pe2, const PreEmbedding& pe1) {
  if (!pe1.tower.base().same_ring(pe2.tower.extended())) {
    throw Error(ErrorKind::RingChainMismatch, "inner embedding starts from " + pe1.tower.base().name() +
                                                  ", outer embedding targets " + pe2.tower.extended().name());
  }
  const RingTower composite(pe2.tower.base(), pe1.tower.alpha());
  PreEmbedding out = preembed_make(composite, phi_apply(pe2, pe1.lambda));

  const ExactMatrix p = tensor(pe1.projector, pe2.projector);
  const ExactMatrix alpha_p = p.scaled(composite.alpha());
  if (out.lambda * p != alpha_p || out.projector * p != p) {
    throw Error(ErrorKind::RingChainMismatch, "P1 (x) P2 is not inside the alpha eigenspace of the composite");
  }
  Eigenspace cat;
  cat.eigenvalue = composite.alpha();
  for (std::size_t i = 0; i < pe1.catalyst.basis.size(); ++i) {
    for (std::size_t j = 0; j < pe2.catalyst.basis.size(); ++j) {
      cat.basis.push_back(tensor(pe1.catalyst.basis[i], pe2.catalyst.basis[j]));
      cat.norms_sq.push_back(pe1.catalyst.norms_sq[i] * pe2.catalyst.norms_sq[j]);
    }
  }
  cat.multiplicity = cat.basis.size();
  cat.projector = p;
  out.projector = p;
  out.catalyst = std::move(cat);
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotStrong: return "not_strong";
    case Verdict::StrongNotLinear: return "strong_not_linear";
    case Verdict::LinearConsistent: return "linear_consistent";
  }
  return "unknown";
}

std::string word_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ".";
    out += w[i];
  }
  return out.empty() ? "I" : out;
}

ExactMatrix word_evaluation(const Word& w, const std::map<std::string, ExactMatrix>& evals) {
  if (w.empty()) throw Error(ErrorKind::InvalidArgument, "empty word");
  ExactMatrix acc = evals.at(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) acc = acc * evals.at(w[i]);
  return acc;
}

namespace {

using SparseVec = std::map<std::size_t, Rational>;

// Coordinates over Q: entry index times phi(N) plus power-basis exponent.
SparseVec rational_coordinates(const ExactMatrix& m, Conductor n) {
  const std::size_t width = euler_phi(n);
  SparseVec v;
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    const CycElement x = m.entries()[i].lift(n);
    for (const auto& [e, c] : x.terms()) v[i * width + static_cast<std::size_t>(e)] = c;
  }
  return v;
}

void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  for (const auto& [i, c] : x) {
    Rational s = y[i] + a * c;
    if (sgn(s) == 0) {
      y.erase(i);
    } else {
      y[i] = std::move(s);
    }
  }
}

// Echelon basis of word evaluations; each row remembers which words it came from.
class WordSpan {
 public:
  // Returns the residual combination: v + sum combo_i S(w_i) with the reduced vector.
  std::pair<SparseVec, SparseVec> reduce(SparseVec v, SparseVec combo) const {
    for (const auto& row : rows_) {
      auto it = v.find(row.pivot);
      if (it == v.end()) continue;
      const Rational f = -it->second / row.vec.at(row.pivot);
      axpy(v, f, row.vec);
      axpy(combo, f, row.combo);
    }
    return {std::move(v), std::move(combo)};
  }

  void insert(SparseVec v, SparseVec combo) {
    const std::size_t pivot = v.begin()->first;
    rows_.push_back({std::move(v), std::move(combo), pivot});
  }

 private:
  struct Row {
    SparseVec vec;
    SparseVec combo;
    std::size_t pivot;
  };
  std::vector<Row> rows_;
};

ExactMatrix combine(const SparseVec& combo, const std::vector<ExactMatrix>& mats) {
  ExactMatrix sum(mats.front().rows(), mats.front().cols());
  for (const auto& [i, c] : combo) sum = sum + mats[i].scaled(CycElement(c));
  return sum;
}

std::vector<std::pair<Rational, Word>> relation_terms(const SparseVec& combo, const std::vector<Word>& words) {
  std::vector<std::pair<Rational, Word>> out;
  for (const auto& [i, c] : combo) out.emplace_back(c, words[i]);
  return out;
}

}  // namespace

ClassificationReport classify(const GateSet& gs, const std::map<std::string, ExactMatrix>& images,
                              const ExactMatrix& projector, std::size_t max_word_len) {
  if (max_word_len == 0) throw Error(ErrorKind::InvalidArgument, "max_word_len must be positive");
  std::map<std::string, ExactMatrix> source;
  Conductor n = 1;
  for (const auto& [name, gate] : gs.gates()) {
    auto it = images.find(name);
    if (it == images.end()) throw Error(ErrorKind::UnknownGate, "no image for gate " + name);
    if (!catalytic_law(it->second, gate.evaluation, projector)) {
      throw Error(ErrorKind::TemplateMismatch, "image of " + name + " violates the catalytic condition");
    }
    source.emplace(name, gate.evaluation);
    n = lcm_conductor(n, gate.evaluation.conductor());
  }
  if (source.empty()) throw Error(ErrorKind::InvalidArgument, "empty gate set");

  std::vector<Word> words;
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_word_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (const auto& [name, _] : source) {
        Word x = w;
        x.push_back(name);
        next.push_back(std::move(x));
      }
    }
    words.insert(words.end(), next.begin(), next.end());
    layer = std::move(next);
  }

  ClassificationReport report;
  report.words_checked = words.size();
  std::vector<ExactMatrix> src;
  std::vector<ExactMatrix> img;
  for (const Word& w : words) {
    src.push_back(word_evaluation(w, source));
    img.push_back(word_evaluation(w, images));
  }

  // Strongness: equal source evaluations must have equal images and conversely.
  std::map<std::string, std::size_t> first_src;
  std::map<std::string, std::size_t> first_img;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto [s, s_new] = first_src.emplace(src[i].to_string(), i);
    auto [t, t_new] = first_img.emplace(img[i].to_string(), i);
    const std::size_t j = !s_new && img[s->second] != img[i] ? s->second
                          : !t_new && src[t->second] != src[i] ? t->second
                                                               : words.size();
    if (j != words.size()) {
      report.verdict = Verdict::NotStrong;
      report.first = words[i];
      report.second = words[j];
      report.detail = "e(" + word_string(words[i]) + ") and e(" + word_string(words[j]) +
                      ") agree on one side of the embedding only";
      return report;
    }
  }

  // Linearity over Q: every rational relation among source evaluations must
  // hold among the images; adjoints and the identity must map consistently.
  WordSpan span;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto [v, combo] = span.reduce(rational_coordinates(src[i], n), SparseVec{{i, Rational(1)}});
    if (!v.empty()) {
      span.insert(std::move(v), std::move(combo));
      continue;
    }
    if (!combine(combo, img).is_zero()) {
      report.verdict = Verdict::StrongNotLinear;
      report.relation = relation_terms(combo, words);
      report.detail = "relation holds for source evaluations but not for their images";
      return report;
    }
  }
  const std::size_t dim = src.front().rows();
  const std::size_t k = projector.rows();
  auto image_of_span_member = [&](const ExactMatrix& m) -> std::optional<ExactMatrix> {
    auto [v, combo] = span.reduce(rational_coordinates(m, n), SparseVec{});
    if (!v.empty()) return std::nullopt;
    return combine(combo, img).scaled(CycElement(-1));
  };
  if (auto id = image_of_span_member(ExactMatrix::identity(dim)); id && *id != ExactMatrix::identity(dim * k)) {
    report.verdict = Verdict::StrongNotLinear;
    report.detail = "the identity lies in the span but is not mapped to the identity";
    return report;
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto adj = image_of_span_member(src[i].dagger());
    if (adj && *adj != img[i].dagger()) {
      report.verdict = Verdict::StrongNotLinear;
      report.first = words[i];
      report.detail = "the adjoint of e(" + word_string(words[i]) + ") is not mapped to the adjoint of its image";
      return report;
    }
  }
  report.verdict = Verdict::LinearConsistent;
  report.detail = "all relations, adjoints and the identity are respected up to length " +
                  std::to_string(max_word_len);
  return report;
}

}  // namespace catembed

#pragma once

#include <map>
#include <string>
#include <vector>

#include "catembed/circuit.hpp"
#include "catembed/matrix.hpp"
#include "catembed/ring.hpp"

namespace catembed {

// Phi: M = sum M_i alpha^i  |->  sum M_i (x) Lambda^i, for a normal
// pseudo-companion Lambda of the minimal polynomial of alpha.
struct PreEmbedding {
  RingTower tower;
  ExactMatrix lambda;
  ExactMatrix projector;
  Eigenspace catalyst;
  std::size_t k = 0;
  std::size_t power = 0;  // char_poly(lambda) = min_poly^power
  std::vector<ExactMatrix> lambda_powers;  // Lambda^0 .. Lambda^(d-1)
};

// Checks, in order: entries in the base ring (RingViolation, with the
// offending entry), normality (NotNormal), p(Lambda) = 0 (NotAnnihilated),
// and that alpha is an eigenvalue (AlphaNotEigenvalue).
PreEmbedding preembed_make(const RingTower& tower, const ExactMatrix& lambda);

ExactMatrix phi_apply(const PreEmbedding& pe, const ExactMatrix& m);

// phi_m (I (x) P) == m (x) P
bool catalytic_law(const ExactMatrix& phi_m, const ExactMatrix& m, const ExactMatrix& projector);
// (I (x) P) phi_m == m (x) P
bool left_catalytic_law(const ExactMatrix& phi_m, const ExactMatrix& m, const ExactMatrix& projector);
// Both sides for Phi(M).
bool catalytic_check(const PreEmbedding& pe, const ExactMatrix& m);

struct TwistedProjector {
  GaloisAutomorphism tau;
  ExactMatrix projector;
};

// The Galois orbit of the projector, identity first. Throws UnsupportedCase
// unless the orbit has [K0(alpha):K0] members summing to I with pairwise
// products zero.
std::vector<TwistedProjector> projector_family(const PreEmbedding& pe);

// Phi(M) (I (x) tau(P)) == tau(M) (x) tau(P)
bool twisted_check(const PreEmbedding& pe, const TwistedProjector& t, const ExactMatrix& m);

// sum over the family of tau(M) (x) tau(P); equals Phi(M) when the family is complete.
ExactMatrix trace_reconstruction(const std::vector<TwistedProjector>& family, const ExactMatrix& m);

struct GateEmbedding {
  std::string gate;
  ExactMatrix source_evaluation;
  Circuit circuit;
};

// A homogeneous catalytic embedding of a gate set: one shared projector.
struct CatalyticEmbedding {
  GateSet source;
  GateSet target;
  ExactMatrix projector;
  std::size_t k = 0;
  std::map<std::string, GateEmbedding> gates;
};

// Templates must evaluate exactly to Phi(e(G)). Gates without a template
// that the target also provides with the same evaluation over the base ring
// default to G (x) I_k.
CatalyticEmbedding lift_gateset(const PreEmbedding& pe, const GateSet& source, const GateSet& target,
                                const std::map<std::string, Circuit>& templates);

// Only the catalytic condition e(phi_G)(I (x) P) = e(G) (x) P is required.
CatalyticEmbedding catalytic_embedding(const GateSet& source, const GateSet& target, const ExactMatrix& projector,
                                       const std::map<std::string, Circuit>& templates);

// The circuit embedding induced by a homogeneous gate embedding.
Circuit lift_circuit(const CatalyticEmbedding& emb, const Circuit& c);

// pe2: R in R[beta2], pe1: R[beta2] in R[beta2][alpha]. Result: R in R[alpha]
// with Lambda = Phi2(Lambda1) and projector P1 (x) P2.
PreEmbedding concat(const PreEmbedding& pe2, const PreEmbedding& pe1);

enum class Verdict { NotStrong, StrongNotLinear, LinearConsistent };
std::string verdict_name(Verdict v);

using Word = std::vector<std::string>;
std::string word_string(const Word& w);

struct ClassificationReport {
  Verdict verdict = Verdict::LinearConsistent;
  // NotStrong: two words with equal source but different image evaluations.
  Word first;
  Word second;
  // StrongNotLinear: sum c_i e(w_i) = 0 holds at source, fails for the images.
  std::vector<std::pair<Rational, Word>> relation;
  std::string detail;
  std::size_t words_checked = 0;
};

// Words over the gate names up to max_word_len, ordered by length then
// lexicographically. images[g] is e(phi_g); all share one projector.
ClassificationReport classify(const GateSet& gs, const std::map<std::string, ExactMatrix>& images,
                              const ExactMatrix& projector, std::size_t max_word_len);

ExactMatrix word_evaluation(const Word& w, const std::map<std::string, ExactMatrix>& evals);

}  // namespace catembed

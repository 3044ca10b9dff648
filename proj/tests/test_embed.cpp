#include <gtest/gtest.h>

#include <random>

#include "catembed/error.hpp"
#include "catembed/gatesets.hpp"
#include "oracles.hpp"
#include "towers.hpp"

using namespace catembed;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

// Phi computed entrywise from the rational-solve decomposition.
ExactMatrix phi_oracle(const PreEmbedding& pe, const ExactMatrix& m) {
  const std::size_t k = pe.k;
  const std::size_t d = pe.tower.degree();
  std::vector<ExactMatrix> powers{ExactMatrix::identity(k)};
  for (std::size_t i = 1; i < d; ++i) powers.push_back(powers.back() * pe.lambda);
  std::vector<CycElement> out(m.rows() * k * m.cols() * k);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto coeffs = oracle::alpha_coefficients(m(r, c), pe.tower.alpha(), pe.tower.base().generators(), d);
      EXPECT_TRUE(coeffs.has_value());
      ExactMatrix block(k, k);
      for (std::size_t i = 0; i < d; ++i) block = block + powers[i].scaled((*coeffs)[i]);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) out[(r * k + i) * m.cols() * k + c * k + j] = block(i, j);
      }
    }
  }
  return ExactMatrix(m.rows() * k, m.cols() * k, out);
}

Circuit random_word(std::mt19937& rng, const std::vector<std::string>& names, std::size_t dim, int len) {
  std::vector<Circuit> gates;
  for (int i = 0; i < len; ++i) gates.push_back(Circuit::gate(names[rng() % names.size()], dim));
  return Circuit::sequence(gates);
}

}  // namespace

TEST(PreEmbed, SqrtFiveExample) {
  const PreEmbedding pe = towers::sqrt5();
  EXPECT_EQ(pe.projector, reference::sqrt5_projector());
  EXPECT_EQ(pe.k, 2u);
  EXPECT_EQ(pe.power, 1u);
  EXPECT_EQ(phi_apply(pe, ExactMatrix{{sqrt5()}}), reference::sqrt5_lambda());
  EXPECT_TRUE(catalytic_check(pe, ExactMatrix{{sqrt5()}}));
}

TEST(PreEmbed, OrderThreePhaseLambdaIsPhaseTimesHS) {
  const PreEmbedding pe = towers::omega3();
  const ExactMatrix hs = reference::hadamard() * reference::phase_s();
  EXPECT_EQ(pe.lambda, hs.scaled(omega8().pow(5)));
  EXPECT_EQ(pe.lambda * reference::omega3_catalyst(), reference::omega3_catalyst().scaled(omega3()));
}

TEST(PreEmbed, ConditionFailuresAreNamed) {
  const RingTower t5(RingSpec::rationals(), sqrt5());
  EXPECT_EQ(kind_of([&] { preembed_make(t5, ExactMatrix{{0, 1}, {5, 0}}); }), ErrorKind::NotNormal);
  EXPECT_EQ(kind_of([&] { preembed_make(t5, ExactMatrix{{1, 0}, {0, -1}}); }), ErrorKind::NotAnnihilated);
  EXPECT_EQ(kind_of([&] { preembed_make(t5, ExactMatrix{{1, 2, 0}, {2, -1, 0}, {0, 0, 1}}); }),
            ErrorKind::NotAnnihilated);
  const RingTower t8(towers::d_i(), omega8());
  try {
    preembed_make(t8, ExactMatrix{{0, 1}, {sqrt2(), 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RingViolation);
    EXPECT_NE(std::string(e.what()).find("(1, 0)"), std::string::npos);
  }
  EXPECT_EQ(kind_of([&] { preembed_make(t8, ExactMatrix(2, 3)); }), ErrorKind::NotSquare);
}

TEST(PreEmbed, DegreeOneTower) {
  const PreEmbedding pe = preembed_make(RingTower(RingSpec::integers(), CycElement(3)), ExactMatrix{{3}});
  EXPECT_EQ(pe.projector, ExactMatrix::identity(1));
  const auto fam = projector_family(pe);
  ASSERT_EQ(fam.size(), 1u);
  EXPECT_EQ(fam[0].projector, ExactMatrix::identity(1));
}

TEST(PhiApply, IdentityAndMembership) {
  const PreEmbedding pe = towers::omega8_over_di();
  EXPECT_EQ(phi_apply(pe, ExactMatrix::identity(3)), ExactMatrix::identity(6));
  EXPECT_EQ(phi_apply(pe, ExactMatrix{{omega8()}}), reference::lambda1());
  EXPECT_EQ(kind_of([&] { phi_apply(pe, ExactMatrix{{1, CycElement::zeta(3, 1)}}); }), ErrorKind::RingViolation);
  EXPECT_EQ(kind_of([&] { phi_apply(pe, ExactMatrix{{CycElement(Rational(1, 3))}}); }), ErrorKind::RingViolation);
}

TEST(PhiApply, AgreesWithRationalSolveOracle) {
  std::mt19937 rng(21);
  for (const PreEmbedding& pe : {towers::sqrt5(), towers::omega8_over_di(), towers::omega3(), towers::zeta5()}) {
    for (int t = 0; t < 3; ++t) {
      // Random element of R[alpha]: sum of base-ring multiples of alpha powers.
      std::vector<CycElement> e;
      for (int j = 0; j < 4; ++j) {
        CycElement x;
        for (std::size_t i = 0; i < pe.tower.degree(); ++i) {
          CycElement c(static_cast<long>(rng() % 5) - 2);
          for (const auto& g : pe.tower.base().generators()) c += g * CycElement(static_cast<long>(rng() % 3) - 1);
          x += c * pe.tower.alpha().pow(static_cast<std::int64_t>(i));
        }
        e.push_back(x);
      }
      const ExactMatrix m(2, 2, e);
      EXPECT_EQ(phi_apply(pe, m), phi_oracle(pe, m));
    }
  }
}

TEST(Concat, OmegaOverDyadic) {
  const PreEmbedding pe = concat(towers::i_over_d(), towers::omega8_over_di());
  EXPECT_EQ(pe.lambda, reference::concat_lambda());
  EXPECT_EQ(char_poly(pe.lambda), Polynomial({1, 0, 0, 0, 1}));
  EXPECT_EQ(pe.projector, reference::concat_projector());
  EXPECT_EQ(pe.projector, tensor(reference::projector1(), reference::projector2()));
  const PreEmbedding outer = towers::i_over_d();
  EXPECT_EQ(matrix_power(pe.lambda, 2), tensor(ExactMatrix::identity(2), reference::lambda2()));
  EXPECT_EQ(matrix_power(pe.lambda, 3), phi_apply(outer, reference::lambda1().scaled(imag_unit())));
  EXPECT_EQ(phi_apply(pe, ExactMatrix{{omega8()}}), reference::concat_lambda());
}

TEST(Concat, CosineTowerGivesFifthRootLambda) {
  const PreEmbedding inner = towers::cos_inner();
  const PreEmbedding outer = towers::cos_outer();
  // derived conventions: x^2 - 2c x + 1 and x^2 + x/2 - 1/4
  const CycElement c = cos_2pi_5();
  EXPECT_EQ(inner.tower.min_poly(), Polynomial({1, c.scaled(-2), 1}));
  EXPECT_EQ(outer.tower.min_poly(), Polynomial({CycElement(Rational(-1, 4)), CycElement(Rational(1, 2)), 1}));
  const PreEmbedding pe = concat(outer, inner);
  EXPECT_EQ(pe.lambda, reference::zeta5_lambda());
  EXPECT_EQ(char_poly(pe.lambda), Polynomial({1, 1, 1, 1, 1}));
  std::mt19937 rng(22);
  const GateSet ct = clifford_t();
  for (int t = 0; t < 5; ++t) {
    const ExactMatrix u = evaluate(random_word(rng, {"H", "T", "S"}, 2, 4), ct) * ExactMatrix::diagonal({1, CycElement::zeta(5, 1)});
    const ExactMatrix phi = phi_apply(pe, u);
    EXPECT_TRUE(catalytic_law(phi, u, pe.projector));
    EXPECT_TRUE(left_catalytic_law(phi, u, pe.projector));
    EXPECT_EQ(phi, phi_apply(outer, phi_apply(inner, u)));
  }
}

TEST(Concat, ChainMismatchAndTrivialFactor) {
  EXPECT_EQ(kind_of([] { concat(towers::sqrt5(), towers::omega8_over_di()); }), ErrorKind::RingChainMismatch);
  const PreEmbedding trivial =
      preembed_make(RingTower(towers::d_i(), imag_unit()), ExactMatrix{{imag_unit()}});
  const PreEmbedding pe = concat(trivial, towers::omega8_over_di());
  EXPECT_EQ(pe.lambda, reference::lambda1());
  EXPECT_EQ(pe.projector, reference::projector1());
}

TEST(Catalytic, RandomCliffordTWordsThroughConcatenation) {
  const PreEmbedding pe = concat(towers::i_over_d(), towers::omega8_over_di());
  const GateSet ct = clifford_t();
  std::mt19937 rng(23);
  for (int t = 0; t < 20; ++t) {
    const ExactMatrix u = evaluate(random_word(rng, {"H", "T", "S", "X"}, 2, 6), ct);
    const ExactMatrix phi = phi_apply(pe, u);
    EXPECT_TRUE(catalytic_check(pe, u));
    EXPECT_TRUE(is_unitary(phi));
    // brute force: both sides column by column against the projector's range
    for (std::size_t j = 0; j < 2; ++j) {
      const ExactMatrix psi = tensor(ExactMatrix::unit(2, 1, j, 0), pe.catalyst.basis[0]);
      EXPECT_EQ(phi * psi, tensor(u * ExactMatrix::unit(2, 1, j, 0), pe.catalyst.basis[0]));
    }
  }
}

TEST(ProjectorFamily, SqrtFive) {
  const PreEmbedding pe = towers::sqrt5();
  const auto fam = projector_family(pe);
  ASSERT_EQ(fam.size(), 2u);
  EXPECT_EQ(fam[0].projector, reference::sqrt5_projector());
  EXPECT_EQ(fam[1].projector, reference::sqrt5_projector_twisted());
  const ExactMatrix m{{sqrt5()}};
  EXPECT_TRUE(twisted_check(pe, fam[1], m));
  // Phi(M)(I (x) tau(P)) = -sqrt5 tau(P)
  EXPECT_EQ(phi_apply(pe, m) * fam[1].projector, fam[1].projector.scaled(-sqrt5()));
  EXPECT_EQ(trace_reconstruction(fam, m), phi_apply(pe, m));
}

TEST(ProjectorFamily, ConcatenatedOmegaHasFourMembers) {
  const PreEmbedding pe = concat(towers::i_over_d(), towers::omega8_over_di());
  const auto fam = projector_family(pe);
  ASSERT_EQ(fam.size(), 4u);
  std::set<Conductor> exps;
  for (const auto& t : fam) exps.insert(t.tau.exponent());
  EXPECT_EQ(exps, (std::set<Conductor>{1, 3, 5, 7}));
  const ExactMatrix u = evaluate(circuit_parse("(seq H T S T H)", clifford_t()), clifford_t());
  for (const auto& t : fam) EXPECT_TRUE(twisted_check(pe, t, u));
  EXPECT_EQ(trace_reconstruction(fam, u), phi_apply(pe, u));
}

namespace {

GateSet e_target(const PreEmbedding& pe) {
  GateSet gs = clifford_t();
  gs.add("PhiE", phi_apply(pe, clifford_t_e().get("E").evaluation));
  return gs;
}

}  // namespace

TEST(LiftGateset, DefaultsAndMismatch) {
  const PreEmbedding pe = towers::omega3();
  const GateSet target = e_target(pe);
  const CatalyticEmbedding emb =
      lift_gateset(pe, clifford_t_e(), target, {{"E", Circuit::gate("PhiE", 4)}});
  EXPECT_EQ(emb.gates.size(), clifford_t_e().gates().size());
  EXPECT_EQ(emb.gates.at("H").circuit, Circuit::par(Circuit::gate("H", 2), Circuit::identity(2)));
  EXPECT_EQ(kind_of([&] { lift_gateset(pe, clifford_t_e(), target, {{"E", Circuit::gate("CX", 4)}}); }),
            ErrorKind::TemplateMismatch);
  EXPECT_EQ(kind_of([&] { lift_gateset(pe, clifford_t_e(), clifford_t(), {}); }), ErrorKind::TemplateMismatch);
  // Swapping two templates is caught.
  EXPECT_EQ(kind_of([&] {
              lift_gateset(pe, clifford_t_e(), target,
                           {{"E", Circuit::gate("PhiE", 4)},
                            {"S", Circuit::par(Circuit::gate("T", 2), Circuit::identity(2))},
                            {"T", Circuit::par(Circuit::gate("S", 2), Circuit::identity(2))}});
            }),
            ErrorKind::TemplateMismatch);
  GateSet id_source("id");
  id_source.add("I", ExactMatrix::identity(2));
  const CatalyticEmbedding id_emb = lift_gateset(pe, id_source, target, {{"I", Circuit::identity(4)}});
  EXPECT_EQ(evaluate(id_emb.gates.at("I").circuit, target), ExactMatrix::identity(4));
}

TEST(LiftCircuit, CatalyticLawAndStructure) {
  const PreEmbedding pe = towers::omega3();
  const GateSet target = e_target(pe);
  const GateSet source = clifford_t_e();
  const CatalyticEmbedding emb = lift_gateset(pe, source, target, {{"E", Circuit::gate("PhiE", 4)}});

  EXPECT_EQ(evaluate(lift_circuit(emb, Circuit::identity(4)), target), ExactMatrix::identity(8));
  const Circuit c = circuit_parse("(seq (par E I2) CX)", source);
  const ExactMatrix lifted = evaluate(lift_circuit(emb, c), target);
  EXPECT_TRUE(catalytic_law(lifted, evaluate(c, source), pe.projector));
  // block form (I (x) P) e(lift) (I (x) P) = e(C) (x) P
  const ExactMatrix ip = tensor(ExactMatrix::identity(4), pe.projector);
  EXPECT_EQ(ip * lifted * ip, tensor(evaluate(c, source), pe.projector));

  // Par(E, E) against the swap formula for mu(V (x) U).
  const ExactMatrix mu_e = evaluate(emb.gates.at("E").circuit, target);
  const ExactMatrix i2 = ExactMatrix::identity(2);
  const ExactMatrix formula = tensor(swap_matrix(2, 2), i2) * tensor(i2, mu_e) * tensor(swap_matrix(2, 2), i2) *
                              tensor(i2, mu_e);
  EXPECT_EQ(evaluate(lift_circuit(emb, circuit_parse("(par E E)", source)), target), formula);
}

TEST(LiftCircuit, RandomCircuitsSatisfyCatalyticLaw) {
  const PreEmbedding pe = towers::omega3();
  const GateSet target = e_target(pe);
  const GateSet source = clifford_t_e();
  const CatalyticEmbedding emb = lift_gateset(pe, source, target, {{"E", Circuit::gate("PhiE", 4)}});
  std::mt19937 rng(24);
  const std::vector<std::string> one{"E", "H", "T", "S"};
  for (int t = 0; t < 10; ++t) {
    const Circuit a = random_word(rng, one, 2, 3);
    const Circuit b = random_word(rng, one, 2, 3);
    const Circuit c = Circuit::seq(Circuit::par(a, b), Circuit::seq(Circuit::gate("CX", 4), Circuit::swap(2, 2)));
    const ExactMatrix ec = evaluate(c, source);
    const ExactMatrix lifted = evaluate(lift_circuit(emb, c), target);
    EXPECT_TRUE(catalytic_law(lifted, ec, pe.projector));
    EXPECT_TRUE(left_catalytic_law(lifted, ec, pe.projector));
  }
}

namespace {

std::map<std::string, ExactMatrix> order3_images(const ExactMatrix& lambda) {
  const std::size_t k = lambda.rows();
  return {{"R", direct_sum(ExactMatrix::identity(k), lambda)},
          {"X", tensor(reference::pauli_x(), ExactMatrix::identity(k))}};
}

}  // namespace

TEST(Classify, OrderThreeEmbeddingOneIsNotStrong) {
  const auto r = classify(order3_gates(), order3_images(reference::order3_lambda_1()), reference::order3_projector(), 5);
  EXPECT_EQ(r.verdict, Verdict::NotStrong);
  EXPECT_EQ(word_string(r.first), "R.R.R");
  EXPECT_EQ(word_string(r.second), "X.X");
}

TEST(Classify, OrderThreeEmbeddingTwoIsStrongNotLinear) {
  const auto images = order3_images(reference::order3_lambda_2());
  const auto r = classify(order3_gates(), images, reference::order3_projector(), 5);
  EXPECT_EQ(r.verdict, Verdict::StrongNotLinear);
  ASSERT_FALSE(r.relation.empty());
  // the reported relation holds at the source and fails for the images
  std::map<std::string, ExactMatrix> src{{"R", order3_gates().get("R").evaluation}, {"X", reference::pauli_x()}};
  ExactMatrix s(2, 2);
  ExactMatrix t(6, 6);
  for (const auto& [c, w] : r.relation) {
    s = s + word_evaluation(w, src).scaled(CycElement(c));
    t = t + word_evaluation(w, images).scaled(CycElement(c));
  }
  EXPECT_TRUE(s.is_zero());
  EXPECT_FALSE(t.is_zero());
  // the relation e(RXR) + e(RRXRR) + e(X) = 0 and its failure downstairs
  const Word rxr{"R", "X", "R"}, rrxrr{"R", "R", "X", "R", "R"}, x{"X"};
  EXPECT_TRUE((word_evaluation(rxr, src) + word_evaluation(rrxrr, src) + word_evaluation(x, src)).is_zero());
  EXPECT_FALSE((word_evaluation(rxr, images) + word_evaluation(rrxrr, images) + word_evaluation(x, images)).is_zero());
}

TEST(Classify, OrderThreeEmbeddingThreeIsLinear) {
  const auto r =
      classify(order3_gates(), order3_images(reference::order3_lambda_3()), reference::order3_projector_3(), 5);
  EXPECT_EQ(r.verdict, Verdict::LinearConsistent) << r.detail;
  EXPECT_EQ(r.words_checked, 62u);
}

TEST(Classify, RejectsNonCatalyticCandidate) {
  auto images = order3_images(reference::order3_lambda_2());
  images["R"] = ExactMatrix::identity(6);
  EXPECT_THROW(classify(order3_gates(), images, reference::order3_projector(), 3), Error);
}

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "catembed/companion.hpp"
#include "catembed/compilers.hpp"
#include "catembed/constants.hpp"
#include "catembed/error.hpp"
#include "catembed/gatesets.hpp"
#include "catembed/sim.hpp"
#include "reference.hpp"
#include "towers.hpp"

using namespace catembed;

namespace {

// Column j of the DFT from the product form
//   F|j> = (x)_{l=1..n} (|0> + e^{2 pi i j / 2^l} |1>) / sqrt2
// with the l = 1 factor on the top wire.
ExactMatrix dft_column_oracle(std::size_t n, std::size_t j) {
  ExactMatrix out = ExactMatrix::column({1});
  for (std::size_t l = 1; l <= n; ++l) {
    const std::size_t m = std::size_t{1} << l;
    const CycElement phase = CycElement::zeta(m, static_cast<std::int64_t>(j % m));
    out = tensor(out, ExactMatrix::column({sqrt2().inv(), phase * sqrt2().inv()}));
  }
  return out;
}

ExactMatrix column_of(const ExactMatrix& m, std::size_t j) {
  std::vector<CycElement> c;
  for (std::size_t i = 0; i < m.rows(); ++i) c.push_back(m(i, j));
  return ExactMatrix::column(std::move(c));
}

// Basis-state action of a Circuit over {X, CX, CCX, ...} read off its evaluation.
std::size_t image_of(const ExactMatrix& perm, std::size_t col) {
  for (std::size_t i = 0; i < perm.rows(); ++i) {
    if (!perm(i, col).is_zero()) return i;
  }
  return perm.rows();
}

bool bit(std::size_t index, std::size_t wire, std::size_t wires) { return (index >> (wires - 1 - wire)) & 1; }

}  // namespace

TEST(CompileE, EvaluatesToControlledLambda) {
  const CompiledProgram p = compile_E();
  const ExactMatrix lambda = reference::hadamard() * reference::phase_s();
  const ExactMatrix want = direct_sum(ExactMatrix::identity(2), lambda.scaled(reference::w(5)));
  EXPECT_EQ(evaluate(p.circuit, p.gates), want);
  EXPECT_EQ(p.tcount, 6);
  EXPECT_EQ(egate_template_tcount(), 6);
  EXPECT_EQ(compile_E(true).tcount, 4);
  EXPECT_EQ(evaluate(compile_E(true).circuit, p.gates), want);
}

TEST(CompileE, CatalystIsLambdaEigenvector) {
  const CompiledProgram p = compile_E();
  ASSERT_EQ(p.catalysts.size(), 1u);
  const ExactMatrix lambda = (reference::hadamard() * reference::phase_s()).scaled(reference::w(5));
  EXPECT_EQ(lambda * p.catalysts[0].vector, p.catalysts[0].vector.scaled(omega3()));
  EXPECT_EQ(p.catalysts[0].vector, reference::omega3_catalyst());
}

TEST(BuildQFT, SmallCases) {
  const GateSet gs1 = qft_source(1);
  EXPECT_EQ(evaluate(build_QFT(1), gs1), reference::hadamard());
  const CycElement h = CycElement(Rational(1, 2));
  const CycElement i = imag_unit();
  const ExactMatrix want2 = {{h, h, h, h}, {h, h * i, -h, -h * i}, {h, -h, h, -h}, {h, -h * i, -h, h * i}};
  EXPECT_EQ(evaluate(build_QFT(2), qft_source(2)), want2);
  EXPECT_EQ(dft_matrix(2), want2);
}

TEST(BuildQFT, MatchesProductFormulaOracle) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const ExactMatrix u = evaluate(build_QFT(n), qft_source(n));
    EXPECT_EQ(u * u.dagger(), ExactMatrix::identity(u.rows())) << n;
    EXPECT_EQ(u, dft_matrix(n)) << n;
    for (std::size_t j = 0; j < u.cols(); ++j) EXPECT_EQ(column_of(u, j), dft_column_oracle(n, j)) << n << " " << j;
  }
}

TEST(BuildQFT, LargerSizesColumnwiseUpToEight) {
  // Each column must match the oracle and keep norm 1; together with the
  // oracle's orthonormal product form this fixes a unitary.
  for (std::size_t n = 5; n <= 8; ++n) {
    const Circuit c = build_QFT(n);
    const GateSet gs = qft_source(n);
    for (std::size_t j : {std::size_t{0}, std::size_t{1}, std::size_t{3}, pow2(n) - 1}) {
      const ExactState out = apply(c, gs, basis_state(pow2(n), j));
      EXPECT_EQ(out.amplitudes(), dft_column_oracle(n, j)) << n << " " << j;
      EXPECT_EQ(out.norm_sq(), CycElement(1));
    }
  }
}

TEST(OneLevelTemplate, PrintedBlock) {
  for (std::size_t k = 2; k <= 6; ++k) {
    const CompiledProgram p = rk_one_level_template(k);
    const CycElement s = CycElement::zeta(pow2(k - 1), 1);
    const ExactMatrix printed = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, s, 0}};
    EXPECT_EQ(evaluate(p.circuit, p.gates), printed) << k;
    // The same block as the pre-embedding of the tower.
    const PreEmbedding pe = two_power_tower(k).embedding;
    EXPECT_EQ(phi_apply(pe, *p.source_evaluation), printed) << k;
    EXPECT_TRUE(check_catalytic_action(p, *p.source_evaluation, computational_basis(2)).all_pass());
  }
}

TEST(CompileQFT, LayoutAndCatalysts) {
  const CompiledProgram p1 = compile_QFT(1);
  EXPECT_TRUE(p1.catalysts.empty());
  EXPECT_EQ(p1.circuit, place_on_wires(Circuit::gate("H", 2), 1, {0}));
  const CompiledProgram p3 = compile_QFT(3);
  ASSERT_EQ(p3.catalysts.size(), 3u);
  EXPECT_EQ(p3.catalysts[0].label, "psi3");
  EXPECT_EQ(p3.catalysts[0].wires, std::vector<std::size_t>{3});
  EXPECT_EQ(p3.catalysts[2].label, "psi1");
  EXPECT_EQ(p3.catalysts[2].vector, ExactMatrix::column({1, -1}));
  EXPECT_EQ(total_wires(p3), 6u);
  const auto hist = gate_histogram(p3.circuit);
  EXPECT_EQ(hist.at("H"), 3);
  EXPECT_EQ(hist.at("CCDEC2"), 2);
  EXPECT_EQ(hist.at("CCDEC3"), 1);
  EXPECT_EQ(total_wires(compile_QFT(2, true)), 5u);
  EXPECT_EQ(total_wires(compile_QFT(3, true)), 6u);
}

TEST(CompileQFT, TwoQubitProjectorLaw) {
  const CompiledProgram p = compile_QFT(2);
  const ExactMatrix pi = rank_one_projector(catalyst_state(p));
  const ExactMatrix u = evaluate(p.circuit, p.gates);
  ASSERT_EQ(u.rows(), 16u);
  EXPECT_EQ(u * tensor(ExactMatrix::identity(4), pi), tensor(dft_matrix(2), pi));
  // Without the catalyst the circuit is a permutation, not the DFT.
  EXPECT_NE(u, tensor(dft_matrix(2), ExactMatrix::identity(4)));
}

TEST(CompileQFT, CatalyticActionOnAllBasisProbes) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (bool expand : {false, true}) {
      const CompiledProgram p = compile_QFT(n, expand);
      const ActionReport r = check_catalytic_action(p, dft_matrix(n), computational_basis(pow2(n)));
      EXPECT_TRUE(r.all_pass()) << n << " " << expand << " " << report_to_json(r).dump();
    }
  }
}

TEST(CompileQFT, ConjugatedCatalystsGiveInverse) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const CompiledProgram p = compile_inverse_QFT(n);
    EXPECT_EQ(p.circuit, compile_QFT(n).circuit);
    const ActionReport r = check_catalytic_action(p, dft_matrix(n).dagger(), computational_basis(pow2(n)));
    EXPECT_TRUE(r.all_pass()) << n;
    // And not the forward transform, once there is a phase to conjugate.
    if (n >= 2) EXPECT_FALSE(check_catalytic_action(p, dft_matrix(n), computational_basis(pow2(n))).all_pass());
  }
}

TEST(CompileQFT, ConjugatedCatalystsAreOrthogonal) {
  const ExactMatrix x = reference::pauli_x();
  for (std::size_t k = 1; k <= 8; ++k) {
    const CycElement z = CycElement::zeta(pow2(k), 1);
    const ExactMatrix psi = ExactMatrix::column({1, z});
    const CycElement overlap = inner(psi, x * psi);
    // <psi_k|X|psi_k> = z + conj(z) = 2 cos(2 pi / 2^k): zero only at k = 2.
    EXPECT_EQ(overlap, z + z.conj()) << k;
    EXPECT_EQ(overlap.is_zero(), k == 2) << k;
    // X psi_k ~ conj(psi_k) up to the global phase zeta_{2^k}.
    const ExactMatrix conj = ExactMatrix::column({1, CycElement::zeta(pow2(k), -1)});
    EXPECT_EQ(x * psi, conj.scaled(z));
  }
  // The full catalysts are orthogonal for n >= 2 through the psi_2 factor.
  for (std::size_t n = 1; n <= 4; ++n) {
    const CycElement overlap = inner(catalyst_state(compile_QFT(n)), catalyst_state(compile_inverse_QFT(n)));
    EXPECT_EQ(overlap.is_zero(), n >= 2) << n;
  }
}

TEST(CompileQFT, LargeSizesBuildWithoutEvaluation) {
  const CompiledProgram p = compile_QFT(12);
  EXPECT_EQ(total_wires(p), 24u);
  EXPECT_FALSE(p.source_evaluation.has_value());
  EXPECT_EQ(gate_histogram(p.circuit).at("CCDEC12"), 1);
  EXPECT_THROW(compile_QFT(0), Error);
  EXPECT_THROW(compile_QFT(21), Error);
}

TEST(Decrement, ExpansionMatchesPrimitiveExhaustively) {
  for (std::size_t controls : {1u, 2u}) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const std::size_t wires = controls + k + 1;
      std::vector<std::size_t> cs(controls);
      std::iota(cs.begin(), cs.end(), 0);
      std::vector<std::size_t> ts(k);
      std::iota(ts.begin(), ts.end(), controls);
      const Circuit expanded = expanded_decrement(wires, cs, ts);
      std::vector<std::size_t> all = cs;
      all.insert(all.end(), ts.begin(), ts.end());
      const Circuit primitive = place_on_wires(Circuit::gate(cdec_name(k, controls), pow2(controls + k)), wires, all);
      const GateSet gs = qft_target(3);
      EXPECT_EQ(evaluate(expanded, gs), evaluate(primitive, gs)) << controls << " " << k;
      const auto hist = gate_histogram(expanded);
      for (const auto& [name, count] : hist) EXPECT_TRUE(name == "X" || name == "CX" || name == "CCX") << name;
    }
  }
}

TEST(Decrement, MultiControlledXAgainstBitOracle) {
  const std::size_t wires = 6;
  const GateSet gs = toffoli_gates();
  const std::vector<std::vector<std::size_t>> cases = {{0}, {4, 1}, {0, 2, 3}, {5, 0, 3, 1}};
  for (const auto& controls : cases) {
    const std::size_t target = 4 == controls.front() ? 2 : 4;
    const ExactMatrix m = evaluate(multi_controlled_x(wires, controls, target), gs);
    for (std::size_t in = 0; in < pow2(wires); ++in) {
      bool fire = true;
      for (auto c : controls) fire = fire && bit(in, c, wires);
      const std::size_t want = fire ? in ^ (std::size_t{1} << (wires - 1 - target)) : in;
      EXPECT_EQ(image_of(m, in), want);
    }
  }
  EXPECT_THROW(multi_controlled_x(4, {0, 1, 2}, 3), Error);
}

TEST(CostModel, EgateAtMillionRotations) {
  const CostReport r = cost_model("egate", 1u << 20, "1e-15");
  const double m = std::ldexp(1.0, 20);
  const double approx = m * 3 * std::log2(m / 1e-15);
  const double cat = 6 * std::log2(1e15) + 4 * m;
  EXPECT_NEAR(r.approx / approx, 1.0, 1e-10);
  EXPECT_NEAR(r.catalytic / cat, 1.0, 1e-10);
  const double reduction = std::stod(r.reduction);
  EXPECT_GE(reduction, 0.97);
  EXPECT_LE(reduction, 0.99);
  EXPECT_NEAR(r.catalytic - 4 * m, 300, 2);
  ASSERT_TRUE(r.asymptotic_ratio.has_value());
  EXPECT_NEAR(std::stod(*r.asymptotic_ratio), 4.0 / (3 * 70), 1e-12);
  // 30 significant digits, cross-checked with an independent 40-digit evaluation
  EXPECT_EQ(r.approx_tcount, "219662793.331107488757621062974");
  EXPECT_EQ(r.catalytic_tcount, "4194602.97352853986261130832875");
}

TEST(CostModel, DegenerateAndMonotone) {
  EXPECT_EQ(cost_model("egate", 1, "1").catalytic, 4.0);
  // m = 2 is the one exception: 6 log2(2e15) < 6 log2(1e15) + 8.
  EXPECT_GT(cost_model("egate", 2, "1e-15").catalytic, cost_model("egate", 2, "1e-15").approx);
  for (std::size_t m = 3; m <= (1u << 20); m = m * 3 - 1) {
    const CostReport r = cost_model("egate", m, "1e-15");
    EXPECT_LT(r.catalytic, r.approx) << m;
  }
  EXPECT_FALSE(cost_model("egate", 1 << 10, "0.001").asymptotic_ratio.has_value());
}

TEST(CostModel, Qft) {
  const CostReport r = cost_model("qft", 3, "1e-10");
  // r = 3 rotations; decrements (n-k+1) 4 (k-1): 2*4*1 + 1*4*2 = 16
  EXPECT_NEAR(r.approx, 3 * 3 * std::log2(3 / 1e-10), 1e-6);
  EXPECT_NEAR(r.catalytic, 16 + 3 * 3 * std::log2(3 / 1e-10), 1e-6);
  EXPECT_THROW(cost_model("qft", 1, "1e-10"), Error);
}

TEST(CostModel, EpsilonParsing) {
  EXPECT_EQ(parse_epsilon("1e-15"), Rational(1, 1000000000000000L));
  EXPECT_EQ(parse_epsilon("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_epsilon("2.5E-1"), Rational(1, 4));
  EXPECT_EQ(parse_epsilon("3/4"), Rational(3, 4));
  for (const char* bad : {"", "e5", "1e", "abc", "1..2", "1e-15x"}) EXPECT_THROW(parse_epsilon(bad), Error) << bad;
  EXPECT_THROW(cost_model("egate", 4, "0"), Error);
  EXPECT_THROW(cost_model("egate", 4, "1.5"), Error);
  EXPECT_THROW(cost_model("egate", 0, "0.1"), Error);
  EXPECT_THROW(cost_model("toffoli", 4, "0.1"), Error);
}

TEST(Export, FlattenTracksSwaps) {
  const Circuit c = place_on_wires(Circuit::gate("CX", 4), 3, {2, 0});
  const auto ops = flatten(c);
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_EQ(ops[0].name, "CX");
  EXPECT_EQ(ops[0].wires, (std::vector<std::size_t>{2, 0}));
  const auto swapped = flatten(Circuit::swap(2, 4));
  ASSERT_EQ(swapped.size(), 2u);
}

TEST(Export, QasmAndJson) {
  const CompiledProgram p = compile_QFT(2);
  const std::string q = export_qasm(p);
  EXPECT_NE(q.find("qreg q[4];"), std::string::npos);
  EXPECT_NE(q.find("ccdec2 q[0],q[1],q[2],q[3];  // macro: controlled decrement"), std::string::npos);
  EXPECT_NE(q.find("h q[1];"), std::string::npos);
  EXPECT_NE(q.find("swap q[0],q[1];"), std::string::npos);
  const json j = program_to_json(p);
  EXPECT_EQ(circuit_from_json(j["circuit"], p.gates), p.circuit);
  EXPECT_EQ(j["catalysts"][0]["vector"][1], "z4");
  EXPECT_EQ(j["layout"]["psi2"], json::array({2}));
  const std::string e = export_qasm(compile_E());
  EXPECT_NE(e.find("tdg q[1];"), std::string::npos);
}

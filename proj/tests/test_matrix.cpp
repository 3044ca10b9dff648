#include <gtest/gtest.h>

#include <random>

#include "catembed/constants.hpp"
#include "catembed/error.hpp"
#include "catembed/matrix.hpp"
#include "oracles.hpp"
#include "reference.hpp"

using namespace catembed;

namespace {

ExactMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, Conductor n) {
  std::vector<CycElement> e;
  for (std::size_t i = 0; i < r * c; ++i) e.push_back(oracle::random_element(rng, n, 3, 2));
  return ExactMatrix(r, c, std::move(e));
}

}  // namespace

TEST(MatArith, DaggerIsInvolution) {
  std::mt19937 rng(1);
  const ExactMatrix a = random_matrix(rng, 3, 3, 8);
  EXPECT_EQ(a.dagger().dagger(), a);
}

TEST(MatArith, HadamardSquaresToIdentity) {
  const ExactMatrix h = reference::hadamard();
  EXPECT_EQ(h * h, ExactMatrix::identity(2));
}

TEST(MatArith, ControlledXBlockForm) {
  const ExactMatrix x = reference::pauli_x();
  const ExactMatrix cx = direct_sum(ExactMatrix::identity(2), x);
  const ExactMatrix via_tensor =
      tensor(ExactMatrix::unit(2, 2, 0, 0), ExactMatrix::identity(2)) + tensor(ExactMatrix::unit(2, 2, 1, 1), x);
  EXPECT_EQ(cx, via_tensor);
  EXPECT_EQ(cx(2, 3), CycElement(1));
  EXPECT_EQ(cx(3, 2), CycElement(1));
}

TEST(MatArith, ShapeErrors) {
  EXPECT_THROW(ExactMatrix(2, 3) * ExactMatrix(2, 3), Error);
  EXPECT_THROW(ExactMatrix(2, 2) + ExactMatrix(3, 3), Error);
  EXPECT_THROW(char_poly(ExactMatrix(2, 3)), Error);
}

TEST(SwapMatrix, Examples) {
  EXPECT_EQ(swap_matrix(1, 5), ExactMatrix::identity(5));
  const ExactMatrix s22{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  EXPECT_EQ(swap_matrix(2, 2), s22);
  // |a>|b> with a in C^2, b in C^3 maps to |b>|a>: index a*3+b -> b*2+a.
  const ExactMatrix s = swap_matrix(2, 3);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      const ExactMatrix in = tensor(ExactMatrix::unit(2, 1, a, 0), ExactMatrix::unit(3, 1, b, 0));
      const ExactMatrix out = tensor(ExactMatrix::unit(3, 1, b, 0), ExactMatrix::unit(2, 1, a, 0));
      EXPECT_EQ(s * in, out);
    }
  }
  EXPECT_EQ(s * ExactMatrix::unit(6, 1, 5, 0), ExactMatrix::unit(6, 1, 5, 0));
  EXPECT_EQ(swap_matrix(2, 3) * swap_matrix(3, 2), ExactMatrix::identity(6));
}

TEST(SwapMatrix, ConjugatesTensorFactors) {
  std::mt19937 rng(2);
  const ExactMatrix a = random_matrix(rng, 2, 2, 4);
  const ExactMatrix b = random_matrix(rng, 3, 3, 4);
  EXPECT_EQ(swap_matrix(2, 3) * tensor(a, b) * swap_matrix(3, 2), tensor(b, a));
}

TEST(Predicates, Examples) {
  const auto p5 = predicates(reference::sqrt5_lambda());
  EXPECT_TRUE(p5.is_normal);
  EXPECT_TRUE(p5.is_hermitian);
  EXPECT_FALSE(p5.is_unitary);
  EXPECT_TRUE(is_orthogonal_projector(reference::projector1()));
  EXPECT_FALSE(is_normal(ExactMatrix{{0, 1}, {0, 0}}));
  EXPECT_TRUE(is_unitary(reference::hadamard()));
  EXPECT_THROW(is_normal(ExactMatrix(2, 3)), Error);
}

TEST(CharPoly, Examples) {
  EXPECT_EQ(char_poly(reference::lambda2()), Polynomial({1, 0, 1}));
  EXPECT_EQ(char_poly(reference::concat_lambda()), Polynomial({1, 0, 0, 0, 1}));
  EXPECT_EQ(char_poly(ExactMatrix::identity(3)), Polynomial({-1, 1}).pow(3));
  EXPECT_EQ(char_poly(reference::zeta5_lambda()), Polynomial({1, 1, 1, 1, 1}));
}

TEST(CharPoly, CayleyHamiltonOnRandomMatrices) {
  std::mt19937 rng(3);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (Conductor cond : {1u, 8u, 12u}) {
      const ExactMatrix a = random_matrix(rng, n, n, cond);
      EXPECT_TRUE(evaluate_polynomial(char_poly(a), a).is_zero()) << "n=" << n;
    }
  }
}

TEST(Eigenspace, Examples) {
  const Eigenspace e5 = eigenspace_for(reference::sqrt5_lambda(), sqrt5());
  EXPECT_EQ(e5.projector, reference::sqrt5_projector());
  EXPECT_EQ(e5.multiplicity, 1u);
  const Eigenspace e1 = eigenspace_for(reference::lambda1(), omega8());
  EXPECT_EQ(e1.projector, reference::projector1());
  const Eigenspace eid = eigenspace_for(ExactMatrix::identity(2), 1);
  EXPECT_EQ(eid.projector, ExactMatrix::identity(2));
  EXPECT_EQ(eid.multiplicity, 2u);
  EXPECT_THROW(eigenspace_for(reference::sqrt5_lambda(), 1), Error);
}

TEST(Eigenspace, ProjectorLawsAndSpectralDecomposition) {
  const ExactMatrix lam = reference::concat_lambda();
  ExactMatrix sum(4, 4);
  ExactMatrix recon(4, 4);
  std::vector<ExactMatrix> projs;
  for (std::int64_t k : {1, 3, 5, 7}) {
    const CycElement l = CycElement::zeta(8, k);
    const Eigenspace es = eigenspace_for(lam, l);
    EXPECT_TRUE(is_orthogonal_projector(es.projector));
    EXPECT_EQ(lam * es.projector, es.projector.scaled(l));
    EXPECT_EQ(rank(es.projector), es.multiplicity);
    for (std::size_t i = 0; i < es.basis.size(); ++i) {
      EXPECT_EQ(es.projector * es.basis[i], es.basis[i]);
      EXPECT_EQ(inner(es.basis[i], es.basis[i]), es.norms_sq[i]);
    }
    sum = sum + es.projector;
    recon = recon + es.projector.scaled(l);
    projs.push_back(es.projector);
  }
  EXPECT_EQ(sum, ExactMatrix::identity(4));
  EXPECT_EQ(recon, lam);
  for (std::size_t i = 0; i < projs.size(); ++i) {
    for (std::size_t j = 0; j < projs.size(); ++j) {
      if (i != j) EXPECT_TRUE((projs[i] * projs[j]).is_zero());
    }
  }
  EXPECT_EQ(eigenspace_for(lam, omega8()).projector, reference::concat_projector());
}

TEST(Eigenspace, RepeatedEigenvalueIsOrthogonalised) {
  // X (x) I2 has a two-dimensional +1 eigenspace.
  const ExactMatrix a = tensor(reference::pauli_x(), ExactMatrix::identity(2));
  const Eigenspace es = eigenspace_for(a, 1);
  ASSERT_EQ(es.multiplicity, 2u);
  EXPECT_TRUE(inner(es.basis[0], es.basis[1]).is_zero());
  EXPECT_TRUE(is_orthogonal_projector(es.projector));
  EXPECT_EQ(a * es.projector, es.projector);
}

TEST(MatGalois, Examples) {
  const GaloisAutomorphism tau(5, 2);
  EXPECT_EQ(mat_galois(tau, reference::sqrt5_projector()), reference::sqrt5_projector_twisted());
  EXPECT_EQ(reference::sqrt5_projector() + reference::sqrt5_projector_twisted(), ExactMatrix::identity(2));
  EXPECT_EQ(mat_galois(GaloisAutomorphism::conjugation(8), reference::lambda2()), reference::lambda2());
  const ExactMatrix p = reference::concat_projector();
  const ExactMatrix q = mat_galois(GaloisAutomorphism(8, 3), p);
  EXPECT_TRUE(is_orthogonal_projector(q));
  EXPECT_TRUE((p * q).is_zero());
}

TEST(MatProperties, RandomConformableIdentities) {
  std::mt19937 rng(4);
  for (int t = 0; t < 10; ++t) {
    const ExactMatrix a = random_matrix(rng, 2, 3, 8);
    const ExactMatrix b = random_matrix(rng, 3, 2, 8);
    const ExactMatrix c = random_matrix(rng, 2, 2, 8);
    const ExactMatrix d = random_matrix(rng, 2, 3, 8);
    EXPECT_EQ((a * b).dagger(), b.dagger() * a.dagger());
    EXPECT_EQ(tensor(a, c) * tensor(b, d), tensor(a * b, c * d));
    const GaloisAutomorphism g(8, 5);
    EXPECT_EQ(mat_galois(g, a * b), mat_galois(g, a) * mat_galois(g, b));
    EXPECT_EQ(mat_galois(g, tensor(a, c)), tensor(mat_galois(g, a), mat_galois(g, c)));
    EXPECT_EQ(mat_galois(g, a.dagger()), mat_galois(g, a).dagger());
    EXPECT_EQ(mat_galois(g, a + d), mat_galois(g, a) + mat_galois(g, d));
  }
}

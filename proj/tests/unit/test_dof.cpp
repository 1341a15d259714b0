#include <cmath>

#include <gtest/gtest.h>

#include <asyncnoma/csv.hpp>
#include <asyncnoma/dof.hpp>
#include <asyncnoma/errors.hpp>

using namespace anoma;

TEST(TruncatedBasis, DefaultsAndValidation) {
  const TruncatedBasisSet b;
  EXPECT_DOUBLE_EQ(b.symbol_interval(), 1.0);
  EXPECT_DOUBLE_EQ(b.resolved_window(), 5.0);
  EXPECT_EQ(b.resolved_centers(), (std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0}));
  TruncatedBasisSet bad;
  bad.bandwidth = 0.0;
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = {};
  bad.step = 0.0;
  EXPECT_THROW(bad.validate(), ParameterError);
}

TEST(GramMatrix, ReproducesTheTruncatedSincExample) {
  const Eigen::MatrixXd G = gram_matrix(TruncatedBasisSet{});
  ASSERT_EQ(G.rows(), 5);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(G(i, i), 0.959, 0.001);
  EXPECT_NEAR(G(0, 1), 0.052, 0.001);
  EXPECT_NEAR(G(0, 2), -0.084, 0.001);
  EXPECT_EQ((G - G.transpose()).cwiseAbs().maxCoeff(), 0.0);
  // Shift invariance: every function sees the same window geometry.
  EXPECT_NEAR(G(1, 2), G(0, 1), 1e-12);
  EXPECT_NEAR(G(2, 4), G(0, 2), 1e-12);
}

TEST(GramMatrix, WideWindowsApproachTheIdentity) {
  TruncatedBasisSet b;
  b.window_length = 100.0;
  const Eigen::MatrixXd G = gram_matrix(b);
  const Eigen::MatrixXd off = G - Eigen::MatrixXd(G.diagonal().asDiagonal());
  EXPECT_LT(off.cwiseAbs().maxCoeff(), 0.01);
  EXPECT_NEAR(G(0, 0), 1.0, 0.01);
}

TEST(GramMatrix, SimpsonRuleStaysClose) {
  TruncatedBasisSet b;
  b.rule = InnerProductRule::Simpson;
  b.step = 1e-3;
  const Eigen::MatrixXd s = gram_matrix(b);
  const Eigen::MatrixXd d = gram_matrix(TruncatedBasisSet{});
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(s(i, i), 0.959, 0.001);
  EXPECT_LT((s - d).cwiseAbs().maxCoeff(), 2e-3);
  b.step = 5e-4;
  EXPECT_LT((gram_matrix(b) - s).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(ExtendBasis, HalfSymbolShiftCoefficients) {
  const BasisExtension e = extend_basis(TruncatedBasisSet{}, 0.5);
  ASSERT_EQ(e.centers.size(), 6u);
  EXPECT_NEAR(e.orthonormal.coefficients(5, 0), -0.647, 0.002);
  EXPECT_NEAR(e.orthonormal.coefficients(5, 1), -0.612, 0.002);
  EXPECT_LT((e.output_gram - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(e.reconstruction_error.maxCoeff(), 1e-8);
}

TEST(ExtendBasis, QuarterSymbolShiftIsOrthonormal) {
  const BasisExtension e = extend_basis(TruncatedBasisSet{}, 0.25);
  EXPECT_EQ(e.orthonormal.basis.size(), 6u);
  EXPECT_LT((e.output_gram - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(e.reconstruction_error.maxCoeff(), 1e-8);
}

TEST(ExtendBasis, DuplicateFunctionIsDependent) {
  EXPECT_THROW(extend_basis(TruncatedBasisSet{}, 0.0), DependenceError);
  EXPECT_THROW(extend_basis(TruncatedBasisSet{}, 3.0), DependenceError);
}

TEST(ExtendBasis, GramOfInputsExtendsTheBaseMatrix) {
  const BasisExtension e = extend_basis(TruncatedBasisSet{}, 0.5);
  const Eigen::MatrixXd G = gram_matrix(TruncatedBasisSet{});
  EXPECT_LT((e.gram.topLeftCorner(5, 5) - G).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(e.gram(5, 5), G(0, 0), 1e-12);
}

TEST(DofCsv, GramThenCoefficientRows) {
  const BasisExtension e = extend_basis(TruncatedBasisSet{}, 0.5);
  const CsvTable t = read_csv(to_csv(e));
  EXPECT_EQ(t.header, (std::vector<std::string>{"kind", "row", "c1", "c2", "c3", "c4", "c5", "c6", "norm"}));
  ASSERT_EQ(t.rows.size(), 12u);
  EXPECT_EQ(t.rows[0][0], "gram");
  EXPECT_EQ(t.rows[6][0], "coefficient");
  EXPECT_NEAR(std::stod(t.rows[11][2]), -0.647, 0.002);
  EXPECT_NEAR(std::stod(t.rows[0][2]), 0.959, 0.001);
}

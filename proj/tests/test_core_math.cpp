#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "seqcast/core_math.hpp"

namespace seqcast {
namespace {

TEST(Sigmoid, SymmetryPointAndReferenceValue) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  // 1 / (1 + e^-1), 40-digit reference.
  EXPECT_NEAR(sigmoid(1.0), 0.7310585786300048792511592418218362743651, 1e-16);
}

TEST(Sigmoid, SaturatesInsideOpenInterval) {
  const double s = sigmoid(50.0);
  EXPECT_GT(s, 1.0 - 1e-15);
  EXPECT_LT(s, 1.0);
  for (double x : {1e6, -1e6, 800.0, -800.0, 37.0, -37.0, 745.0, -745.0}) {
    const double v = sigmoid(x);
    EXPECT_TRUE(std::isfinite(v)) << x;
    EXPECT_GT(v, 0.0) << x;
    EXPECT_LT(v, 1.0) << x;
  }
}

TEST(Sigmoid, ComplementIdentity) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(-20.0, 20.0);
  for (int k = 0; k < 1000; ++k) {
    const double x = dist(gen);
    EXPECT_NEAR(sigmoid(x) + sigmoid(-x), 1.0, 1e-15) << x;
  }
}

TEST(TanhAct, ReferenceValuesAndOddSymmetry) {
  EXPECT_EQ(tanh_act(0.0), 0.0);
  EXPECT_NEAR(tanh_act(1.0), 0.7615941559557648881194582826047935904128, 1e-16);
  EXPECT_EQ(tanh_act(-2.0), -tanh_act(2.0));
}

TEST(TanhAct, StaysInsideOpenInterval) {
  for (double x : {1e6, -1e6, 20.0, -20.0, 400.0}) {
    const double v = tanh_act(x);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, -1.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Activations, VectorFormsMatchScalarForms) {
  const VectorXd x = make_vector({-3.0, -0.5, 0.0, 0.25, 4.0});
  const VectorXd s = sigmoid(x);
  const VectorXd t = tanh_act(x);
  for (Index k = 0; k < x.size(); ++k) {
    EXPECT_EQ(s(k), sigmoid(x(k)));
    EXPECT_EQ(t(k), tanh_act(x(k)));
  }
}

// Points are kept where the derivative is O(0.1): central differences at
// step 1e-6 carry ~1e-10 absolute rounding error, so a 1e-8 relative bound
// is only meaningful away from saturation.
TEST(Activations, AnalyticDerivativesMatchFiniteDifferences) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const double h = 1e-6;
  for (int k = 0; k < 100; ++k) {
    const double x = dist(gen);
    const double fd_sig = (sigmoid(x + h) - sigmoid(x - h)) / (2 * h);
    const double fd_tanh = (tanh_act(x + h) - tanh_act(x - h)) / (2 * h);
    const double an_sig = sigmoid_grad_from_output(sigmoid(x));
    const double an_tanh = tanh_grad_from_output(tanh_act(x));
    EXPECT_LT(std::abs(an_sig - fd_sig) / std::abs(an_sig), 1e-8) << x;
    EXPECT_LT(std::abs(an_tanh - fd_tanh) / std::abs(an_tanh), 1e-8) << x;
  }
}

TEST(Matvec, IdentityZeroAndHandComputed) {
  const VectorXd v = make_vector({1.0, 2.0, 3.0});
  EXPECT_TRUE(matvec(MatrixXd(MatrixXd::Identity(3, 3)), v).isApprox(v));
  EXPECT_EQ(matvec(MatrixXd(MatrixXd::Zero(2, 3)), v), VectorXd::Zero(2));
  const MatrixXd m = make_matrix({{1.0, 2.0}, {3.0, 4.0}});
  EXPECT_EQ(matvec(m, make_vector({1.0, 1.0})), make_vector({3.0, 7.0}));
}

TEST(Matvec, DimensionMismatchNamesBothShapes) {
  const MatrixXd m = MatrixXd::Zero(2, 3);
  try {
    matvec(m, make_vector({1.0, 2.0}));
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("2x3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("length 2"), std::string::npos) << msg;
  }
}

TEST(Matvec, DistributesOverAddition) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto fill = [&](auto& x) {
    for (Index k = 0; k < x.size(); ++k) x.data()[k] = dist(gen);
  };
  for (int trial = 0; trial < 50; ++trial) {
    MatrixXd m(10, 10);
    VectorXd u(10), v(10);
    fill(m);
    fill(u);
    fill(v);
    const VectorXd lhs = matvec(m, VectorXd(u + v));
    const VectorXd rhs = matvec(m, u) + matvec(m, v);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST(Concat, OrderAndLength) {
  EXPECT_EQ(concat(make_vector({1.0}), make_vector({2.0, 3.0})), make_vector({1.0, 2.0, 3.0}));
  EXPECT_EQ(concat(make_vector({0.5, 0.6}), make_vector({9.0})).size(), 3);
  EXPECT_THROW(concat(VectorXd(), make_vector({1.0})), PreconditionError);
  EXPECT_THROW(make_vector<double>({}), PreconditionError);
}

TEST(Hadamard, Examples) {
  const VectorXd xyz = make_vector({0.3, -2.0, 5.5});
  EXPECT_EQ(hadamard(VectorXd(VectorXd::Ones(3)), xyz), xyz);
  EXPECT_EQ(hadamard(VectorXd(VectorXd::Zero(3)), xyz), VectorXd::Zero(3));
  EXPECT_EQ(hadamard(make_vector({2.0, 3.0}), make_vector({4.0, 5.0})), make_vector({8.0, 15.0}));
  EXPECT_THROW(hadamard(make_vector({1.0}), xyz), DimensionError);
}

TEST(Construction, RejectsNonFinite) {
  EXPECT_THROW(make_vector({1.0, std::nan("")}), DimensionError);
  EXPECT_THROW(make_matrix<double>({{1.0, INFINITY}}), DimensionError);
  EXPECT_THROW(make_matrix<double>({{1.0, 2.0}, {3.0}}), DimensionError);
}

TEST(Kernels, TemplatedOnScalar) {
  // The same kernels compile and behave for float.
  EXPECT_EQ(sigmoid(0.0f), 0.5f);
  const Vector<float> v = make_vector<float>({1.0f, 2.0f});
  EXPECT_EQ(hadamard(v, v), make_vector<float>({1.0f, 4.0f}));
}

}  // namespace
}  // namespace seqcast

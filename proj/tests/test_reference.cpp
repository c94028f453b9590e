#include <gtest/gtest.h>

#include "support.hpp"

using namespace sfista;

TEST(Reference, MatchesNormalEquations) {
  Xoshiro256 r(12);
  const int m = 12, n = 5;
  Matrix A(m, n);
  Vector b(m);
  for (int i = 0; i < m; ++i) {
    b[i] = r.normal();
    for (int j = 0; j < n; ++j) A(i, j) = r.normal();
  }
  const Matrix AtA = A.transpose() * A;
  const Vector x_ls = AtA.ldlt().solve(A.transpose() * b);
  const double top = Eigen::SelfAdjointEigenSolver<Matrix>(AtA).eigenvalues().maxCoeff();

  CompositeProblem p;
  p.dimension = n;
  p.f = make_smooth_oracle([A, b](const Vector& x) { return 0.5 * (A * x - b).squaredNorm(); },
                           [A, b](const Vector& x) -> Vector { return A.transpose() * (A * x - b); },
                           0.0, top * (1 + 1e-9));
  p.h = prox::zero();
  const ReferenceSolution ref = reference_solve(p, Vector::Zero(n));
  EXPECT_LE((ref.x_star - x_ls).norm(), 1e-10);
  EXPECT_NEAR(ref.phi_star, 0.5 * (A * x_ls - b).squaredNorm(), 1e-10);
}

TEST(Reference, UniqueUnderStrongConvexity) {
  const Instance inst = make_instance(InstanceKind::elastic_net, 17, 40, 60, {0.1, 0.5}, false);
  Xoshiro256 r(1);
  Vector start(60);
  for (int j = 0; j < 60; ++j) start[j] = 10 * r.normal();
  const ReferenceSolution a = reference_solve(inst.problem, Vector::Zero(60));
  const ReferenceSolution b = reference_solve(inst.problem, start);
  EXPECT_LE((a.x_star - b.x_star).norm(), 1e-10);
}

TEST(Reference, DistanceFromOptimumIsZero) {
  const Instance inst = make_instance(InstanceKind::lasso, 3, 20, 30, {0.1, 0.0});
  const auto& x = inst.problem.reference_optimum->x_star;
  const ReferenceSolution ref = reference_solve(inst.problem, x);
  EXPECT_EQ(ref.d0_from(ref.x_star), 0.0);
  EXPECT_LE(ref.residual, 1e-14 * std::max(1.0, x.norm()));
}

TEST(Reference, NonConvergenceIsReported) {
  const Instance inst = make_instance(InstanceKind::lasso, 42, 100, 200, {0.1, 0.0}, false);
  ReferenceOptions opt;
  opt.max_iterations = 3;
  try {
    reference_solve(inst.problem, Vector::Zero(200), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::numeric_failure);
  }
}

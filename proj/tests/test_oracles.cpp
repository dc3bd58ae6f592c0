// SPDX-License-Identifier: Apache-2.0

// Cross-checks against independent references: closed-form eigenvalues and a dense
// generalized eigensolver.

#include <doctest.h>
#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include "anisopt/dense.hpp"
#include "anisopt/eigen.hpp"

using namespace anisopt;

namespace
{

const double pi = std::numbers::pi;

EigenOptions relaxed()
{
  EigenOptions o;
  o.enforce_class_m = false;
  return o;
}

Weight random_weight(const Mesh1D &mesh, std::uint64_t seed)
{
  const WeightClassParams params{1.0, 0.2};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> cells(mesh.n());
  for (double &c : cells)
  {
    c = U(rng);
  }
  double mass = 0.0;
  for (double c : cells)
  {
    mass += c * mesh.h();
  }
  if (mass > -params.m0)
  {
    for (double &c : cells)
    {
      c = std::max(-1.0, c - (mass + params.m0) - 0.05);
    }
  }
  Weight m(mesh, cells, params);
  REQUIRE(validate(m).empty());
  return m;
}

struct Pencil
{
  Eigen::MatrixXd K, M;
};

// Stiffness and midpoint-rule weighted mass on the interior nodes, for H(s) = a|s|, p = 2.
Pencil assemble(const Weight &m, double a)
{
  const Mesh1D &mesh = m.mesh();
  const int N = mesh.n() - 1;
  Pencil P{Eigen::MatrixXd::Zero(N, N), Eigen::MatrixXd::Zero(N, N)};
  for (int c = 0; c < mesh.n(); c++)
  {
    const int nodes[2] = {c - 1, c};
    for (int i : nodes)
    {
      for (int j : nodes)
      {
        if (i < 0 || j < 0 || i >= N || j >= N)
        {
          continue;
        }
        P.K(i, j) += a * a * (i == j ? 1.0 : -1.0) / mesh.h();
        P.M(i, j) += 0.25 * mesh.h() * m.cells()[c];
      }
    }
  }
  return P;
}

// Smallest positive eigenvalue of K v = lambda M v, via M v = nu K v with K definite.
std::pair<double, Eigen::VectorXd> pencil_oracle(const Pencil &P)
{
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(P.M, P.K);
  REQUIRE(es.info() == Eigen::Success);
  const int last = static_cast<int>(es.eigenvalues().size()) - 1;
  const double nu = es.eigenvalues()(last);
  REQUIRE(nu > 0.0);
  return {1.0 / nu, es.eigenvectors().col(last)};
}

}  // namespace

TEST_CASE("dense pencil oracle, even anisotropy")
{
  for (int n : {16, 32, 64})
  {
    for (double a : {1.0, 1.7})
    {
      for (std::uint64_t seed : {1u, 2u, 3u})
      {
        CAPTURE(n);
        CAPTURE(a);
        CAPTURE(seed);
        const Weight m = random_weight(Mesh1D(n), seed);
        const auto [lambda, vec] = pencil_oracle(assemble(m, a));
        const double scale = vec.cwiseAbs().maxCoeff();
        CHECK(std::min(vec.maxCoeff(), -vec.minCoeff()) <= 1e-10 * scale);
        const auto r = solve_lambda_plus(m, BoundaryCondition::dirichlet(), AnisotropyH(a, a, 2));
        CHECK(std::abs(r.lambda - lambda) <= 1e-8 * lambda);
        // Same eigenvector after normalization.
        double sign = vec.sum() > 0 ? 1.0 : -1.0;
        double ratio = r.phi[n / 2] / (sign * vec(n / 2 - 1));
        for (int i = 1; i < n; i++)
        {
          CHECK(r.phi[i] == doctest::Approx(ratio * sign * vec(i - 1)).epsilon(1e-6).scale(r.phi.sup_norm()));
        }
      }
    }
  }
}

TEST_CASE("internal Jacobi pencil solver agrees with the reference")
{
  const Weight m = random_weight(Mesh1D(32), 9);
  const Pencil P = assemble(m, 1.0);
  const int N = static_cast<int>(P.K.rows());
  dense::Matrix K(N), M(N);
  for (int i = 0; i < N; i++)
  {
    for (int j = 0; j < N; j++)
    {
      K(i, j) = P.K(i, j);
      M(i, j) = P.M(i, j);
    }
  }
  const auto mode = dense::smallest_positive_pencil_mode(K, M);
  CHECK(mode.lambda == doctest::Approx(pencil_oracle(P).first).epsilon(1e-12));
}

TEST_CASE("analytic anisotropic eigenvalues")
{
  struct Case
  {
    double a, b, p;
  };
  for (const Case c : {Case{1, 1, 2}, Case{2, 1, 2}, Case{1, 3, 2}, Case{2, 1, 1.5}, Case{2, 1, 3},
                       Case{0.5, 1.5, 4}, Case{1.5, 1, 3}})
  {
    CAPTURE(c.a);
    CAPTURE(c.b);
    CAPTURE(c.p);
    const double exact = (c.p - 1) * std::pow((c.a + c.b) * pi / (c.p * std::sin(pi / c.p)), c.p);
    const auto r = solve_lambda_plus(Weight::constant(Mesh1D(1024), 1.0),
                                     BoundaryCondition::dirichlet(), AnisotropyH(c.a, c.b, c.p),
                                     relaxed());
    CHECK(std::abs(r.lambda - exact) / exact < 2e-3);
  }
}

TEST_CASE("Laplacian eigenvalue converges at second order")
{
  const double pi2 = pi * pi;
  double previous = 0.0;
  for (int n : {128, 256, 512})
  {
    const auto r = solve_lambda_plus(Weight::constant(Mesh1D(n), 1.0),
                                     BoundaryCondition::dirichlet(), AnisotropyH(1, 1, 2), relaxed());
    const double err = std::abs(r.lambda - pi2);
    if (previous > 0.0)
    {
      CHECK(previous / err == doctest::Approx(4.0).epsilon(0.05));
    }
    previous = err;
  }
}

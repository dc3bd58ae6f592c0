// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
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

// Closed form of the first Dirichlet eigenvalue of the anisotropic p-Laplacian with m = 1.
double anisotropic_oracle(double a, double b, double p)
{
  return (p - 1.0) * std::pow((a + b) * pi / (p * std::sin(pi / p)), p);
}

double sup_distance(const GridFunction &u, const GridFunction &v)
{
  double d = 0.0;
  for (int i = 0; i < u.size(); i++)
  {
    d = std::max(d, std::abs(u[i] - v[i]));
  }
  return d;
}

}  // namespace

TEST_CASE("rayleigh quotient")
{
  const Mesh1D mesh(512);
  GridFunction u(mesh);
  for (int i = 0; i <= mesh.n(); i++)
  {
    u[i] = std::sin(pi * mesh.node(i));
  }
  u.values.back() = 0.0;
  const Weight one = Weight::constant(mesh, 1.0);
  const AnisotropyH h(1, 1, 2);
  const double r = rayleigh_quotient(u, one, BoundaryCondition::dirichlet(), h);
  CHECK(std::abs(r - pi * pi) / (pi * pi) < 1e-2);
  GridFunction scaled = u;
  for (double &v : scaled.values)
  {
    v *= 3.7;
  }
  CHECK(rayleigh_quotient(scaled, one, BoundaryCondition::dirichlet(), h) ==
        doctest::Approx(r).epsilon(1e-12));

  const Weight negative = Weight::constant(mesh, -0.2);
  CHECK_THROWS_AS(rayleigh_quotient(u, negative, BoundaryCondition::dirichlet(), h),
                  std::invalid_argument);
}

TEST_CASE("laplacian eigenvalue on the unit interval")
{
  const auto r = solve_lambda_plus(Weight::constant(Mesh1D(1024), 1.0),
                                   BoundaryCondition::dirichlet(), AnisotropyH(1, 1, 2), relaxed());
  CHECK(r.converged);
  CHECK(std::abs(r.lambda - pi * pi) / (pi * pi) < 1e-3);
  CHECK(r.residual_norm <= 1e-6 * r.lambda);
}

TEST_CASE("anisotropic Dirichlet eigenvalue closed form")
{
  for (double p : {1.5, 2.0, 3.0})
  {
    CAPTURE(p);
    const auto r = solve_lambda_plus(Weight::constant(Mesh1D(1024), 1.0),
                                     BoundaryCondition::dirichlet(), AnisotropyH(2, 1, p),
                                     relaxed());
    const double exact = anisotropic_oracle(2, 1, p);
    CHECK(std::abs(r.lambda - exact) / exact < 2e-3);
    // The peak sits at a / (a + b).
    int argmax = 0;
    for (int i = 0; i < r.phi.size(); i++)
    {
      if (r.phi[i] > r.phi[argmax])
      {
        argmax = i;
      }
    }
    CHECK(std::abs(r.phi.mesh.node(argmax) - 2.0 / 3.0) < 5e-3);
  }
}

TEST_CASE("eigenfunctions stay in their cones")
{
  const Mesh1D mesh(128);
  const auto m = bang_bang_from_interval(0.2, 0.4, {1.0, 0.2}, mesh);
  const AnisotropyH h(2, 1, 2.5);
  for (auto bc : {BoundaryCondition::dirichlet(), BoundaryCondition::neumann(),
                  BoundaryCondition::robin(1.0)})
  {
    const auto plus = solve_lambda_plus(m, bc, h);
    const auto minus = solve_lambda_minus(m, bc, h);
    CHECK(plus.lambda > 0.0);
    for (int i = 0; i < plus.phi.size(); i++)
    {
      CHECK(plus.phi[i] >= 0.0);
      CHECK(minus.phi[i] <= 0.0);
    }
  }
}

TEST_CASE("Neumann eigenfunction of a flush interval is monotone")
{
  const Mesh1D mesh(256);
  const auto m = bang_bang_from_interval(0.0, 0.4, {1.0, 0.2}, mesh);
  const auto r = solve_lambda_plus(m, BoundaryCondition::neumann(), AnisotropyH(2, 1, 2));
  CHECK(r.lambda > 0.0);
  for (int i = 0; i < mesh.n(); i++)
  {
    CHECK(r.phi[i + 1] <= r.phi[i] + 1e-12);
  }
}

TEST_CASE("even anisotropy gives equal principal eigenvalues")
{
  const Mesh1D mesh(128);
  const auto m = bang_bang_from_interval(0.1, 0.4, {1.0, 0.2}, mesh);
  const AnisotropyH h(1.5, 1.5, 2);
  const auto plus = solve_lambda_plus(m, BoundaryCondition::dirichlet(), h);
  const auto minus = solve_lambda_minus(m, BoundaryCondition::dirichlet(), h);
  CHECK(minus.lambda == doctest::Approx(plus.lambda).epsilon(1e-8));
  GridFunction neg = minus.phi;
  for (double &v : neg.values)
  {
    v = -v;
  }
  CHECK(sup_distance(neg, plus.phi) < 1e-6);
}

TEST_CASE("symmetric weight gives equal principal eigenvalues")
{
  const Mesh1D mesh(130);
  const auto m = bang_bang_from_interval(0.3, 0.4, {1.0, 0.2}, mesh);
  REQUIRE(reflect_weight(m) == m);
  const AnisotropyH h(2, 1, 2);
  const auto plus = solve_lambda_plus(m, BoundaryCondition::dirichlet(), h);
  const auto minus = solve_lambda_minus(m, BoundaryCondition::dirichlet(), h);
  CHECK(std::abs(plus.lambda - minus.lambda) <= 2e-8 * plus.lambda);
}

TEST_CASE("lambda minus is lambda plus of the reflected anisotropy")
{
  const Mesh1D mesh(64);
  const auto m = bang_bang_from_interval(0.1, 0.4, {1.0, 0.2}, mesh);
  const AnisotropyH h(2, 1, 3);
  const auto minus = solve_lambda_minus(m, BoundaryCondition::robin(2.0), h);
  const auto plus = solve_lambda_plus(m, BoundaryCondition::robin(2.0), reflect(h));
  CHECK(minus.lambda == plus.lambda);
}

TEST_CASE("random restarts find the same eigenpair")
{
  const Mesh1D mesh(128);
  const auto m = bang_bang_from_interval(0.25, 0.4, {1.0, 0.2}, mesh);
  const AnisotropyH h(2, 1, 1.5);
  EigenOptions base;
  const auto ref = solve_lambda_plus(m, BoundaryCondition::dirichlet(), h, base);
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u})
  {
    EigenOptions o;
    o.restarts = 3;
    o.seed = seed;
    const auto r = solve_lambda_plus(m, BoundaryCondition::dirichlet(), h, o);
    CHECK(std::abs(r.lambda - ref.lambda) <= 2e-8 * ref.lambda);
    CHECK(sup_distance(r.phi, ref.phi) < 1e-4);
  }
}

TEST_CASE("weights without a favourable cell are rejected")
{
  const Mesh1D mesh(32);
  CHECK_THROWS(solve_lambda_plus(Weight::constant(mesh, -1.0, {1.0, 0.2}),
                                 BoundaryCondition::dirichlet(), AnisotropyH(1, 1, 2)));
}

TEST_CASE("mu plus")
{
  const Mesh1D mesh(128);
  const auto m = bang_bang_from_interval(0.3, 0.4, {1.0, 0.2}, mesh);
  const AnisotropyH h(2, 1, 2);
  CHECK(std::abs(mu_plus(0.0, m, BoundaryCondition::neumann(), h).mu) < 1e-10);
  const double lp = solve_lambda_plus(m, BoundaryCondition::dirichlet(), h).lambda;
  CHECK(mu_plus(1.5 * lp, m, BoundaryCondition::dirichlet(), h).mu < 0.0);
  CHECK(mu_plus(0.5 * lp, m, BoundaryCondition::dirichlet(), h).mu >= 0.0);
  CHECK(std::abs(mu_plus(lp, m, BoundaryCondition::dirichlet(), h).mu) < 1e-6 * lp);
}

TEST_CASE("weak-form residual")
{
  const Mesh1D mesh(128);
  const auto m = bang_bang_from_interval(0.3, 0.4, {1.0, 0.2}, mesh);
  const AnisotropyH h(2, 1, 2);
  const auto bc = BoundaryCondition::dirichlet();
  const auto r = solve_lambda_plus(m, bc, h);
  const double converged = residual_weak_form(r.phi, r.lambda, m, bc, h);
  CHECK(converged <= 1e-6 * r.lambda);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-0.01, 0.01);
  GridFunction noisy = r.phi;
  for (int i = 1; i < mesh.n(); i++)
  {
    noisy[i] *= 1.0 + U(rng);
  }
  CHECK(residual_weak_form(noisy, r.lambda, m, bc, h) >= 10.0 * converged);
  CHECK(residual_weak_form(GridFunction(mesh), r.lambda, m, bc, h) == 0.0);
}

TEST_CASE("bathtub step does not increase the Rayleigh value")
{
  const Mesh1D mesh(128);
  const WeightClassParams params{1.0, 0.2};
  const AnisotropyH h(2, 1, 2);
  const auto bc = BoundaryCondition::dirichlet();
  const auto m = bang_bang_from_interval(0.1, 0.4, params, mesh);
  const auto r = solve_lambda_plus(m, bc, h);
  const auto improved = bathtub_step(r.phi, params, optimal_measure(params));
  CHECK(rayleigh_quotient(r.phi, improved, bc, h) <= r.lambda * (1.0 + 1e-12));
}

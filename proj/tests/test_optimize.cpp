// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <cmath>
#include <stdexcept>
#include "anisopt/optimize.hpp"

using namespace anisopt;

namespace
{

const WeightClassParams params{1.0, 0.2};

std::vector<double> reflected(const GridFunction &u)
{
  return {u.values.rbegin(), u.values.rend()};
}

}  // namespace

TEST_CASE("predicted optimal intervals")
{
  auto d = predicted_optimal_interval(AnisotropyH(2, 1, 2), 0.4, BoundaryCondition::dirichlet());
  CHECK(d.left == doctest::Approx(0.4));
  CHECK(d.right == doctest::Approx(0.8));
  d = predicted_optimal_interval(AnisotropyH(1, 1, 2), 0.4, BoundaryCondition::dirichlet());
  CHECK(d.left == doctest::Approx(0.3));
  CHECK(d.right == doctest::Approx(0.7));
  d = predicted_optimal_interval(AnisotropyH(3, 1, 2), 0.25, BoundaryCondition::neumann());
  CHECK(d.left == 0.0);
  CHECK(d.right == doctest::Approx(0.25));
  d = predicted_optimal_interval(AnisotropyH(1, 3, 2), 0.25, BoundaryCondition::neumann());
  CHECK(d.left == doctest::Approx(0.75));
  d = predicted_optimal_interval(AnisotropyH(1, 1, 2), 0.25, BoundaryCondition::neumann());
  REQUIRE(d.alternative.has_value());
  CHECK_THROWS_AS(predicted_optimal_interval(AnisotropyH(2, 1, 2), 0.4,
                                             BoundaryCondition::robin(1)),
                  std::invalid_argument);
}

TEST_CASE("alternating optimizer on the Dirichlet problem")
{
  const Mesh1D mesh(128);
  const AnisotropyH h(2, 1, 2);
  const auto bc = BoundaryCondition::dirichlet();
  const auto opt = optimize_weight_plus(params, bc, h, mesh);
  CHECK(opt.converged);
  CHECK_FALSE(opt.oscillation);
  CHECK(std::abs(opt.D_left - 0.4) <= 2 * mesh.h());
  CHECK(std::abs(opt.D_right - 0.8) <= 2 * mesh.h());
  for (std::size_t k = 1; k < opt.history.size(); k++)
  {
    CHECK(opt.history[k].second <= opt.history[k - 1].second + 1e-12);
  }
  for (double v : opt.m_opt.cells())
  {
    CHECK((v == 1.0 || v == -1.0));
  }
  CHECK(opt.m_opt.positive_cell_count() == bathtub_cell_count(mesh, 0.4));

  // One more alternation from the optimum changes nothing.
  const auto next = bathtub_step(opt.phi, params, 0.4);
  const double again = solve_lambda_plus(next, bc, h).lambda;
  CHECK(std::abs(again - opt.Lambda) <= 1e-10 * opt.Lambda + 1e-8);

  const auto mono = check_monotone_structure(opt.phi, bc);
  CHECK(mono.sign_changes == 1);
  CHECK(mono.ok);
  CHECK(check_derivative_structure(opt.phi, opt.m_opt).ok);
}

TEST_CASE("minus optimizer mirrors the plus optimizer")
{
  const Mesh1D mesh(128);
  const AnisotropyH h(2, 1, 2);
  const auto bc = BoundaryCondition::dirichlet();
  const auto minus = optimize_weight_minus(params, bc, h, mesh);
  CHECK(std::abs(minus.D_left - 0.2) <= 2 * mesh.h());
  CHECK(std::abs(minus.D_right - 0.6) <= 2 * mesh.h());
  const auto plus = optimize_weight_plus(params, bc, reflect(h), mesh);
  CHECK(minus.Lambda == doctest::Approx(plus.Lambda).epsilon(1e-10));
  CHECK(minus.m_opt == plus.m_opt);
  const auto sym = check_lambda_symmetry(params, bc, h, mesh);
  CHECK(sym.relative_gap <= 1e-3);
  CHECK(sym.weight_shift_cells <= 1);
}

TEST_CASE("Neumann optimizer is flush with the heavier side")
{
  const Mesh1D mesh(128);
  const auto bc = BoundaryCondition::neumann();
  const auto left = optimize_weight_plus(params, bc, AnisotropyH(2, 1, 2), mesh);
  CHECK(left.D_left <= 2 * mesh.h());
  const auto mono = check_monotone_structure(left.phi, bc);
  CHECK(mono.sign_changes == 0);
  CHECK(mono.decreasing);
  const auto right = optimize_weight_plus(params, bc, AnisotropyH(1, 2, 2), mesh);
  CHECK(right.D_right >= 1.0 - 2 * mesh.h());
}

TEST_CASE("interval scan")
{
  const Mesh1D mesh(128);
  const auto bc = BoundaryCondition::dirichlet();
  const auto even = interval_scan(params, bc, AnisotropyH(1, 1, 2), mesh, 0.4);
  CHECK(std::abs(even.argmin.c_left - 0.3) <= 2 * mesh.h());

  const AnisotropyH h(2, 1, 2);
  const auto scan = interval_scan(params, bc, h, mesh, 0.4, 0, {}, 2);
  const auto opt = optimize_weight_plus(params, bc, h, mesh);
  CHECK(std::abs(scan.argmin.c_left - opt.D_left) <= 2 * mesh.h());
  CHECK(scan.argmin.lambda >= opt.Lambda - 2e-10);

  const auto single = interval_scan(params, bc, h, mesh, 0.4, 0, {}, 1);
  REQUIRE(single.curve.size() == scan.curve.size());
  for (std::size_t i = 0; i < scan.curve.size(); i++)
  {
    CHECK(single.curve[i].lambda == scan.curve[i].lambda);
  }

  const auto neumann = interval_scan(params, BoundaryCondition::neumann(), AnisotropyH(1, 2, 2),
                                     mesh, 0.4);
  CHECK(std::abs(neumann.argmin.c_left - 0.6) <= 2 * mesh.h());
}

TEST_CASE("Neumann ratio ordering")
{
  const Mesh1D mesh(128);
  const auto bc = BoundaryCondition::neumann();
  const AnisotropyH h(2, 1, 2);
  const double flush_left = solve_lambda_plus(bang_bang_from_interval(0.0, 0.4, params, mesh), bc, h).lambda;
  const double flush_right = solve_lambda_plus(bang_bang_from_interval(0.6, 0.4, params, mesh), bc, h).lambda;
  CHECK(flush_left <= std::pow(0.5, 2.0) * flush_right + 1e-8);
}

TEST_CASE("reflection identity of the numerator")
{
  const Mesh1D mesh(50);
  GridFunction u(mesh);
  for (int i = 0; i <= mesh.n(); i++)
  {
    u[i] = std::sin(7.0 * mesh.node(i)) + 2.0;
  }
  const GridFunction v(mesh, reflected(u));
  const AnisotropyH h(2.5, 0.7, 2.3);
  const auto m = Weight::constant(mesh, 1.0);
  const auto bc = BoundaryCondition::robin(1.5);
  CHECK(rayleigh_quotient(v, m, bc, h) ==
        doctest::Approx(rayleigh_quotient(u, m, bc, reflect(h))).epsilon(1e-13));
}

TEST_CASE("structure checks on synthetic functions")
{
  const Mesh1D mesh(10);
  GridFunction tent(mesh);
  for (int i = 0; i <= 10; i++)
  {
    tent[i] = std::min(mesh.node(i), 1.0 - mesh.node(i));
  }
  CHECK(check_monotone_structure(tent, BoundaryCondition::dirichlet()).sign_changes == 1);
  CHECK_FALSE(check_monotone_structure(tent, BoundaryCondition::neumann()).ok);
  GridFunction two(mesh, {0, 1, 2, 1, 0, 1, 2, 1, 0, 0, 0});
  CHECK_FALSE(check_monotone_structure(two, BoundaryCondition::dirichlet()).ok);
}

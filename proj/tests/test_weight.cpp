// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <stdexcept>
#include "anisopt/weight.hpp"

using namespace anisopt;

namespace
{

bool has(const std::vector<Violation> &v, const std::string &name)
{
  for (const auto &x : v)
  {
    if (x.constraint == name)
    {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("class parameters")
{
  CHECK_NOTHROW(WeightClassParams{1.0, 0.2}.check(BoundaryCondition::neumann()));
  CHECK_THROWS(WeightClassParams{1.0, -0.2}.check(BoundaryCondition::neumann()));
  CHECK_NOTHROW(WeightClassParams{1.0, -0.2}.check(BoundaryCondition::dirichlet()));
  CHECK_THROWS(WeightClassParams{1.0, 1.0}.check(BoundaryCondition::dirichlet()));
  CHECK_THROWS(WeightClassParams{0.0, 0.0}.check(BoundaryCondition::robin(1)));
}

TEST_CASE("validate")
{
  const Mesh1D mesh(10);
  CHECK(validate(bang_bang_from_interval(0.0, 0.3, {1.0, 0.2}, mesh)).empty());
  CHECK(has(validate(Weight::constant(mesh, -1.0, {1.0, 0.2})), "|Omega+_m| > 0"));
  CHECK(has(validate(bang_bang_from_interval(0.0, 0.4, {1.0, 0.5}, mesh)), "int m <= -m0"));
  CHECK(has(validate(Weight::constant(mesh, 1.5, {1.0, 0.2})), "m <= 1"));
  CHECK(has(validate(Weight::constant(mesh, -2.0, {1.0, 0.2})), "-beta <= m"));
}

TEST_CASE("bang-bang weights from intervals")
{
  const auto m = bang_bang_from_interval(0.3, 0.4, {1.0, 0.2}, Mesh1D(10));
  for (int c = 0; c < 10; c++)
  {
    CHECK(m.cells()[c] == ((c >= 3 && c <= 6) ? 1.0 : -1.0));
  }
  CHECK_THROWS_AS(bang_bang_from_interval(0.3, 0.0, {1.0, 0.2}, Mesh1D(10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(bang_bang_from_interval(0.8, 0.4, {1.0, 0.2}, Mesh1D(10)),
                  std::invalid_argument);
  const auto half = bang_bang_from_interval(0.0, 0.4, {0.5, 0.2}, Mesh1D(5));
  CHECK(half.cells() == std::vector<double>{1, 1, -0.5, -0.5, -0.5});
}

TEST_CASE("optimal measure")
{
  CHECK(optimal_measure({1.0, 0.2}) == doctest::Approx(0.4));
  CHECK(optimal_measure({1.0, 0.0}) == doctest::Approx(0.5));
  CHECK(optimal_measure({3.0, 1.0}) == doctest::Approx(0.5));
}

TEST_CASE("bathtub selects the top cells")
{
  const Mesh1D mesh(5);
  // Cell midpoint values 0.1, 0.5, 0.9, 0.7, 0.2.
  const GridFunction phi(mesh, {0.0, 0.2, 0.8, 1.0, 0.4, 0.0});
  const auto m = bathtub_step(phi, {1.0, 0.2}, 0.4);
  CHECK(m.cells() == std::vector<double>{-1, -1, 1, 1, -1});

  const auto flat = bathtub_step(GridFunction(Mesh1D(10), 1.0), {1.0, 0.2}, 0.4);
  CHECK(flat.cells() == std::vector<double>{1, 1, 1, 1, -1, -1, -1, -1, -1, -1});

  GridFunction dec(Mesh1D(10));
  for (int i = 0; i <= 10; i++)
  {
    dec[i] = 10.0 - i;
  }
  const auto d = bathtub_step(dec, {1.0, 0.2}, 0.4);
  CHECK(d.positive_cell_count() == 4);
  for (int c = 0; c < 4; c++)
  {
    CHECK(d.cells()[c] == 1.0);
  }
}

TEST_CASE("bathtub rejects degenerate targets")
{
  const GridFunction phi(Mesh1D(10), 1.0);
  CHECK_THROWS(bathtub_step(phi, {1.0, 0.2}, 0.01));
  CHECK_THROWS(bathtub_step(phi, {1.0, 0.2}, 0.99));
  CHECK_THROWS(bathtub_step(GridFunction(Mesh1D(10), -1.0), {1.0, 0.2}, 0.4));
}

TEST_CASE("bathtub output mass")
{
  const WeightClassParams params{1.0, 0.2};
  for (int n : {7, 10, 33, 128})
  {
    const Mesh1D mesh(n);
    GridFunction phi(mesh);
    for (int i = 0; i <= n; i++)
    {
      phi[i] = mesh.node(i) * (1.0 - mesh.node(i));
    }
    const auto m = bathtub_step(phi, params, optimal_measure(params));
    CHECK(std::abs(m.mass() + params.m0) <= (1.0 + params.beta) * mesh.h());
  }
}

TEST_CASE("reflect weight")
{
  const Mesh1D mesh(4);
  const Weight m(mesh, {1, -1, -1, -1}, {});
  CHECK(reflect_weight(m).cells() == std::vector<double>{-1, -1, -1, 1});
  CHECK(reflect_weight(reflect_weight(m)) == m);
  const Weight sym(mesh, {-1, 1, 1, -1}, {});
  CHECK(reflect_weight(sym) == sym);
}

// SPDX-License-Identifier: Apache-2.0

#include "anisopt/weight.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace anisopt
{

namespace
{

std::vector<int> ranked_cells(const GridFunction &phi)
{
  const int n = phi.mesh.n();
  std::vector<double> mid(n);
  for (int c = 0; c < n; c++)
  {
    mid[c] = 0.5 * (phi.values[c] + phi.values[c + 1]);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return mid[i] > mid[j]; });
  return order;
}

}  // namespace

void WeightClassParams::check(const BoundaryCondition &bc) const
{
  if (!(beta > 0.0) || !std::isfinite(beta))
  {
    throw std::invalid_argument("class-M parameter beta must be positive");
  }
  const double lower = bc.kind == BoundaryKind::Neumann ? 0.0 : -1.0;
  if (!(m0 > lower && m0 < beta))
  {
    throw std::invalid_argument("class-M parameter m0 must lie in (" + std::to_string(lower) +
                                ", beta) for " + bc.to_string() + " conditions");
  }
}

Weight::Weight(const Mesh1D &mesh, std::vector<double> cells, WeightClassParams params)
  : mesh_(mesh), cells_(std::move(cells)), params_(params)
{
  if (static_cast<int>(cells_.size()) != mesh_.n())
  {
    throw std::invalid_argument("weight needs one value per cell");
  }
  for (double v : cells_)
  {
    if (!std::isfinite(v))
    {
      throw std::invalid_argument("weight values must be finite");
    }
  }
}

Weight Weight::constant(const Mesh1D &mesh, double value, WeightClassParams params)
{
  return Weight(mesh, std::vector<double>(mesh.n(), value), params);
}

double Weight::mass() const
{
  return integrate_cells(mesh_, cells_);
}

double Weight::max_positive() const
{
  double s = 0.0;
  for (double v : cells_)
  {
    s = std::max(s, v);
  }
  return s;
}

int Weight::positive_cell_count() const
{
  return static_cast<int>(std::count_if(cells_.begin(), cells_.end(),
                                        [](double v) { return v > 0.0; }));
}

std::vector<Violation> validate(const Weight &m)
{
  std::vector<Violation> out;
  const auto &p = m.params();
  double lo = 0.0, hi = 0.0;
  for (double v : m.cells())
  {
    lo = std::max(lo, -p.beta - v);
    hi = std::max(hi, v - 1.0);
  }
  if (lo > 0.0)
  {
    out.push_back({"-beta <= m", lo});
  }
  if (hi > 0.0)
  {
    out.push_back({"m <= 1", hi});
  }
  if (m.positive_cell_count() == 0)
  {
    out.push_back({"|Omega+_m| > 0", m.mesh().h()});
  }
  const double excess = m.mass() + p.m0;
  if (excess > 0.0)
  {
    out.push_back({"int m <= -m0", excess});
  }
  return out;
}

Weight bang_bang_from_interval(double c_left, double width, const WeightClassParams &params,
                               const Mesh1D &mesh)
{
  if (!(c_left >= 0.0) || !(width >= 0.0) || c_left + width > 1.0 + 1e-12)
  {
    throw std::invalid_argument("interval must lie inside [0, 1]");
  }
  const int n = mesh.n();
  const int first = static_cast<int>(std::lround(c_left * n));
  const int k = static_cast<int>(std::lround(width * n));
  if (k <= 0)
  {
    throw std::invalid_argument("interval rounds to zero cells, so |Omega+_m| = 0");
  }
  if (first + k > n)
  {
    throw std::invalid_argument("rounded interval leaves [0, 1]");
  }
  std::vector<double> cells(n, -params.beta);
  std::fill(cells.begin() + first, cells.begin() + first + k, 1.0);
  return Weight(mesh, std::move(cells), params);
}

double optimal_measure(const WeightClassParams &params)
{
  return (params.beta - params.m0) / (1.0 + params.beta);
}

int bathtub_cell_count(const Mesh1D &mesh, double target_measure)
{
  return static_cast<int>(std::lround(target_measure * mesh.n()));
}

Weight bathtub_step(const GridFunction &phi, const WeightClassParams &params,
                    double target_measure)
{
  if (!(target_measure > 0.0 && target_measure < 1.0))
  {
    throw std::invalid_argument("bathtub target measure must lie in (0, 1)");
  }
  const int n = phi.mesh.n();
  const int k = bathtub_cell_count(phi.mesh, target_measure);
  if (k <= 0 || k >= n)
  {
    throw std::invalid_argument("bathtub target rounds to a degenerate cell count");
  }
  for (double v : phi.values)
  {
    if (v < 0.0)
    {
      throw std::invalid_argument("bathtub step expects a nonnegative function");
    }
  }
  const auto order = ranked_cells(phi);
  std::vector<double> cells(n, -params.beta);
  for (int r = 0; r < k; r++)
  {
    cells[order[r]] = 1.0;
  }
  return Weight(phi.mesh, std::move(cells), params);
}

double bathtub_level(const GridFunction &phi, double target_measure)
{
  const int k = bathtub_cell_count(phi.mesh, target_measure);
  if (k <= 0 || k >= phi.mesh.n())
  {
    throw std::invalid_argument("bathtub target rounds to a degenerate cell count");
  }
  const int c = ranked_cells(phi)[k - 1];
  return 0.5 * (phi.values[c] + phi.values[c + 1]);
}

Weight reflect_weight(const Weight &m)
{
  std::vector<double> cells(m.cells().rbegin(), m.cells().rend());
  return Weight(m.mesh(), std::move(cells), m.params());
}

}  // namespace anisopt

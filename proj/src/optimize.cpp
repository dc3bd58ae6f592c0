// SPDX-License-Identifier: Apache-2.0

#include "anisopt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include "anisopt/parallel.hpp"

namespace anisopt
{

namespace
{

enum class Branch
{
  Plus,
  Minus
};

EigenResult solve_branch(Branch branch, const Weight &m, const BoundaryCondition &bc,
                         const AnisotropyH &h, const EigenOptions &opts,
                         const std::optional<GridFunction> &initial)
{
  return branch == Branch::Plus ? solve_lambda_plus(m, bc, h, opts, initial)
                                : solve_lambda_minus(m, bc, h, opts, initial);
}

// The bathtub step ranks the magnitude of the eigenfunction on either branch.
GridFunction magnitude(const GridFunction &phi)
{
  GridFunction out = phi;
  for (double &v : out.values)
  {
    v = std::abs(v);
  }
  return out;
}

std::pair<double, double> positive_extent(const Weight &m)
{
  const auto &cells = m.cells();
  const int n = m.mesh().n();
  int first = n, last = -1;
  for (int c = 0; c < n; c++)
  {
    if (cells[c] > 0.0)
    {
      first = std::min(first, c);
      last = c;
    }
  }
  if (last < 0)
  {
    return {0.0, 0.0};
  }
  return {first * m.mesh().h(), (last + 1) * m.mesh().h()};
}

// Cell indices ordered by decreasing midpoint value of |phi|, ties to the lowest index.
std::vector<int> ranking(const GridFunction &phi)
{
  const int n = phi.mesh.n();
  std::vector<double> mid(n);
  for (int c = 0; c < n; c++)
  {
    mid[c] = 0.5 * (std::abs(phi.values[c]) + std::abs(phi.values[c + 1]));
  }
  std::vector<int> order(n);
  for (int c = 0; c < n; c++)
  {
    order[c] = c;
  }
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return mid[i] > mid[j]; });
  return order;
}

struct State
{
  Weight m;
  EigenResult eig;
};

// Bathtub fixed points are not unique on the grid: they fill a band a few cells wide
// around the optimum. Exchanging one of the two weakest cells of the positive set with one
// of the two strongest outside it, judged by the true eigenvalue, moves across the band.
std::optional<State> best_swap(Branch branch, const State &cur, const BoundaryCondition &bc,
                               const AnisotropyH &h, const EigenOptions &eopts, double tol)
{
  const auto order = ranking(cur.eig.phi);
  const int n = cur.m.mesh().n();
  const int k = cur.m.positive_cell_count();
  std::optional<State> best;
  for (int r = std::max(0, k - 2); r < k; r++)
  {
    for (int a = k; a < std::min(n, k + 2); a++)
    {
      auto cells = cur.m.cells();
      std::swap(cells[order[r]], cells[order[a]]);
      Weight trial(cur.m.mesh(), std::move(cells), cur.m.params());
      auto eig = solve_branch(branch, trial, bc, h, eopts, cur.eig.phi);
      const double bar = best ? best->eig.lambda : cur.eig.lambda * (1.0 - tol);
      if (eig.lambda < bar)
      {
        best = State{std::move(trial), std::move(eig)};
      }
    }
  }
  return best;
}

OptimizeResult alternate(Branch branch, const WeightClassParams &params,
                         const BoundaryCondition &bc, const AnisotropyH &h, const Mesh1D &mesh,
                         const OptimizeOptions &opts, double start_fraction)
{
  const double width = optimal_measure(params);
  const int k = bathtub_cell_count(mesh, width);
  const double free_range = static_cast<double>(mesh.n() - k) / mesh.n();
  Weight m0 = bang_bang_from_interval(
      mesh.h() * std::lround(start_fraction * free_range * mesh.n()), k * mesh.h(), params,
      mesh);

  State cur{m0, solve_branch(branch, m0, bc, h, opts.eigen, std::nullopt)};
  OptimizeResult out(cur.m, cur.eig.phi);
  out.history.emplace_back(0, cur.eig.lambda);
  std::deque<std::vector<double>> recent;
  recent.push_back(cur.m.cells());

  int it = 0;
  bool settled = false;
  while (!settled && it < opts.max_alternations)
  {
    // Bathtub alternation until the weight is reproduced or stops improving.
    while (it < opts.max_alternations)
    {
      Weight next = bathtub_step(magnitude(cur.eig.phi), params, width);
      if (next == cur.m)
      {
        break;
      }
      if (std::find(recent.begin(), recent.end(), next.cells()) != recent.end())
      {
        out.oscillation = true;
        break;
      }
      recent.push_back(next.cells());
      if (recent.size() > 20)
      {
        recent.pop_front();
      }
      EigenResult candidate = solve_branch(branch, next, bc, h, opts.eigen, cur.eig.phi);
      out.history.emplace_back(++it, candidate.lambda);
      const double change = cur.eig.lambda - candidate.lambda;
      if (change < 0.0)
      {
        // No improvement (rounding-level increase): keep the better state.
        break;
      }
      cur = State{std::move(next), std::move(candidate)};
      if (change < opts.tol * cur.eig.lambda)
      {
        break;
      }
    }
    auto swapped = best_swap(branch, cur, bc, h, opts.eigen, opts.tol);
    if (!swapped)
    {
      settled = true;
      break;
    }
    cur = std::move(*swapped);
    out.history.emplace_back(++it, cur.eig.lambda);
    recent.clear();
    recent.push_back(cur.m.cells());
  }
  out.converged = settled && !out.oscillation;
  out.Lambda = cur.eig.lambda;
  out.m_opt = cur.m;
  out.phi = cur.eig.phi;
  std::tie(out.D_left, out.D_right) = positive_extent(cur.m);
  return out;
}

OptimizeResult optimize(Branch branch, const WeightClassParams &params,
                        const BoundaryCondition &bc, const AnisotropyH &h, const Mesh1D &mesh,
                        const OptimizeOptions &opts)
{
  params.check(bc);
  if (opts.start_positions.empty())
  {
    throw std::invalid_argument("optimizer needs at least one start position");
  }
  std::optional<OptimizeResult> best;
  for (double s : opts.start_positions)
  {
    if (!(s >= 0.0 && s <= 1.0))
    {
      throw std::invalid_argument("start positions must lie in [0, 1]");
    }
    auto res = alternate(branch, params, bc, h, mesh, opts, s);
    if (!best || res.Lambda < best->Lambda)
    {
      best = std::move(res);
    }
  }
  return std::move(*best);
}

}  // namespace

OptimizeResult optimize_weight_plus(const WeightClassParams &params,
                                    const BoundaryCondition &bc, const AnisotropyH &h,
                                    const Mesh1D &mesh, const OptimizeOptions &opts)
{
  return optimize(Branch::Plus, params, bc, h, mesh, opts);
}

OptimizeResult optimize_weight_minus(const WeightClassParams &params,
                                     const BoundaryCondition &bc, const AnisotropyH &h,
                                     const Mesh1D &mesh, const OptimizeOptions &opts)
{
  return optimize(Branch::Minus, params, bc, h, mesh, opts);
}

ScanResult interval_scan(const WeightClassParams &params, const BoundaryCondition &bc,
                         const AnisotropyH &h, const Mesh1D &mesh, double width,
                         int n_positions, const EigenOptions &eigen, int threads)
{
  if (!(width > 0.0 && width < 1.0))
  {
    throw std::invalid_argument("scan width must lie in (0, 1)");
  }
  const int n = mesh.n();
  const int k = static_cast<int>(std::lround(width * n));
  if (k <= 0 || k >= n)
  {
    throw std::invalid_argument("scan width rounds to a degenerate cell count");
  }
  if (n_positions <= 0)
  {
    n_positions = static_cast<int>(std::lround(n * (1.0 - width)));
  }
  if (n_positions < 2)
  {
    throw std::invalid_argument("scan needs at least two positions");
  }
  std::vector<int> firsts;
  for (int i = 0; i < n_positions; i++)
  {
    const int f = static_cast<int>(std::lround(static_cast<double>(i) * (n - k) / (n_positions - 1)));
    if (firsts.empty() || firsts.back() != f)
    {
      firsts.push_back(f);
    }
  }

  ScanResult out;
  out.curve.resize(firsts.size());
  parallel_for(static_cast<int>(firsts.size()), threads,
               [&](int i)
               {
                 const double c_left = firsts[i] * mesh.h();
                 const Weight m = bang_bang_from_interval(c_left, k * mesh.h(), params, mesh);
                 out.curve[i] = {c_left, solve_lambda_plus(m, bc, h, eigen).lambda};
               });
  out.argmin = out.curve.front();
  for (const auto &pt : out.curve)
  {
    if (pt.lambda < out.argmin.lambda)
    {
      out.argmin = pt;
    }
  }
  return out;
}

PredictedInterval predicted_optimal_interval(const AnisotropyH &h, double width,
                                             const BoundaryCondition &bc)
{
  if (!(width > 0.0 && width < 1.0))
  {
    throw std::invalid_argument("optimal-set width must lie in (0, 1)");
  }
  const double a = h.a(), b = h.b();
  PredictedInterval out;
  switch (bc.kind)
  {
    case BoundaryKind::Dirichlet:
      // The anisotropic ball of measure |D| centred at 1/2.
      out.left = (1.0 - width) * a / (a + b);
      out.right = (width * b + a) / (a + b);
      return out;
    case BoundaryKind::Neumann:
      if (a >= b)
      {
        out.left = 0.0;
        out.right = width;
        if (a == b)
        {
          out.alternative = std::make_pair(1.0 - width, 1.0);
        }
      }
      else
      {
        out.left = 1.0 - width;
        out.right = 1.0;
      }
      return out;
    case BoundaryKind::Robin:
      break;
  }
  throw std::invalid_argument(
      "optimal-set localization under Robin conditions is an open problem; no prediction");
}

MonotoneReport check_monotone_structure(const GridFunction &phi, const BoundaryCondition &bc)
{
  const int n = phi.mesh.n();
  // Work with |phi| so nonpositive eigenfunctions are handled alike.
  std::vector<double> u(n + 1);
  for (int j = 0; j <= n; j++)
  {
    u[j] = std::abs(phi.values[j]);
  }
  MonotoneReport rep;
  rep.argmax_node = static_cast<int>(std::max_element(u.begin(), u.end()) - u.begin());
  rep.argmax_x = phi.mesh.node(rep.argmax_node);
  const double floor = 1e-8 * u[rep.argmax_node];

  int last = 0;
  bool any_up = false, any_down = false;
  for (int c = 0; c < n; c++)
  {
    const double d = u[c + 1] - u[c];
    const int s = d > floor ? 1 : (d < -floor ? -1 : 0);
    if (s == 0)
    {
      continue;
    }
    any_up |= s > 0;
    any_down |= s < 0;
    if (last != 0 && s != last)
    {
      rep.sign_changes++;
      if (last < 0 && s > 0)
      {
        rep.interior_minima++;
      }
    }
    last = s;
  }
  rep.single_peak = rep.interior_minima == 0 && rep.sign_changes <= 1;
  rep.monotone = rep.sign_changes == 0;
  rep.decreasing = rep.monotone && !any_up;
  rep.increasing = rep.monotone && !any_down;
  rep.ok = bc.kind == BoundaryKind::Neumann ? rep.monotone
                                            : (rep.single_peak && rep.sign_changes == 1);
  return rep;
}

DerivativeReport check_derivative_structure(const GridFunction &phi, const Weight &m,
                                            double slack)
{
  const int n = phi.mesh.n();
  const double h = phi.mesh.h();
  const double sign = *std::max_element(phi.values.begin(), phi.values.end()) > 0.0 ? 1.0 : -1.0;
  DerivativeReport rep;
  rep.worst_in_D = -std::numeric_limits<double>::infinity();
  rep.worst_in_Dc = -std::numeric_limits<double>::infinity();
  for (int c = 0; c + 1 < n; c++)
  {
    const double s0 = sign * (phi.values[c + 1] - phi.values[c]) / h;
    const double s1 = sign * (phi.values[c + 2] - phi.values[c + 1]) / h;
    const bool in0 = m.cells()[c] > 0.0, in1 = m.cells()[c + 1] > 0.0;
    if (in0 && in1)
    {
      rep.worst_in_D = std::max(rep.worst_in_D, s1 - s0);
    }
    else if (!in0 && !in1)
    {
      rep.worst_in_Dc = std::max(rep.worst_in_Dc, s0 - s1);
    }
  }
  rep.ok = rep.worst_in_D < slack && rep.worst_in_Dc < slack;
  return rep;
}

SymmetryReport check_lambda_symmetry(const WeightClassParams &params,
                                     const BoundaryCondition &bc, const AnisotropyH &h,
                                     const Mesh1D &mesh, const OptimizeOptions &opts)
{
  const auto plus = optimize_weight_plus(params, bc, h, mesh, opts);
  const auto minus = optimize_weight_minus(params, bc, h, mesh, opts);
  SymmetryReport rep;
  rep.Lambda_plus = plus.Lambda;
  rep.Lambda_minus = minus.Lambda;
  rep.relative_gap = std::abs(plus.Lambda - minus.Lambda) / plus.Lambda;
  const auto reflected = reflect_weight(minus.m_opt);
  const int n = mesh.n();
  for (int c = 0; c < n; c++)
  {
    rep.weight_cells_differing += plus.m_opt.cells()[c] != reflected.cells()[c];
  }
  const auto [l1, r1] = positive_extent(plus.m_opt);
  const auto [l2, r2] = positive_extent(reflected);
  rep.weight_shift_cells =
      static_cast<int>(std::lround(std::max(std::abs(l1 - l2), std::abs(r1 - r2)) * n));
  for (int j = 0; j <= n; j++)
  {
    rep.phi_distance =
        std::max(rep.phi_distance, std::abs(plus.phi.values[j] + minus.phi.values[n - j]));
  }
  return rep;
}

}  // namespace anisopt

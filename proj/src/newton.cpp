// SPDX-License-Identifier: Apache-2.0

#include "anisopt/newton.hpp"

#include <algorithm>
#include <cmath>

namespace anisopt
{

namespace
{

void project(std::vector<double> &u, std::span<const double> lower,
             std::span<const double> upper)
{
  const std::size_t n = u.size();
  if (!lower.empty())
  {
    for (std::size_t j = 0; j < n; j++)
    {
      u[j] = std::max(u[j], lower[j]);
    }
  }
  if (!upper.empty())
  {
    for (std::size_t j = 0; j < n; j++)
    {
      u[j] = std::min(u[j], upper[j]);
    }
  }
}

}  // namespace

NewtonReport minimize_newton(const TridiagObjective &f, std::vector<double> &u,
                             const std::vector<char> &fixed, std::span<const double> lower,
                             std::span<const double> upper, const NewtonOptions &opts)
{
  const int n = static_cast<int>(u.size());
  NewtonReport report;
  project(u, lower, upper);
  std::vector<double> g(n), d(n), trial(n);
  std::vector<char> frozen(n);
  SymTridiag A(n);
  double value = f.value(u);

  for (int it = 0; it < opts.max_iters; it++)
  {
    std::fill(g.begin(), g.end(), 0.0);
    f.gradient(u, g);

    double pg = 0.0;
    for (int j = 0; j < n; j++)
    {
      const bool at_lower = !lower.empty() && u[j] <= lower[j] && g[j] > 0.0;
      const bool at_upper = !upper.empty() && u[j] >= upper[j] && g[j] < 0.0;
      frozen[j] = fixed[j] || at_lower || at_upper;
      if (!frozen[j])
      {
        pg = std::max(pg, std::abs(g[j]));
      }
    }
    report.iterations = it;
    report.projected_gradient = pg;
    report.value = value;
    if (pg <= opts.gtol)
    {
      report.converged = true;
      return report;
    }

    f.hessian(u, A);
    for (int j = 0; j < n; j++)
    {
      if (frozen[j])
      {
        A.diag[j] = 1.0;
        if (j > 0)
        {
          A.off[j - 1] = 0.0;
        }
        if (j + 1 < n)
        {
          A.off[j] = 0.0;
        }
      }
    }
    double dmax = 0.0;
    for (double v : A.diag)
    {
      dmax = std::max(dmax, std::abs(v));
    }
    double shift = 0.0;
    for (int attempt = 0; attempt < 60; attempt++)
    {
      SymTridiag B = A;
      for (int j = 0; j < n; j++)
      {
        if (!frozen[j])
        {
          B.diag[j] += shift;
        }
      }
      for (int j = 0; j < n; j++)
      {
        d[j] = frozen[j] ? 0.0 : -g[j];
      }
      if (B.solve_spd(d))
      {
        break;
      }
      shift = shift == 0.0 ? 1e-10 * std::max(dmax, 1e-300) : 10.0 * shift;
    }
    for (int j = 0; j < n; j++)
    {
      if (frozen[j])
      {
        d[j] = 0.0;
      }
    }

    // Armijo search along the projection arc.
    double slope = 0.0;
    for (int j = 0; j < n; j++)
    {
      slope += g[j] * d[j];
    }
    if (!(slope < 0.0))
    {
      // Curvature model failed to give descent: fall back to the negative gradient.
      for (int j = 0; j < n; j++)
      {
        d[j] = frozen[j] ? 0.0 : -g[j];
      }
    }
    double step = 1.0;
    bool accepted = false;
    double trial_value = value;
    for (int ls = 0; ls < 60; ls++)
    {
      for (int j = 0; j < n; j++)
      {
        trial[j] = u[j] + step * d[j];
      }
      project(trial, lower, upper);
      double decrease = 0.0;
      for (int j = 0; j < n; j++)
      {
        decrease += g[j] * (trial[j] - u[j]);
      }
      trial_value = f.value(trial);
      if (trial_value <= value + 1e-4 * decrease)
      {
        accepted = true;
        break;
      }
      // Near a minimizer the predicted decrease drops below the rounding level of the
      // objective; accept the full step there and let the gradient test decide.
      if (step == 1.0 && std::abs(decrease) <= 1e-14 * (std::abs(value) + 1e-300) &&
          trial_value <= value + 1e-13 * (std::abs(value) + 1e-300))
      {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
    {
      report.iterations = it + 1;
      return report;
    }
    double moved = 0.0, size = 0.0;
    for (int j = 0; j < n; j++)
    {
      moved = std::max(moved, std::abs(trial[j] - u[j]));
      size = std::max(size, std::abs(trial[j]));
    }
    u.swap(trial);
    value = trial_value;
    if (step == 1.0 && moved <= opts.xtol * size)
    {
      report.iterations = it + 1;
      report.value = value;
      report.converged = true;
      return report;
    }
  }
  std::fill(g.begin(), g.end(), 0.0);
  f.gradient(u, g);
  double pg = 0.0;
  for (int j = 0; j < n; j++)
  {
    const bool at_lower = !lower.empty() && u[j] <= lower[j] && g[j] > 0.0;
    const bool at_upper = !upper.empty() && u[j] >= upper[j] && g[j] < 0.0;
    if (!(fixed[j] || at_lower || at_upper))
    {
      pg = std::max(pg, std::abs(g[j]));
    }
  }
  report.iterations = opts.max_iters;
  report.projected_gradient = pg;
  report.value = value;
  report.converged = pg <= opts.gtol;
  return report;
}

}  // namespace anisopt

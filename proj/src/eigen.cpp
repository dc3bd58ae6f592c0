// SPDX-License-Identifier: Apache-2.0

#include "anisopt/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include "anisopt/functional.hpp"
#include "anisopt/newton.hpp"

namespace anisopt
{

namespace
{

// Minimizes (N(u) + sum_c h c_c |u_c|^p) / (sum_c h d_c |u_c|^p) over u >= 0, where N is
// the anisotropic stiffness, c >= 0 a cell potential and d a sign-changing cell weight.
struct RatioProblem
{
  Mesh1D mesh;
  AnisotropyH h;
  BoundaryCondition bc;
  std::vector<double> potential;
  std::vector<double> denom;

  double p() const { return h.p(); }

  double numerator(std::span<const double> u) const
  {
    return discrete::stiffness(mesh, h, bc, u) + discrete::mass(mesh, potential, p(), u);
  }

  double denominator(std::span<const double> u) const
  {
    return discrete::mass(mesh, denom, p(), u);
  }

  std::vector<char> fixed_nodes() const
  {
    std::vector<char> fixed(mesh.n() + 1, 0);
    if (bc.is_dirichlet())
    {
      fixed[0] = 1;
      fixed[mesh.n()] = 1;
    }
    return fixed;
  }

  // max_j |grad(N/p + C/p - R D/p)_j| over free nodes.
  double residual(std::span<const double> u, double ratio) const
  {
    std::vector<double> g(u.size(), 0.0);
    discrete::add_stiffness_gradient(mesh, h, bc, u, 1.0, g);
    discrete::add_mass_gradient(mesh, potential, p(), u, 1.0, g);
    discrete::add_mass_gradient(mesh, denom, p(), u, -ratio, g);
    const auto fixed = fixed_nodes();
    double r = 0.0;
    for (std::size_t j = 0; j < g.size(); j++)
    {
      if (!fixed[j])
      {
        r = std::max(r, std::abs(g[j]));
      }
    }
    return r;
  }
};

struct RatioOutcome
{
  double ratio = std::numeric_limits<double>::infinity();
  std::vector<double> u;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
  bool converged = false;
  bool feasible = false;
};

void apply_cone(const RatioProblem &prob, std::vector<double> &u)
{
  for (double &v : u)
  {
    v = std::max(v, 0.0);
  }
  if (prob.bc.is_dirichlet())
  {
    u.front() = u.back() = 0.0;
  }
}

// Scales u to unit denominator; false when u lies outside the positive cone S+.
bool normalize(const RatioProblem &prob, std::vector<double> &u)
{
  const double d = prob.denominator(u);
  if (!(d > 0.0) || !std::isfinite(d))
  {
    return false;
  }
  const double s = std::pow(d, -1.0 / prob.p());
  for (double &v : u)
  {
    v *= s;
  }
  return true;
}

// One step of the ratio descent: w minimizes
//   (1/p) (N(w) + C(w) + R D-(w)) - R <w, grad(D+/p)(u)>,
// which never increases the ratio and keeps w in the cone since the linear term is
// nonnegative.
bool descent_step(const RatioProblem &prob, const std::vector<double> &u, double ratio,
                  double eps, std::vector<double> &w)
{
  const int n = prob.mesh.n();
  const double p = prob.p();
  std::vector<double> dplus(n), lower_potential(n);
  for (int c = 0; c < n; c++)
  {
    dplus[c] = std::max(prob.denom[c], 0.0);
    lower_potential[c] = prob.potential[c] + ratio * std::max(-prob.denom[c], 0.0);
  }
  std::vector<double> load(n + 1, 0.0);
  discrete::add_mass_gradient(prob.mesh, dplus, p, u, ratio, load);
  double load_norm = 0.0;
  for (double v : load)
  {
    load_norm = std::max(load_norm, std::abs(v));
  }

  TridiagObjective f;
  f.value = [&](std::span<const double> x)
  {
    double lin = 0.0;
    for (int j = 0; j <= n; j++)
    {
      lin += load[j] * x[j];
    }
    return (discrete::stiffness(prob.mesh, prob.h, prob.bc, x) +
            discrete::mass(prob.mesh, lower_potential, p, x)) / p - lin;
  };
  f.gradient = [&](std::span<const double> x, std::span<double> g)
  {
    discrete::add_stiffness_gradient(prob.mesh, prob.h, prob.bc, x, 1.0, g);
    discrete::add_mass_gradient(prob.mesh, lower_potential, p, x, 1.0, g);
    for (int j = 0; j <= n; j++)
    {
      g[j] -= load[j];
    }
  };
  f.hessian = [&](std::span<const double> x, SymTridiag &A)
  {
    A.set_zero();
    discrete::add_stiffness_hessian(prob.mesh, prob.h, prob.bc, x, 1.0, eps, A);
    discrete::add_mass_hessian(prob.mesh, lower_potential, p, x, 1.0, eps, A);
  };

  w = u;
  NewtonOptions nopts;
  nopts.gtol = 1e-13 * load_norm;
  nopts.max_iters = 100;
  nopts.xtol = 1e-14;
  const auto fixed = prob.fixed_nodes();
  minimize_newton(f, w, fixed, {}, {}, nopts);
  apply_cone(prob, w);
  return normalize(prob, w);
}

RatioOutcome run_ratio_descent(const RatioProblem &prob, std::vector<double> u,
                               const EigenOptions &opts)
{
  RatioOutcome out;
  apply_cone(prob, u);
  if (!normalize(prob, u))
  {
    return out;
  }
  out.feasible = true;
  double ratio = prob.numerator(u);
  out.history.push_back(ratio);
  int streak = 0;
  std::vector<double> w;
  for (int it = 1; it <= opts.max_iters; it++)
  {
    if (!descent_step(prob, u, ratio, opts.smoothing_eps, w))
    {
      // Left the cone interior: restart from the mollified indicator is up to the caller.
      out.feasible = false;
      break;
    }
    const double next = prob.numerator(w);
    double change = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < u.size(); j++)
    {
      change = std::max(change, std::abs(w[j] - u[j]));
      scale = std::max(scale, std::abs(w[j]));
    }
    const double rel = std::abs(next - ratio) / std::max(std::abs(ratio), 1e-300);
    streak = rel < opts.tol_rel ? streak + 1 : 0;
    u.swap(w);
    ratio = next;
    out.history.push_back(ratio);
    out.iterations = it;
    if (streak >= 10 && change <= opts.vector_tol * scale)
    {
      out.converged = true;
      break;
    }
  }
  out.ratio = ratio;
  out.residual = prob.residual(u, ratio);
  out.u = std::move(u);
  return out;
}

// Nodal interpolant of the indicator of {d > 0}, averaged over the two adjacent cells.
std::vector<double> indicator_start(const RatioProblem &prob)
{
  const int n = prob.mesh.n();
  std::vector<double> u(n + 1, 0.0);
  for (int c = 0; c < n; c++)
  {
    if (prob.denom[c] > 0.0)
    {
      u[c] += 0.5;
      u[c + 1] += 0.5;
    }
  }
  return u;
}

std::vector<std::vector<double>> candidate_starts(const RatioProblem &prob)
{
  const int n = prob.mesh.n();
  std::vector<std::vector<double>> starts;
  starts.push_back(indicator_start(prob));
  // Sharper variant: only nodes interior to runs of positive cells.
  std::vector<double> core(n + 1, 0.0);
  for (int j = 1; j < n; j++)
  {
    core[j] = prob.denom[j - 1] > 0.0 && prob.denom[j] > 0.0 ? 1.0 : 0.0;
  }
  starts.push_back(core);
  // Single positive cells, which the two variants above may not resolve.
  for (int c = 0; c < n; c++)
  {
    if (prob.denom[c] > 0.0)
    {
      std::vector<double> bump(n + 1, 0.0);
      bump[c] = bump[c + 1] = 1.0;
      starts.push_back(std::move(bump));
    }
  }
  return starts;
}

std::vector<double> feasible_start(const RatioProblem &prob)
{
  for (auto u : candidate_starts(prob))
  {
    apply_cone(prob, u);
    auto v = u;
    if (normalize(prob, v))
    {
      return u;
    }
  }
  throw std::runtime_error("no feasible start: the weight admits no u >= 0 with "
                           "positive weighted mass on this mesh");
}

std::vector<double> random_start(const RatioProblem &prob, const std::vector<double> &base,
                                 std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double noise = 0.5;
  for (int attempt = 0; attempt < 40; attempt++)
  {
    std::vector<double> u(base.size());
    for (std::size_t j = 0; j < u.size(); j++)
    {
      u[j] = base[j] * (0.25 + unif(rng)) + noise * unif(rng);
    }
    apply_cone(prob, u);
    auto v = u;
    if (normalize(prob, v))
    {
      return u;
    }
    noise *= 0.5;
  }
  return base;
}

bool degenerate_neumann(const RatioProblem &prob)
{
  if (prob.bc.kind != BoundaryKind::Neumann)
  {
    return false;
  }
  for (std::size_t c = 0; c < prob.denom.size(); c++)
  {
    if (prob.potential[c] > 0.0 || prob.denom[c] < 0.0)
    {
      return false;
    }
  }
  return true;
}

RatioOutcome solve_ratio(const RatioProblem &prob, const EigenOptions &opts,
                         const std::optional<GridFunction> &initial)
{
  if (degenerate_neumann(prob))
  {
    // Constants have zero energy and positive denominator: the infimum is 0.
    RatioOutcome out;
    out.u.assign(prob.mesh.n() + 1, 1.0);
    out.feasible = normalize(prob, out.u);
    if (!out.feasible)
    {
      throw std::runtime_error("no feasible start: weight has no positive cell");
    }
    out.ratio = prob.numerator(out.u);
    out.history.push_back(out.ratio);
    out.residual = prob.residual(out.u, out.ratio);
    out.converged = true;
    return out;
  }

  std::vector<double> base;
  if (initial)
  {
    if (!(initial->mesh == prob.mesh))
    {
      throw std::invalid_argument("initial guess lives on a different mesh");
    }
    base = initial->values;
    for (double &v : base)
    {
      v = std::abs(v);
    }
    apply_cone(prob, base);
    auto v = base;
    if (!normalize(prob, v))
    {
      base = feasible_start(prob);
    }
  }
  else
  {
    base = feasible_start(prob);
  }

  std::mt19937_64 rng(opts.seed);
  RatioOutcome best;
  const int restarts = std::max(1, opts.restarts);
  for (int r = 0; r < restarts; r++)
  {
    auto start = r == 0 ? base : random_start(prob, base, rng);
    auto out = run_ratio_descent(prob, start, opts);
    if (!out.feasible)
    {
      // Reinitialize this restart from the deterministic start.
      out = run_ratio_descent(prob, feasible_start(prob), opts);
    }
    if (out.feasible && out.ratio < best.ratio)
    {
      best = std::move(out);
    }
  }
  if (!best.feasible)
  {
    throw std::runtime_error("ratio descent left the positive cone from every start");
  }
  return best;
}

void check_class_m(const Weight &m, const EigenOptions &opts)
{
  if (!opts.enforce_class_m)
  {
    return;
  }
  // Bang-bang weights on the grid meet the mass constraint only up to one cell.
  const double mass_slack = (1.0 + m.params().beta) * m.mesh().h();
  std::string msg;
  for (const auto &v : validate(m))
  {
    if (v.constraint == "int m <= -m0" && v.margin <= mass_slack)
    {
      continue;
    }
    msg += " [" + v.constraint + ", margin " + std::to_string(v.margin) + "]";
  }
  if (!msg.empty())
  {
    throw std::invalid_argument("weight is not in class M:" + msg);
  }
}

}  // namespace

double rayleigh_quotient(const GridFunction &u, const Weight &m, const BoundaryCondition &bc,
                         const AnisotropyH &h)
{
  if (bc.is_dirichlet() && (u.values.front() != 0.0 || u.values.back() != 0.0))
  {
    throw std::invalid_argument("Dirichlet Rayleigh quotient needs u_0 = u_n = 0");
  }
  const double den = integrate_p_mass(u, m, h.p());
  if (!(den > 0.0))
  {
    throw std::invalid_argument("Rayleigh quotient needs int m |u|^p > 0 (u is not in S+)");
  }
  return discrete::stiffness(u.mesh, h, bc, u.values) / den;
}

EigenResult solve_lambda_plus(const Weight &m, const BoundaryCondition &bc,
                              const AnisotropyH &h, const EigenOptions &opts,
                              const std::optional<GridFunction> &initial)
{
  check_class_m(m, opts);
  RatioProblem prob{m.mesh(), h, bc, std::vector<double>(m.mesh().n(), 0.0), m.cells()};
  auto out = solve_ratio(prob, opts, initial);
  EigenResult res(m.mesh());
  res.lambda = out.ratio;
  res.phi.values = std::move(out.u);
  res.iterations = out.iterations;
  res.residual_norm = out.residual;
  res.history = std::move(out.history);
  res.converged = out.converged;
  return res;
}

EigenResult solve_lambda_minus(const Weight &m, const BoundaryCondition &bc,
                               const AnisotropyH &h, const EigenOptions &opts,
                               const std::optional<GridFunction> &initial)
{
  std::optional<GridFunction> flipped;
  if (initial)
  {
    flipped = *initial;
    for (double &v : flipped->values)
    {
      v = -v;
    }
  }
  auto res = solve_lambda_plus(m, bc, reflect(h), opts, flipped);
  for (double &v : res.phi.values)
  {
    v = -v;
  }
  return res;
}

MuResult mu_plus(double lambda, const Weight &m, const BoundaryCondition &bc,
                 const AnisotropyH &h, const EigenOptions &opts)
{
  if (!(lambda >= 0.0))
  {
    throw std::invalid_argument("mu_plus needs lambda >= 0");
  }
  const int n = m.mesh().n();
  // Shifted so the numerator potential is positive: mu + shift is an ordinary ratio.
  const double shift = lambda * m.max_positive() + 1.0;
  RatioProblem prob{m.mesh(), h, bc, std::vector<double>(n), std::vector<double>(n, 1.0)};
  for (int c = 0; c < n; c++)
  {
    prob.potential[c] = shift - lambda * m.cells()[c];
  }
  auto out = solve_ratio(prob, opts, std::nullopt);
  MuResult res(m.mesh());
  res.mu = out.ratio - shift;
  res.Phi.values = std::move(out.u);
  res.iterations = out.iterations;
  res.converged = out.converged;
  return res;
}

double residual_weak_form(const GridFunction &u, double lambda, const Weight &m,
                          const BoundaryCondition &bc, const AnisotropyH &h)
{
  RatioProblem prob{m.mesh(), h, bc, std::vector<double>(m.mesh().n(), 0.0), m.cells()};
  return prob.residual(u.values, lambda);
}

}  // namespace anisopt

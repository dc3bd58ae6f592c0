// SPDX-License-Identifier: Apache-2.0

#include "anisopt/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include "anisopt/functional.hpp"
#include "anisopt/newton.hpp"

namespace anisopt
{

namespace
{

double super_level(const LogisticProblem &prob)
{
  return std::pow(prob.m.max_positive(), 1.0 / prob.q);
}

void pin_dirichlet(const BoundaryCondition &bc, GridFunction &u)
{
  if (bc.is_dirichlet())
  {
    u.values.front() = 0.0;
    u.values.back() = 0.0;
  }
}

void add_gradient(const LogisticProblem &prob, std::span<const double> u, std::span<double> g)
{
  const Mesh1D &mesh = prob.m.mesh();
  const double p = prob.h.p();
  const std::vector<double> ones(mesh.n(), 1.0);
  discrete::add_stiffness_gradient(mesh, prob.h, prob.bc, u, 1.0, g);
  discrete::add_mass_gradient(mesh, prob.m.cells(), p, u, -prob.lambda, g);
  discrete::add_mass_gradient(mesh, ones, p + prob.q, u, prob.lambda, g);
}

}  // namespace

LogisticProblem::LogisticProblem(double lambda, double q, Weight m, BoundaryCondition bc,
                                 AnisotropyH h)
  : lambda(lambda), q(q), m(std::move(m)), bc(bc), h(h)
{
  if (!(lambda > 0.0) || !std::isfinite(lambda))
  {
    throw std::invalid_argument("logistic problem needs lambda > 0");
  }
  if (!(q > 0.0) || !std::isfinite(q))
  {
    throw std::invalid_argument("logistic problem needs q > 0");
  }
}

double logistic_energy(const LogisticProblem &prob, const GridFunction &u)
{
  const Mesh1D &mesh = prob.m.mesh();
  const double p = prob.h.p();
  const std::vector<double> ones(mesh.n(), 1.0);
  return (discrete::stiffness(mesh, prob.h, prob.bc, u.values) -
          prob.lambda * discrete::mass(mesh, prob.m.cells(), p, u.values)) / p +
         prob.lambda / (p + prob.q) * discrete::mass(mesh, ones, p + prob.q, u.values);
}

double logistic_residual(const LogisticProblem &prob, const GridFunction &u)
{
  std::vector<double> g(u.values.size(), 0.0);
  add_gradient(prob, u.values, g);
  const std::size_t skip = prob.bc.is_dirichlet() ? 1 : 0;
  double r = 0.0;
  for (std::size_t j = skip; j + skip < g.size(); j++)
  {
    r = std::max(r, std::abs(g[j]));
  }
  return r;
}

SubSuperPair sub_super_pair(const LogisticProblem &prob, const EigenOptions &opts)
{
  const Mesh1D &mesh = prob.m.mesh();
  SubSuperPair pair{GridFunction(mesh), GridFunction(mesh, super_level(prob)), 0.0, 0.0};
  pin_dirichlet(prob.bc, pair.super);

  const MuResult mu = mu_plus(prob.lambda, prob.m, prob.bc, prob.h, opts);
  pair.mu = mu.mu;
  const double lambda_plus = solve_lambda_plus(prob.m, prob.bc, prob.h, opts).lambda;
  if (prob.lambda > lambda_plus * (1.0 + 1e-9) && !(mu.mu < 0.0))
  {
    throw std::runtime_error("inconsistent spectrum: lambda above lambda+ but mu+ = " +
                             std::to_string(mu.mu));
  }
  if (mu.mu < 0.0)
  {
    pair.epsilon = 0.5 * std::min(std::pow(-mu.mu / prob.lambda, 1.0 / prob.q),
                                  prob.m.max_positive());
    const double top = mu.Phi.sup_norm();
    for (int i = 0; i <= mesh.n(); i++)
    {
      pair.sub[i] = pair.epsilon * std::max(mu.Phi[i], 0.0) / top;
    }
    pin_dirichlet(prob.bc, pair.sub);
  }
  return pair;
}

LogisticResult solve_logistic(const LogisticProblem &prob, const LogisticOptions &opts,
                              const std::optional<GridFunction> &initial)
{
  const Mesh1D &mesh = prob.m.mesh();
  const int n = mesh.n();
  const double p = prob.h.p();
  const std::vector<double> ones(n, 1.0);
  const SubSuperPair box = sub_super_pair(prob, opts.eigen);

  TridiagObjective f;
  f.value = [&](std::span<const double> x)
  {
    return (discrete::stiffness(mesh, prob.h, prob.bc, x) -
            prob.lambda * discrete::mass(mesh, prob.m.cells(), p, x)) / p +
           prob.lambda / (p + prob.q) * discrete::mass(mesh, ones, p + prob.q, x);
  };
  f.gradient = [&](std::span<const double> x, std::span<double> g) { add_gradient(prob, x, g); };
  f.hessian = [&](std::span<const double> x, SymTridiag &A)
  {
    const double eps = opts.eigen.smoothing_eps;
    A.set_zero();
    discrete::add_stiffness_hessian(mesh, prob.h, prob.bc, x, 1.0, eps, A);
    discrete::add_mass_hessian(mesh, prob.m.cells(), p, x, -prob.lambda, eps, A);
    discrete::add_mass_hessian(mesh, ones, p + prob.q, x, prob.lambda, eps, A);
  };

  std::vector<double> u = initial ? initial->values : box.super.values;
  if (static_cast<int>(u.size()) != n + 1)
  {
    throw std::invalid_argument("initial guess does not match the mesh");
  }
  for (int i = 0; i <= n; i++)
  {
    u[i] = std::clamp(u[i], box.sub[i], box.super[i]);
  }
  std::vector<char> fixed(n + 1, 0);
  if (prob.bc.is_dirichlet())
  {
    fixed[0] = 1;
    fixed[n] = 1;
  }
  NewtonOptions nopts;
  nopts.gtol = opts.gtol * (1.0 + prob.lambda);
  nopts.max_iters = opts.max_iters;
  const NewtonReport rep = minimize_newton(f, u, fixed, box.sub.values, box.super.values, nopts);

  LogisticResult out(mesh);
  out.u.values = std::move(u);
  out.energy = logistic_energy(prob, out.u);
  out.sup_norm = out.u.sup_norm();
  out.nontrivial = out.sup_norm > opts.delta * super_level(prob);
  out.iterations = rep.iterations;
  out.residual = logistic_residual(prob, out.u);
  out.converged = rep.converged;
  return out;
}

double threshold_scan(const Weight &m, double q, const BoundaryCondition &bc,
                      const AnisotropyH &h, std::pair<double, double> bracket,
                      const LogisticOptions &opts)
{
  auto [lo, hi] = bracket;
  if (!(lo > 0.0) || !(lo < hi))
  {
    throw std::invalid_argument("threshold bracket needs 0 < lo < hi");
  }
  const double lambda_plus = solve_lambda_plus(m, bc, h, opts.eigen).lambda;
  if (!(lo < lambda_plus && lambda_plus < hi))
  {
    throw std::invalid_argument("bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "] does not contain lambda+ = " + std::to_string(lambda_plus));
  }
  auto nontrivial = [&](double lambda)
  { return solve_logistic(LogisticProblem(lambda, q, m, bc, h), opts).nontrivial; };
  if (nontrivial(lo) || !nontrivial(hi))
  {
    throw std::invalid_argument("bracket does not straddle the survival threshold");
  }
  for (int k = 0; k < opts.bisection_depth; k++)
  {
    const double mid = 0.5 * (lo + hi);
    (nontrivial(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace anisopt

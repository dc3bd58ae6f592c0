// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_LOGISTIC_HPP
#define ANISOPT_LOGISTIC_HPP

#include <optional>
#include <utility>
#include "anisopt/anisotropy.hpp"
#include "anisopt/eigen.hpp"
#include "anisopt/mesh.hpp"
#include "anisopt/weight.hpp"

namespace anisopt
{

// -div(flux(u')) = lambda |u|^{p-2} u (m - |u|^q) with boundary condition bc.
struct LogisticProblem
{
  double lambda;
  double q;
  Weight m;
  BoundaryCondition bc;
  AnisotropyH h;

  LogisticProblem(double lambda, double q, Weight m, BoundaryCondition bc, AnisotropyH h);
};

struct LogisticOptions
{
  EigenOptions eigen;
  double gtol = 1e-10;  // projected gradient, relative to 1 + lambda
  int max_iters = 500;
  // Nontrivial when sup u > delta * |m+|^{1/q}.
  double delta = 1e-4;
  int bisection_depth = 20;
};

struct LogisticResult
{
  GridFunction u;
  double energy = 0.0;
  bool nontrivial = false;
  double sup_norm = 0.0;
  int iterations = 0;
  double residual = 0.0;  // max nodal weak-form residual
  bool converged = false;

  explicit LogisticResult(const Mesh1D &mesh) : u(mesh) {}
};

struct SubSuperPair
{
  GridFunction sub;
  GridFunction super;
  double mu = 0.0;       // mu+(lambda, m)
  double epsilon = 0.0;  // sub = epsilon Phi, |Phi|_inf = 1; zero when mu >= 0
};

// Ordered pair for the box: epsilon Phi below the constant |m+|_inf^{1/q} (with Dirichlet
// nodes pinned to 0).
SubSuperPair sub_super_pair(const LogisticProblem &prob, const EigenOptions &opts = {});

// (1/p)(N(u) - lambda int m |u|^p) + lambda/(p+q) int |u|^{p+q}, N including the Robin term.
double logistic_energy(const LogisticProblem &prob, const GridFunction &u);

// max_j |D(u, phi_j)| over the nodal hat functions (interior ones for Dirichlet).
double logistic_residual(const LogisticProblem &prob, const GridFunction &u);

// Minimizes the energy over the order interval of sub_super_pair. The default start is the
// super-solution.
LogisticResult solve_logistic(const LogisticProblem &prob, const LogisticOptions &opts = {},
                              const std::optional<GridFunction> &initial = std::nullopt);

// Bisection for the survival threshold in [lo, hi]. Throws std::invalid_argument when the
// bracket does not straddle lambda+(m).
double threshold_scan(const Weight &m, double q, const BoundaryCondition &bc,
                      const AnisotropyH &h, std::pair<double, double> bracket,
                      const LogisticOptions &opts = {});

}  // namespace anisopt

#endif  // ANISOPT_LOGISTIC_HPP

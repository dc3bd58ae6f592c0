// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_EIGEN_HPP
#define ANISOPT_EIGEN_HPP

#include <cstdint>
#include <optional>
#include <vector>
#include "anisopt/anisotropy.hpp"
#include "anisopt/mesh.hpp"
#include "anisopt/weight.hpp"

namespace anisopt
{

struct EigenOptions
{
  double tol_rel = 1e-8;  // relative eigenvalue change, over 10 consecutive iterations
  int max_iters = 5000;
  double smoothing_eps = 1e-8;
  int restarts = 1;  // 1 = mollified indicator start only; extra restarts are random
  std::uint64_t seed = 0;
  // Reject weights outside class M. Oracle tests with e.g. m = 1 turn this off.
  bool enforce_class_m = true;
  // Relative sup-norm change of the normalized iterate required at convergence.
  double vector_tol = 1e-10;
};

struct EigenResult
{
  double lambda = 0.0;
  GridFunction phi;  // normalized: int m |phi|^p = 1
  int iterations = 0;
  double residual_norm = 0.0;  // see residual_weak_form
  std::vector<double> history;
  bool converged = false;

  explicit EigenResult(const Mesh1D &mesh) : phi(mesh) {}
};

// (int H(u')^p + kappa-term) / int m |u|^p. Throws std::invalid_argument when the
// denominator is not positive, or when a Dirichlet trace is nonzero.
double rayleigh_quotient(const GridFunction &u, const Weight &m, const BoundaryCondition &bc,
                         const AnisotropyH &h);

// Principal eigenvalue with a nonnegative eigenfunction. `initial`, when given, replaces
// the mollified-indicator start (warm start).
EigenResult solve_lambda_plus(const Weight &m, const BoundaryCondition &bc,
                              const AnisotropyH &h, const EigenOptions &opts = {},
                              const std::optional<GridFunction> &initial = std::nullopt);

// Principal eigenvalue with a nonpositive eigenfunction: solve_lambda_plus under reflect(h),
// with the eigenfunction negated.
EigenResult solve_lambda_minus(const Weight &m, const BoundaryCondition &bc,
                               const AnisotropyH &h, const EigenOptions &opts = {},
                               const std::optional<GridFunction> &initial = std::nullopt);

struct MuResult
{
  double mu = 0.0;
  GridFunction Phi;  // nonnegative minimizer, normalized by int |Phi|^p = 1
  int iterations = 0;
  bool converged = false;

  explicit MuResult(const Mesh1D &mesh) : Phi(mesh) {}
};

// inf over v >= 0 of (int H(v')^p + kappa-term - lambda int m |v|^p) / int |v|^p.
MuResult mu_plus(double lambda, const Weight &m, const BoundaryCondition &bc,
                 const AnisotropyH &h, const EigenOptions &opts = {});

// max_j |r_j| with r_j = sum_c h flux(u'_c) phi_j' + boundary terms - lambda (mass terms),
// tested against every nodal hat function (interior ones only for Dirichlet).
double residual_weak_form(const GridFunction &u, double lambda, const Weight &m,
                          const BoundaryCondition &bc, const AnisotropyH &h);

}  // namespace anisopt

#endif  // ANISOPT_EIGEN_HPP

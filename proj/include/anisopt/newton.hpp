// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_NEWTON_HPP
#define ANISOPT_NEWTON_HPP

#include <functional>
#include <span>
#include <vector>
#include "anisopt/tridiag.hpp"

namespace anisopt
{

// Smooth objective on R^N whose Hessian (or a model of it) is tridiagonal.
struct TridiagObjective
{
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  // Overwrites A with the curvature model at u. It need not be positive definite.
  std::function<void(std::span<const double>, SymTridiag &)> hessian;
};

struct NewtonOptions
{
  double gtol = 1e-12;  // on the max-norm of the projected gradient
  int max_iters = 200;
  // Also stop once an accepted step moves no entry by more than xtol * max|u| (the gradient
  // may stall at its rounding floor first).
  double xtol = 0.0;
};

struct NewtonReport
{
  int iterations = 0;
  bool converged = false;
  double value = 0.0;
  double projected_gradient = 0.0;
};

// Projected Newton method with an Armijo search along the projection arc. Entries with
// fixed[j] != 0 never move; lower/upper may be empty (no bound). Bound-active entries whose
// gradient points outward are frozen for the step. An indefinite curvature model is shifted
// until it factors.
NewtonReport minimize_newton(const TridiagObjective &f, std::vector<double> &u,
                             const std::vector<char> &fixed, std::span<const double> lower,
                             std::span<const double> upper, const NewtonOptions &opts);

}  // namespace anisopt

#endif  // ANISOPT_NEWTON_HPP

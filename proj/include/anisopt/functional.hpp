// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_FUNCTIONAL_HPP
#define ANISOPT_FUNCTIONAL_HPP

#include <span>
#include "anisopt/anisotropy.hpp"
#include "anisopt/mesh.hpp"
#include "anisopt/tridiag.hpp"

// Discrete building blocks shared by the eigenvalue and logistic solvers. Functions act on
// nodal vectors of length n+1. Gradients are those of the functional divided by its
// homogeneity degree, so that they coincide with the weak forms tested against the nodal
// hat functions.
namespace anisopt::discrete
{

// sum_c h H(u'_c)^p, plus kappa (|u_0|^p + |u_n|^p) for Robin conditions.
double stiffness(const Mesh1D &mesh, const AnisotropyH &h, const BoundaryCondition &bc,
                 std::span<const double> u);

// g += scale * grad(stiffness / p); entry j is sum_c h flux(u'_c) phi_j'(c) + boundary terms.
void add_stiffness_gradient(const Mesh1D &mesh, const AnisotropyH &h,
                            const BoundaryCondition &bc, std::span<const double> u,
                            double scale, std::span<double> g);

// A += scale * Hess(stiffness / p), with |s| replaced by sqrt(s^2 + eps^2) in the
// curvature |s|^{p-2} so the model stays finite (p < 2) and nondegenerate (p > 2).
void add_stiffness_hessian(const Mesh1D &mesh, const AnisotropyH &h,
                           const BoundaryCondition &bc, std::span<const double> u, double scale,
                           double eps, SymTridiag &A);

// sum_c h w_c |(u_c + u_{c+1})/2|^r.
double mass(const Mesh1D &mesh, std::span<const double> w, double r,
            std::span<const double> u);

// g += scale * grad(mass / r).
void add_mass_gradient(const Mesh1D &mesh, std::span<const double> w, double r,
                       std::span<const double> u, double scale, std::span<double> g);

// A += scale * Hess(mass / r), regularized like add_stiffness_hessian.
void add_mass_hessian(const Mesh1D &mesh, std::span<const double> w, double r,
                      std::span<const double> u, double scale, double eps, SymTridiag &A);

}  // namespace anisopt::discrete

#endif  // ANISOPT_FUNCTIONAL_HPP

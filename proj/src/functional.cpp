// SPDX-License-Identifier: Apache-2.0

#include "anisopt/functional.hpp"

#include <cmath>

namespace anisopt::discrete
{

namespace
{

double signed_power(double x, double e)
{
  return x >= 0.0 ? std::pow(x, e) : -std::pow(-x, e);
}

double regularized_power(double x, double e, double eps)
{
  if (eps == 0.0)
  {
    return std::pow(std::abs(x), e);
  }
  return std::pow(x * x + eps * eps, 0.5 * e);
}

}  // namespace

double stiffness(const Mesh1D &mesh, const AnisotropyH &h, const BoundaryCondition &bc,
                 std::span<const double> u)
{
  const int n = mesh.n();
  const double dx = mesh.h();
  double sum = 0.0;
  for (int c = 0; c < n; c++)
  {
    sum += energy_density(h, (u[c + 1] - u[c]) / dx);
  }
  sum *= dx;
  if (bc.kind == BoundaryKind::Robin)
  {
    sum += bc.kappa * (std::pow(std::abs(u[0]), h.p()) + std::pow(std::abs(u[n]), h.p()));
  }
  return sum;
}

void add_stiffness_gradient(const Mesh1D &mesh, const AnisotropyH &h,
                            const BoundaryCondition &bc, std::span<const double> u,
                            double scale, std::span<double> g)
{
  const int n = mesh.n();
  const double dx = mesh.h();
  for (int c = 0; c < n; c++)
  {
    const double f = scale * flux(h, (u[c + 1] - u[c]) / dx);
    g[c] -= f;
    g[c + 1] += f;
  }
  if (bc.kind == BoundaryKind::Robin)
  {
    g[0] += scale * bc.kappa * signed_power(u[0], h.p() - 1.0);
    g[n] += scale * bc.kappa * signed_power(u[n], h.p() - 1.0);
  }
}

void add_stiffness_hessian(const Mesh1D &mesh, const AnisotropyH &h,
                           const BoundaryCondition &bc, std::span<const double> u, double scale,
                           double eps, SymTridiag &A)
{
  const int n = mesh.n();
  const double dx = mesh.h();
  const double p = h.p();
  const double ap = energy_density(h, 1.0), bp = energy_density(h, -1.0);
  for (int c = 0; c < n; c++)
  {
    const double s = (u[c + 1] - u[c]) / dx;
    const double k = scale * (p - 1.0) * (s >= 0.0 ? ap : bp) * regularized_power(s, p - 2.0, eps) / dx;
    A.diag[c] += k;
    A.diag[c + 1] += k;
    A.off[c] -= k;
  }
  if (bc.kind == BoundaryKind::Robin)
  {
    A.diag[0] += scale * bc.kappa * (p - 1.0) * regularized_power(u[0], p - 2.0, eps);
    A.diag[n] += scale * bc.kappa * (p - 1.0) * regularized_power(u[n], p - 2.0, eps);
  }
}

double mass(const Mesh1D &mesh, std::span<const double> w, double r,
            std::span<const double> u)
{
  const int n = mesh.n();
  double sum = 0.0;
  for (int c = 0; c < n; c++)
  {
    if (w[c] != 0.0)
    {
      sum += w[c] * std::pow(std::abs(0.5 * (u[c] + u[c + 1])), r);
    }
  }
  return mesh.h() * sum;
}

void add_mass_gradient(const Mesh1D &mesh, std::span<const double> w, double r,
                       std::span<const double> u, double scale, std::span<double> g)
{
  const int n = mesh.n();
  const double half = 0.5 * mesh.h() * scale;
  for (int c = 0; c < n; c++)
  {
    if (w[c] == 0.0)
    {
      continue;
    }
    const double v = half * w[c] * signed_power(0.5 * (u[c] + u[c + 1]), r - 1.0);
    g[c] += v;
    g[c + 1] += v;
  }
}

void add_mass_hessian(const Mesh1D &mesh, std::span<const double> w, double r,
                      std::span<const double> u, double scale, double eps, SymTridiag &A)
{
  const int n = mesh.n();
  const double quarter = 0.25 * mesh.h() * scale * (r - 1.0);
  for (int c = 0; c < n; c++)
  {
    if (w[c] == 0.0)
    {
      continue;
    }
    const double k = quarter * w[c] * regularized_power(0.5 * (u[c] + u[c + 1]), r - 2.0, eps);
    A.diag[c] += k;
    A.diag[c + 1] += k;
    A.off[c] += k;
  }
}

}  // namespace anisopt::discrete

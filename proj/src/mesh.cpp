// SPDX-License-Identifier: Apache-2.0

#include "anisopt/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include "anisopt/weight.hpp"

namespace anisopt
{

Mesh1D::Mesh1D(int n) : n_(n), h_(0.0)
{
  if (n < 4)
  {
    throw std::invalid_argument("mesh needs at least 4 cells (n=" + std::to_string(n) + ")");
  }
  h_ = 1.0 / n;
  nodes_.resize(n + 1);
  for (int i = 0; i <= n; i++)
  {
    nodes_[i] = static_cast<double>(i) / n;
  }
}

GridFunction::GridFunction(const Mesh1D &mesh, double fill)
  : mesh(mesh), values(mesh.n() + 1, fill)
{
}

GridFunction::GridFunction(const Mesh1D &mesh, std::vector<double> values)
  : mesh(mesh), values(std::move(values))
{
  if (static_cast<int>(this->values.size()) != mesh.n() + 1)
  {
    throw std::invalid_argument("grid function needs n+1 nodal values");
  }
  for (double v : this->values)
  {
    if (!std::isfinite(v))
    {
      throw std::invalid_argument("grid function values must be finite");
    }
  }
}

double GridFunction::sup_norm() const
{
  double s = 0.0;
  for (double v : values)
  {
    s = std::max(s, std::abs(v));
  }
  return s;
}

BoundaryCondition BoundaryCondition::robin(double kappa)
{
  if (!(kappa > 0.0) || !std::isfinite(kappa))
  {
    throw std::invalid_argument("Robin coefficient must be positive and finite");
  }
  return {BoundaryKind::Robin, kappa};
}

BoundaryCondition BoundaryCondition::parse(const std::string &text)
{
  if (text == "neumann")
  {
    return neumann();
  }
  if (text == "dirichlet")
  {
    return dirichlet();
  }
  if (text.rfind("robin:", 0) == 0)
  {
    std::size_t used = 0;
    const std::string num = text.substr(6);
    double kappa = 0.0;
    try
    {
      kappa = std::stod(num, &used);
    }
    catch (const std::exception &)
    {
      used = 0;
    }
    if (used == 0 || used != num.size())
    {
      throw std::invalid_argument("malformed Robin coefficient in '" + text + "'");
    }
    return robin(kappa);
  }
  throw std::invalid_argument("unknown boundary condition '" + text +
                              "' (expected neumann, robin:K or dirichlet)");
}

std::string BoundaryCondition::to_string() const
{
  switch (kind)
  {
    case BoundaryKind::Neumann:
      return "neumann";
    case BoundaryKind::Dirichlet:
      return "dirichlet";
    case BoundaryKind::Robin:
    {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "robin:%.17g", kappa);
      return buf;
    }
  }
  return "neumann";
}

std::vector<double> cell_derivative(const GridFunction &u)
{
  const int n = u.mesh.n();
  std::vector<double> d(n);
  for (int c = 0; c < n; c++)
  {
    d[c] = (u.values[c + 1] - u.values[c]) / u.mesh.h();
  }
  return d;
}

double integrate_cells(const Mesh1D &mesh, std::span<const double> w)
{
  if (static_cast<int>(w.size()) != mesh.n())
  {
    throw std::invalid_argument("cell array length must equal the number of cells");
  }
  double sum = 0.0;
  for (double v : w)
  {
    sum += v;
  }
  return mesh.h() * sum;
}

double integrate_p_mass(const GridFunction &u, const Weight &m, double p)
{
  if (!(u.mesh == m.mesh()))
  {
    throw std::invalid_argument("weight and grid function live on different meshes");
  }
  const int n = u.mesh.n();
  double sum = 0.0;
  for (int c = 0; c < n; c++)
  {
    const double mid = 0.5 * (u.values[c] + u.values[c + 1]);
    sum += m.cells()[c] * std::pow(std::abs(mid), p);
  }
  return u.mesh.h() * sum;
}

double boundary_trace_term(const GridFunction &u, const BoundaryCondition &bc, double p)
{
  if (bc.is_dirichlet())
  {
    throw std::invalid_argument(
        "Dirichlet conditions are enforced as u_0 = u_n = 0, not as a boundary penalty");
  }
  if (bc.kind == BoundaryKind::Neumann)
  {
    return 0.0;
  }
  return bc.kappa *
         (std::pow(std::abs(u.values.front()), p) + std::pow(std::abs(u.values.back()), p));
}

}  // namespace anisopt

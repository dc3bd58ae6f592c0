// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_MESH_HPP
#define ANISOPT_MESH_HPP

#include <span>
#include <string>
#include <vector>

namespace anisopt
{

class Weight;

// Uniform partition of (0,1) into n cells of width h = 1/n.
class Mesh1D
{
public:
  explicit Mesh1D(int n);

  int n() const { return n_; }
  double h() const { return h_; }
  const std::vector<double> &nodes() const { return nodes_; }
  double node(int i) const { return nodes_[i]; }
  double midpoint(int c) const { return (c + 0.5) * h_; }

  bool operator==(const Mesh1D &other) const { return n_ == other.n_; }

private:
  int n_;
  double h_;
  std::vector<double> nodes_;
};

// Nodal values of a continuous piecewise-affine function on a Mesh1D.
struct GridFunction
{
  Mesh1D mesh;
  std::vector<double> values;

  explicit GridFunction(const Mesh1D &mesh, double fill = 0.0);
  GridFunction(const Mesh1D &mesh, std::vector<double> values);

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[i]; }
  double &operator[](int i) { return values[i]; }
  double sup_norm() const;
};

enum class BoundaryKind
{
  Neumann,
  Robin,
  Dirichlet
};

// Robin with kappa > 0; Neumann is kappa = 0 and Dirichlet the kappa = infinity limit,
// imposed as u_0 = u_n = 0.
struct BoundaryCondition
{
  BoundaryKind kind = BoundaryKind::Neumann;
  double kappa = 0.0;

  static BoundaryCondition neumann() { return {BoundaryKind::Neumann, 0.0}; }
  static BoundaryCondition robin(double kappa);
  static BoundaryCondition dirichlet() { return {BoundaryKind::Dirichlet, 0.0}; }

  bool is_dirichlet() const { return kind == BoundaryKind::Dirichlet; }

  // "neumann", "dirichlet" or "robin:K".
  static BoundaryCondition parse(const std::string &text);
  std::string to_string() const;

  bool operator==(const BoundaryCondition &) const = default;
};

// (u_{i+1} - u_i) / h for each cell.
std::vector<double> cell_derivative(const GridFunction &u);

double integrate_cells(const Mesh1D &mesh, std::span<const double> w);

// sum_c h m_c |(u_c + u_{c+1})/2|^p.
double integrate_p_mass(const GridFunction &u, const Weight &m, double p);

// kappa (|u_0|^p + |u_n|^p). Dirichlet conditions are constraints, not penalties, and are
// rejected here.
double boundary_trace_term(const GridFunction &u, const BoundaryCondition &bc, double p);

}  // namespace anisopt

#endif  // ANISOPT_MESH_HPP

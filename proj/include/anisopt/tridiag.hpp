// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_TRIDIAG_HPP
#define ANISOPT_TRIDIAG_HPP

#include <span>
#include <vector>

namespace anisopt
{

// Symmetric tridiagonal matrix: diag[i] = A(i,i), off[i] = A(i,i+1) = A(i+1,i).
struct SymTridiag
{
  std::vector<double> diag;
  std::vector<double> off;

  explicit SymTridiag(int size = 0) : diag(size, 0.0), off(size > 0 ? size - 1 : 0, 0.0) {}

  int size() const { return static_cast<int>(diag.size()); }
  void set_zero();

  // y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;

  // Solves A x = rhs in place by an LDL^T factorization. Returns false, leaving rhs
  // unspecified, when a pivot is not positive (the matrix is not positive definite).
  bool solve_spd(std::span<double> rhs) const;
};

}  // namespace anisopt

#endif  // ANISOPT_TRIDIAG_HPP

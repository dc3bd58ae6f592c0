// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_DENSE_HPP
#define ANISOPT_DENSE_HPP

#include <vector>

namespace anisopt::dense
{

// Row-major square matrix.
struct Matrix
{
  int n = 0;
  std::vector<double> a;

  explicit Matrix(int n) : n(n), a(static_cast<std::size_t>(n) * n, 0.0) {}
  double &operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

struct SymmetricEigen
{
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
};

// Cyclic Jacobi rotations; meant for small matrices.
SymmetricEigen jacobi_eigen(Matrix A);

struct PencilMode
{
  double lambda = 0.0;
  std::vector<double> vector;
};

// Generalized problem K v = lambda M v with K symmetric positive definite and M symmetric
// (possibly indefinite). Returns the smallest positive lambda and its eigenvector.
PencilMode smallest_positive_pencil_mode(const Matrix &K, const Matrix &M);

}  // namespace anisopt::dense

#endif  // ANISOPT_DENSE_HPP

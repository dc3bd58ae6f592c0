// SPDX-License-Identifier: Apache-2.0

#include "anisopt/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace anisopt::dense
{

SymmetricEigen jacobi_eigen(Matrix A)
{
  const int n = A.n;
  Matrix V(n);
  for (int i = 0; i < n; i++)
  {
    V(i, i) = 1.0;
  }
  for (int sweep = 0; sweep < 100; sweep++)
  {
    double off = 0.0, total = 0.0;
    for (int i = 0; i < n; i++)
    {
      for (int j = 0; j < n; j++)
      {
        total += A(i, j) * A(i, j);
        if (i != j)
        {
          off += A(i, j) * A(i, j);
        }
      }
    }
    if (off <= 1e-30 * total)
    {
      break;
    }
    for (int p = 0; p < n - 1; p++)
    {
      for (int q = p + 1; q < n; q++)
      {
        if (A(p, q) == 0.0)
        {
          continue;
        }
        const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; k++)
        {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; k++)
        {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; k++)
        {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return A(i, i) < A(j, j); });
  SymmetricEigen out{std::vector<double>(n), Matrix(n)};
  for (int k = 0; k < n; k++)
  {
    out.values[k] = A(order[k], order[k]);
    for (int i = 0; i < n; i++)
    {
      out.vectors(i, k) = V(i, order[k]);
    }
  }
  return out;
}

PencilMode smallest_positive_pencil_mode(const Matrix &K, const Matrix &M)
{
  const int n = K.n;
  // K = L L^T.
  Matrix L(n);
  for (int j = 0; j < n; j++)
  {
    double d = K(j, j);
    for (int k = 0; k < j; k++)
    {
      d -= L(j, k) * L(j, k);
    }
    if (!(d > 0.0))
    {
      throw std::invalid_argument("pencil: K is not positive definite");
    }
    L(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; i++)
    {
      double s = K(i, j);
      for (int k = 0; k < j; k++)
      {
        s -= L(i, k) * L(j, k);
      }
      L(i, j) = s / L(j, j);
    }
  }
  // C = L^{-1} M L^{-T}; M v = nu K v becomes C y = nu y with v = L^{-T} y, lambda = 1/nu.
  Matrix X(n);
  for (int c = 0; c < n; c++)
  {
    for (int i = 0; i < n; i++)
    {
      double s = M(i, c);
      for (int k = 0; k < i; k++)
      {
        s -= L(i, k) * X(k, c);
      }
      X(i, c) = s / L(i, i);
    }
  }
  Matrix C(n);
  for (int r = 0; r < n; r++)
  {
    for (int i = 0; i < n; i++)
    {
      double s = X(r, i);
      for (int k = 0; k < i; k++)
      {
        s -= L(i, k) * C(r, k);
      }
      C(r, i) = s / L(i, i);
    }
  }
  for (int i = 0; i < n; i++)
  {
    for (int j = i + 1; j < n; j++)
    {
      const double s = 0.5 * (C(i, j) + C(j, i));
      C(i, j) = C(j, i) = s;
    }
  }
  const SymmetricEigen eig = jacobi_eigen(C);
  const double nu = eig.values.back();
  if (!(nu > 0.0))
  {
    throw std::invalid_argument("pencil has no positive eigenvalue");
  }
  PencilMode out{1.0 / nu, std::vector<double>(n)};
  for (int i = n; i-- > 0;)
  {
    double s = eig.vectors(i, n - 1);
    for (int k = i + 1; k < n; k++)
    {
      s -= L(k, i) * out.vector[k];
    }
    out.vector[i] = s / L(i, i);
  }
  return out;
}

}  // namespace anisopt::dense

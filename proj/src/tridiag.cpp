// SPDX-License-Identifier: Apache-2.0

#include "anisopt/tridiag.hpp"

#include <algorithm>
#include <cmath>

namespace anisopt
{

void SymTridiag::set_zero()
{
  std::fill(diag.begin(), diag.end(), 0.0);
  std::fill(off.begin(), off.end(), 0.0);
}

void SymTridiag::multiply(std::span<const double> x, std::span<double> y) const
{
  const int n = size();
  for (int i = 0; i < n; i++)
  {
    double s = diag[i] * x[i];
    if (i > 0)
    {
      s += off[i - 1] * x[i - 1];
    }
    if (i + 1 < n)
    {
      s += off[i] * x[i + 1];
    }
    y[i] = s;
  }
}

bool SymTridiag::solve_spd(std::span<double> rhs) const
{
  const int n = size();
  if (n == 0)
  {
    return true;
  }
  double scale = 0.0;
  for (double d : diag)
  {
    scale = std::max(scale, std::abs(d));
  }
  const double floor = 1e-300 + 1e-15 * scale;
  std::vector<double> d(n), l(n > 0 ? n - 1 : 0);
  d[0] = diag[0];
  if (!(d[0] > floor))
  {
    return false;
  }
  for (int i = 1; i < n; i++)
  {
    l[i - 1] = off[i - 1] / d[i - 1];
    d[i] = diag[i] - l[i - 1] * off[i - 1];
    if (!(d[i] > floor))
    {
      return false;
    }
  }
  for (int i = 1; i < n; i++)
  {
    rhs[i] -= l[i - 1] * rhs[i - 1];
  }
  for (int i = 0; i < n; i++)
  {
    rhs[i] /= d[i];
  }
  for (int i = n - 2; i >= 0; i--)
  {
    rhs[i] -= l[i] * rhs[i + 1];
  }
  return true;
}

}  // namespace anisopt

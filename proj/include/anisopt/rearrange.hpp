// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_REARRANGE_HPP
#define ANISOPT_REARRANGE_HPP

#include <vector>
#include "anisopt/anisotropy.hpp"
#include "anisopt/mesh.hpp"

namespace anisopt
{

// Continuous piecewise-affine function on (domain_left, domain_right), given by its knots.
// Knots are not equispaced in general: a rearrangement of a piecewise-affine function is
// again piecewise affine, with breaks wherever a level of the source hits a node.
struct RearrangedFunction
{
  double domain_left = 0.0;
  double domain_right = 1.0;
  std::vector<double> x;
  std::vector<double> values;

  double length() const { return domain_right - domain_left; }
  double operator()(double at) const;
  double max() const;
  // |{f > t}|, exact.
  double distribution(double t) const;
  // sum over knot intervals of dx H(dv/dx)^p, exact for piecewise-affine functions.
  double energy(const AnisotropyH &h) const;
  // Values at n+1 equispaced points of the domain.
  std::vector<double> resample(int n) const;
};

enum class Direction
{
  Increasing,
  Decreasing
};

// |{x in (0,1) : u(x) > t}| for the piecewise-affine interpolant of u.
double distribution_function(const GridFunction &u, double t);

// sum_c h H(u'_c)^p.
double energy(const GridFunction &u, const AnisotropyH &h);

// u_* (decreasing) or u^* (increasing), placed on (left, left + 1). Requires u >= 0.
RearrangedFunction monotone_rearrangement(const GridFunction &u, Direction dir,
                                          double left = 0.0);

// Super-level sets become the anisotropic balls (-a/(a+b) s, b/(a+b) s), s = |{u > t}|.
// Requires u >= 0 vanishing at both endpoints.
RearrangedFunction anisotropic_rearrangement(const GridFunction &u, const AnisotropyH &h);

// -(-v) rearranged anisotropically under reflect(h); lives on (-b/(a+b), a/(a+b)).
// Requires v <= 0 vanishing at both endpoints.
RearrangedFunction negative_rearrangement(const GridFunction &v, const AnisotropyH &h);

struct PolyaReport
{
  double lhs = 0.0;
  double rhs = 0.0;
  bool equality = false;       // |lhs - rhs| <= 1e-10 lhs
  double shift_error = 0.0;    // max nodal |u(x + shift) - rearranged(x)|
  bool shift_identity = false; // shift_error <= 1e-8
};

// Energy of u against that of its decreasing rearrangement. On equality the identity
// u = u_* is checked nodally.
PolyaReport polya_monotone_check(const GridFunction &u, const AnisotropyH &h);

// Energy of u against that of u★. On equality the identity u(x + a/(a+b)) = u★(x) is
// checked nodally.
PolyaReport polya_anisotropic_check(const GridFunction &u, const AnisotropyH &h);

// Same for v <= 0 and v#, with shift b/(a+b).
PolyaReport polya_negative_check(const GridFunction &v, const AnisotropyH &h);

// Number of sign changes of the cell slopes, ignoring flat cells.
int slope_sign_changes(const GridFunction &u);

}  // namespace anisopt

#endif  // ANISOPT_REARRANGE_HPP

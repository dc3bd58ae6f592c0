// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_ANISOTROPY_HPP
#define ANISOPT_ANISOTROPY_HPP

namespace anisopt
{

// One-dimensional positively homogeneous norm H(s) = a s for s >= 0 and -b s for s < 0,
// together with the exponent p of the associated anisotropic p-Laplacian. H is even only
// when a == b.
class AnisotropyH
{
public:
  AnisotropyH(double a, double b, double p);

  double a() const { return a_; }
  double b() const { return b_; }
  double p() const { return p_; }

  // Growth constants: min(a,b)|s| <= H(s) <= max(a,b)|s|.
  double alpha_lower() const;
  double alpha_upper() const;

  bool operator==(const AnisotropyH &) const = default;

private:
  double a_, b_, p_;
};

double eval(const AnisotropyH &h, double s);

// Polar function H0(x) = sup_t t x / H(t).
double polar_eval(const AnisotropyH &h, double x);

// H~(s) = H(-s): swaps the two slopes.
AnisotropyH reflect(const AnisotropyH &h);

// (1/p) d/ds H(s)^p, continuous at 0 since p > 1.
double flux(const AnisotropyH &h, double s);

double energy_density(const AnisotropyH &h, double s);

}  // namespace anisopt

#endif  // ANISOPT_ANISOTROPY_HPP

// SPDX-License-Identifier: Apache-2.0

#include "anisopt/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace anisopt
{

AnisotropyH::AnisotropyH(double a, double b, double p) : a_(a), b_(b), p_(p)
{
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
  {
    throw std::invalid_argument("anisotropy slopes must be positive and finite (a=" +
                                std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }
  if (!(p > 1.0) || !std::isfinite(p))
  {
    throw std::invalid_argument("anisotropy exponent must satisfy p > 1 (p=" +
                                std::to_string(p) + ")");
  }
}

double AnisotropyH::alpha_lower() const
{
  return std::min(a_, b_);
}

double AnisotropyH::alpha_upper() const
{
  return std::max(a_, b_);
}

double eval(const AnisotropyH &h, double s)
{
#ifdef ANISOPT_MUTATE_SIGN
  // Mutation build for the verification smoke test: ignores the sign branch.
  return h.a() * std::abs(s);
#else
  return s >= 0.0 ? h.a() * s : -h.b() * s;
#endif
}

double polar_eval(const AnisotropyH &h, double x)
{
  return x >= 0.0 ? x / h.a() : -x / h.b();
}

AnisotropyH reflect(const AnisotropyH &h)
{
  return AnisotropyH(h.b(), h.a(), h.p());
}

double flux(const AnisotropyH &h, double s)
{
  if (s == 0.0)
  {
    return 0.0;
  }
  const double p = h.p();
#ifdef ANISOPT_MUTATE_SIGN
  return std::pow(h.a(), p) * std::pow(std::abs(s), p - 1.0) * (s > 0.0 ? 1.0 : -1.0);
#else
  if (s > 0.0)
  {
    return std::pow(h.a(), p) * std::pow(s, p - 1.0);
  }
  return -std::pow(h.b(), p) * std::pow(-s, p - 1.0);
#endif
}

double energy_density(const AnisotropyH &h, double s)
{
  return std::pow(eval(h, s), h.p());
}

}  // namespace anisopt

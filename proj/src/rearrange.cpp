// SPDX-License-Identifier: Apache-2.0

#include "anisopt/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>

namespace anisopt
{

namespace
{

// Measure of {f > t} (strict) or {f >= t} on one affine piece of width dx.
double piece_measure(double dx, double f0, double f1, double t, bool closed)
{
  if (f0 == f1)
  {
    return (f0 > t || (closed && f0 == t)) ? dx : 0.0;
  }
  const double lo = std::min(f0, f1), hi = std::max(f0, f1);
  if (t >= hi)
  {
    return 0.0;
  }
  if (t < lo)
  {
    return dx;
  }
  return dx * (hi - t) / (hi - lo);
}

double measure(std::span<const double> x, std::span<const double> f, double t, bool closed)
{
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); i++)
  {
    total += piece_measure(x[i + 1] - x[i], f[i], f[i + 1], t, closed);
  }
  return total;
}

void require_nonnegative(const std::vector<double> &v, const char *what)
{
  for (double s : v)
  {
    if (s < 0.0)
    {
      throw std::invalid_argument(std::string(what) + ": function must be nonnegative");
    }
  }
}

void require_vanishing_ends(const GridFunction &u, const char *what)
{
  if (u.values.front() != 0.0 || u.values.back() != 0.0)
  {
    throw std::invalid_argument(std::string(what) + ": function must vanish at both endpoints");
  }
}

// Knots of the decreasing rearrangement on (0, 1). Between two consecutive distinct nodal
// levels no node is crossed, so the distribution function is affine there and u_* is
// affine on the corresponding x-interval; a plateau at level v occupies
// [|{u > v}|, |{u >= v}|].
RearrangedFunction decreasing_knots(const GridFunction &u)
{
  const auto &x = u.mesh.nodes();
  std::vector<double> levels = u.values;
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  RearrangedFunction out;
  for (std::size_t k = 0; k < levels.size(); k++)
  {
    const double v = levels[k];
    const double open = k == 0 ? 0.0 : measure(x, u.values, v, false);
    const double closed = k + 1 == levels.size() ? 1.0 : measure(x, u.values, v, true);
    out.x.push_back(open);
    out.values.push_back(v);
    if (closed > open)
    {
      out.x.push_back(closed);
      out.values.push_back(v);
    }
  }
  out.x.front() = 0.0;
  out.x.back() = 1.0;
  return out;
}

PolyaReport compare(const GridFunction &u, const AnisotropyH &h, const RearrangedFunction &r,
                    double shift)
{
  PolyaReport rep;
  rep.lhs = energy(u, h);
  rep.rhs = r.energy(h);
  rep.equality = std::abs(rep.lhs - rep.rhs) <= 1e-10 * rep.lhs;
  if (rep.equality)
  {
    for (int i = 0; i <= u.mesh.n(); i++)
    {
      const double at = std::clamp(u.mesh.node(i) - shift, r.domain_left, r.domain_right);
      rep.shift_error = std::max(rep.shift_error, std::abs(u[i] - r(at)));
    }
    rep.shift_identity = rep.shift_error <= 1e-8;
  }
  return rep;
}

}  // namespace

double RearrangedFunction::operator()(double at) const
{
  if (at <= x.front())
  {
    return values.front();
  }
  if (at >= x.back())
  {
    return values.back();
  }
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t i = (it - x.begin()) - 1;
  const double dx = x[i + 1] - x[i];
  if (dx <= 0.0)
  {
    return values[i + 1];
  }
  const double s = (at - x[i]) / dx;
  return (1.0 - s) * values[i] + s * values[i + 1];
}

double RearrangedFunction::max() const
{
  return *std::max_element(values.begin(), values.end());
}

double RearrangedFunction::distribution(double t) const
{
  return measure(x, values, t, false);
}

double RearrangedFunction::energy(const AnisotropyH &h) const
{
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); i++)
  {
    const double dx = x[i + 1] - x[i];
    if (dx > 0.0)
    {
      total += dx * energy_density(h, (values[i + 1] - values[i]) / dx);
    }
  }
  return total;
}

std::vector<double> RearrangedFunction::resample(int n) const
{
  if (n < 1)
  {
    throw std::invalid_argument("resample needs n >= 1");
  }
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; i++)
  {
    out[i] = (*this)(domain_left + length() * i / n);
  }
  return out;
}

double distribution_function(const GridFunction &u, double t)
{
  return measure(u.mesh.nodes(), u.values, t, false);
}

double energy(const GridFunction &u, const AnisotropyH &h)
{
  double total = 0.0;
  for (double s : cell_derivative(u))
  {
    total += u.mesh.h() * energy_density(h, s);
  }
  return total;
}

RearrangedFunction monotone_rearrangement(const GridFunction &u, Direction dir, double left)
{
  require_nonnegative(u.values, "monotone rearrangement");
  RearrangedFunction r = decreasing_knots(u);
  if (dir == Direction::Increasing)
  {
    std::reverse(r.x.begin(), r.x.end());
    std::reverse(r.values.begin(), r.values.end());
    for (double &s : r.x)
    {
      s = 1.0 - s;
    }
  }
  for (double &s : r.x)
  {
    s += left;
  }
  r.domain_left = left;
  r.domain_right = left + 1.0;
  return r;
}

RearrangedFunction anisotropic_rearrangement(const GridFunction &u, const AnisotropyH &h)
{
  require_nonnegative(u.values, "anisotropic rearrangement");
  require_vanishing_ends(u, "anisotropic rearrangement");
  const RearrangedFunction dec = decreasing_knots(u);
  const double left = h.a() / (h.a() + h.b());
  const double right = h.b() / (h.a() + h.b());

  RearrangedFunction r;
  r.domain_left = -left;
  r.domain_right = right;
  for (std::size_t k = dec.x.size(); k-- > 1;)
  {
    r.x.push_back(-left * dec.x[k]);
    r.values.push_back(dec.values[k]);
  }
  // The top knot (at 0) is shared by both halves.
  for (std::size_t k = 0; k < dec.x.size(); k++)
  {
    r.x.push_back(right * dec.x[k]);
    r.values.push_back(dec.values[k]);
  }
  r.x.front() = -left;
  r.x.back() = right;
  return r;
}

RearrangedFunction negative_rearrangement(const GridFunction &v, const AnisotropyH &h)
{
  GridFunction u(v.mesh);
  for (int i = 0; i <= v.mesh.n(); i++)
  {
    if (v[i] > 0.0)
    {
      throw std::invalid_argument("negative rearrangement: function must be nonpositive");
    }
    u[i] = -v[i];
  }
  RearrangedFunction r = anisotropic_rearrangement(u, reflect(h));
  for (double &s : r.values)
  {
    s = -s;
  }
  return r;
}

PolyaReport polya_monotone_check(const GridFunction &u, const AnisotropyH &h)
{
  return compare(u, h, monotone_rearrangement(u, Direction::Decreasing), 0.0);
}

PolyaReport polya_anisotropic_check(const GridFunction &u, const AnisotropyH &h)
{
  return compare(u, h, anisotropic_rearrangement(u, h), h.a() / (h.a() + h.b()));
}

PolyaReport polya_negative_check(const GridFunction &v, const AnisotropyH &h)
{
  return compare(v, h, negative_rearrangement(v, h), h.b() / (h.a() + h.b()));
}

int slope_sign_changes(const GridFunction &u)
{
  int changes = 0, last = 0;
  for (double s : cell_derivative(u))
  {
    const int sign = (s > 0.0) - (s < 0.0);
    if (sign != 0)
    {
      if (last != 0 && sign != last)
      {
        changes++;
      }
      last = sign;
    }
  }
  return changes;
}

}  // namespace anisopt

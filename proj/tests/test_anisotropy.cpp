// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <stdexcept>
#include "anisopt/anisotropy.hpp"

using namespace anisopt;

TEST_CASE("anisotropy rejects invalid parameters")
{
  CHECK_THROWS_AS(AnisotropyH(0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(AnisotropyH(1, -1, 2), std::invalid_argument);
  CHECK_THROWS_AS(AnisotropyH(1, 1, 1), std::invalid_argument);
  CHECK_NOTHROW(AnisotropyH(1, 1, 1.01));
}

TEST_CASE("eval uses the slope of the sign")
{
  CHECK(eval(AnisotropyH(2, 1, 2), 0.0) == 0.0);
  CHECK(eval(AnisotropyH(2, 3, 2), 1.5) == doctest::Approx(3.0));
  CHECK(eval(AnisotropyH(2, 3, 2), -2.0) == doctest::Approx(6.0));
}

TEST_CASE("polar function")
{
  const AnisotropyH h(2, 3, 2);
  CHECK(polar_eval(h, 1.0) == doctest::Approx(0.5));
  CHECK(polar_eval(h, -1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(polar_eval(h, 0.0) == 0.0);
}

TEST_CASE("reflect swaps the slopes")
{
  CHECK(reflect(AnisotropyH(2, 1, 2)) == AnisotropyH(1, 2, 2));
  const AnisotropyH h(1.5, 4, 3);
  CHECK(reflect(reflect(h)) == h);
  CHECK(reflect(AnisotropyH(3, 3, 2)) == AnisotropyH(3, 3, 2));
}

TEST_CASE("flux values")
{
  const AnisotropyH h(2, 1, 2);
  CHECK(flux(h, 0.5) == doctest::Approx(2.0));
  CHECK(flux(h, -0.5) == doctest::Approx(-0.5));
  CHECK(flux(h, 0.0) == 0.0);
  CHECK(flux(AnisotropyH(2, 1, 1.5), 0.0) == 0.0);
}

TEST_CASE("energy density")
{
  CHECK(energy_density(AnisotropyH(2, 1, 2), 1.0) == doctest::Approx(4.0));
  CHECK(energy_density(AnisotropyH(2, 1, 2), -1.0) == doctest::Approx(1.0));
  CHECK(energy_density(AnisotropyH(1, 1, 3), -2.0) == doctest::Approx(8.0));
}

TEST_CASE("growth constants")
{
  const AnisotropyH h(2, 0.5, 2);
  CHECK(h.alpha_lower() == 0.5);
  CHECK(h.alpha_upper() == 2.0);
}

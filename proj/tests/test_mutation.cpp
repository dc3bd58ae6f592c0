// SPDX-License-Identifier: Apache-2.0

// Built against a library whose anisotropy ignores the sign of the slope. The verification
// battery must notice.

#include <doctest.h>
#include "anisopt/run.hpp"

using namespace anisopt;

TEST_CASE("broken anisotropy fails the rearrangement checks")
{
  CHECK_FALSE(verify_case("polya", VerifyLevel::Quick).pass);
}

TEST_CASE("broken anisotropy fails the localization check")
{
  CHECK_FALSE(verify_case("dirichlet-localization", VerifyLevel::Quick).pass);
}

#include <catch2/catch_amalgamated.hpp>

#include "chamber/beta.hpp"
#include "chamber/errors.hpp"

using namespace chamber;

namespace {
const Identity kAll[] = {Identity::H, Identity::J, Identity::L, Identity::I, Identity::K, Identity::K1};
}

TEST_CASE("identity names round-trip", "[identities]") {
  for (Identity id : kAll) CHECK(parse_identity(to_string(id)) == id);
  CHECK_THROWS_AS(parse_identity("Q"), InvalidArgument);
  CHECK(identity_min_m(Identity::H) == 2);
  CHECK(identity_min_m(Identity::L) == 2);
  CHECK(identity_min_m(Identity::I) == 3);
  CHECK(identity_min_m(Identity::K1) == 3);
}

TEST_CASE("identities hold exactly", "[identities]") {
  for (Identity id : kAll) {
    for (int m = identity_min_m(id); m <= 5; ++m) {
      INFO(to_string(id) << " m=" << m);
      const IdentityResult r = verify_identity(id, m);
      CHECK(r.equal);
      CHECK(r.lhs == r.rhs);
    }
  }
}

TEST_CASE("K1 vanishes", "[identities]") {
  for (int m = 3; m <= 5; ++m) CHECK(verify_identity(Identity::K1, m).lhs.is_zero());
}

TEST_CASE("H at m = 2", "[identities]") {
  // int l1 * l1 l2 |l1 - l2| e^{-l1 - 2 l2}, evaluated separately with sympy
  const IdentityResult r = verify_identity(Identity::H, 2);
  CHECK(r.lhs == PiScaledRational(Rational(29, 27)));
}

TEST_CASE("L at m = 2 picks up the collapsed delta term", "[identities]") {
  const IdentityResult r = verify_identity(Identity::L, 2);
  CHECK(r.lhs == r.rhs);
  CHECK(prime_t2(2) == PiScaledRational(Rational(8, 81)));
}

TEST_CASE("identities below their range are rejected", "[identities]") {
  CHECK_THROWS_AS(verify_identity(Identity::I, 2), UnsupportedParameters);
  CHECK_THROWS_AS(verify_identity(Identity::H, 1), UnsupportedParameters);
  ExactOptions small;
  small.max_dimension = 3;
  CHECK_THROWS_AS(verify_identity(Identity::H, 4, small), DimensionCapExceeded);
}

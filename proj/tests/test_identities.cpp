#include <doctest.h>

#include <algorithm>

#include "carnot/identities.hpp"

using namespace carnot;

namespace {

bool has(const IdentityReport& r, const std::string& name) {
  return std::any_of(r.checks.begin(), r.checks.end(), [&](const IdentityCheck& c) {
    return c.name == name && c.pass;
  });
}

}  // namespace

TEST_CASE("Goursat bracket identities") {
  for (int n = 3; n <= 6; ++n) {
    CAPTURE(n);
    IdentityReport r = verify_bracket_identities(build_group(GroupKind::Goursat, n));
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.residual);
      CHECK(c.pass);
    }
    CHECK(has(r, "He"));
    CHECK(has(r, "Hht"));
    CHECK(has(r, "ExpH"));
    if (n >= 4) CHECK(has(r, "Hh3"));
  }
}

TEST_CASE("Cartan bracket identities") {
  IdentityReport r = verify_bracket_identities(build_group(GroupKind::Cartan));
  CHECK(r.all_pass());
  for (const char* name : {"He", "Cht", "Ch3", "Ch4", "Ch5", "CHX|H=1/2"}) {
    CAPTURE(name);
    CHECK(has(r, name));
  }
}

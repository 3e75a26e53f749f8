#pragma once

#include <string>
#include <vector>

#include "carnot/frame_fields.hpp"

namespace carnot {

struct IdentityCheck {
  std::string name;     // short tag, e.g. "Hh3"
  std::string formula;  // human-readable statement
  bool pass = false;
  std::string residual;  // dump of lhs - rhs when the check fails
};

struct IdentityReport {
  std::string group;
  std::vector<IdentityCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Bracket identities between the Hamiltonian field and the lifted frame,
// checked as exact equalities of polynomial fields in canonical coordinates.
IdentityReport verify_bracket_identities(const GroupModel& model);

}  // namespace carnot

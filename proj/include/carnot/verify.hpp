#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "carnot/groups.hpp"

namespace carnot {

struct Tolerances {
  double lead = 1e-6;    // fitted leading coefficients, relative
  double lin = 1e-3;     // fitted linear coefficient against Omega r11, relative
  double probe = 0.05;   // cost probe against I / t^2, relative
  double cls = 1e-10;    // stratum boundaries
  double drift = 1e-8;   // integrator conserved-quantity drift
};

struct VerifyCheck {
  std::string name;
  std::string mode;  // "exact" or "float"
  std::string expected, actual;
  bool pass = false;
};

struct VerifyReport {
  std::string suite, group;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
  int passed() const;
};

// Random rational unit-speed covector at the base origin: (h1, h2) on the
// rational unit circle, the rest with numerators in [-9, 9] over [1, 9].
// The pole coordinate (h1 Goursat n >= 4, h3 Cartan) has |value| >= 1/9.
std::vector<mpq_class> random_rational_covector(const GroupModel& model, std::mt19937_64& rng);

// Exact suite: r11 oracle against the closed form, frame lemma and Darboux
// pairings on `count` random covectors, plus the bracket identities.
VerifyReport verify_exact(const GroupModel& model, std::uint64_t seed, int count = 50);
// Fit suite: leading and linear Laurent coefficients on `count` covectors.
VerifyReport verify_fit(const GroupModel& model, std::uint64_t seed, const Tolerances& tol,
                        int count = 5);
// Slow suite: cost-Hessian probe at t = 0.1 on h (default (1, 0, 1, 0, ...)).
VerifyReport verify_slow(const GroupModel& model, const std::vector<mpq_class>& h,
                         const Tolerances& tol);

std::string rational_string(const mpq_class& q);

}  // namespace carnot

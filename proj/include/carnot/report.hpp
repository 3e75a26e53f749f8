#pragma once

#include <json.hpp>

#include "carnot/cost_probe.hpp"
#include "carnot/curvature.hpp"
#include "carnot/elliptic.hpp"
#include "carnot/regularity.hpp"
#include "carnot/sflat_fit.hpp"
#include "carnot/verify.hpp"

namespace carnot {

using json = nlohmann::ordered_json;

// Exact rationals are written as decimal strings ("-4", "8/5"); callers add
// a parallel float field where one is useful.
json rational_json(const mpq_class& q);

json to_json(const GrowthReport& g);
json to_json(const PendulumChart& c);
json to_json(const CurvatureReport& r);
json to_json(const SflatFit& f);
json to_json(const CostProbe& p);
json to_json(const VerifyReport& r);

}  // namespace carnot

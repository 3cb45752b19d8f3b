#pragma once

// JSON views of the library types. These are the schemas the plotting
// scripts read; field names are part of the interface.

#include <json.hpp>

#include "dgh/period.hpp"
#include "dgh/profile.hpp"
#include "dgh/spectral.hpp"

namespace dgh {

using json = nlohmann::json;

json to_json(const ReducedParams& r);
json to_json(const PhysicalParams& p);
json to_json(const CubicRoots& c);
json to_json(const PeriodResult& p);
json to_json(const ChiconeWitness& w);
json to_json(const MonotonicityTable& t);
json to_json(const Profile& p);
json to_json(const ConservedQuantities& c);
json to_json(const InertiaCounts& c);
json to_json(const OrbitalCheck& o);
json to_json(const StabilityReport& s);

Profile profile_from_json(const json& j);

}  // namespace dgh

#pragma once

// JSON encodings of library values. Complex numbers are {"re", "im"} pairs;
// ring elements keep integer coordinates on (1, w).

#include <json.hpp>

#include "sczech/equidist.hpp"

namespace sczech {

using json = nlohmann::ordered_json;

json to_json_value(cplx z);
json to_json_value(QuadInt z);
json to_json_value(const FieldParams& f);
json to_json_value(const SL2Matrix& m);
json to_json_value(const IdealHNF& h);
json to_json_value(const DualLatticeBasis& b);
json to_json_value(const IdentityRecord& r);
json to_json_value(const ConventionSweep& s);
json to_json_value(const Theorem2Probe& p);
json to_json_value(const CountRecord& r);
json to_json_value(const WeylSumRecord& r);
json to_json_value(const EquidistPoint& p);
json to_json_value(const PhiTildeDistribution& d);

/// Serialises with 17 significant digits so doubles round-trip exactly.
std::string dump(const json& j);

}  // namespace sczech

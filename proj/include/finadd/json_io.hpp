#pragma once

#include "finadd/coherence.hpp"
#include "finadd/counting_set.hpp"
#include "finadd/distribution.hpp"
#include "finadd/event.hpp"
#include "finadd/limit_laws.hpp"

#include <json.hpp>

#include <string>

namespace finadd {

using Json = nlohmann::ordered_json;

// Exact values travel as "num/den" strings.
inline Json rat_json(const Rat& r) { return to_string(r); }
// Accepts "num/den" or decimal strings, and JSON integers.
Rat rat_from_json(const Json& j);

// {"atoms": m, "labels": [...], "assessments": [{"event": [...], "p": "num/den"}]}
// Event members are 0-based atom indices or labels.
Assessment assessment_from_json(const Json& doc);
Json assessment_to_json(const Assessment& a);
Event event_from_json(const AtomSpace& space, const Json& members);
Json event_to_json(const Event& e);

Json verdict_to_json(const Assessment& a, const CoherenceVerdict& v);

// {"finite": [..]} | {"cofinite": [..]} | {"progression": {"first": a, "step": d}}
// | {"blocks": [[a, b], ..]} | {"geometric": {"base": b, "period": p, "phase": s}}
// | {"union": [A, B, ..]} | {"intersection": [A, B, ..]} | {"complement": A}
CountingSet counting_set_from_json(const Json& doc);
Json counting_set_to_json(const CountingSet& s);

Json density_to_json(const DensityValue& d);

// {"minus_inf": .., "jumps": [{"at": .., "left": .., "right": ..}], "plus_inf": ..}
Json levels_to_json(const PiecewiseLevels& levels);
PiecewiseLevels levels_from_json(const Json& doc);

Json read_json_file(const std::string& path);

} // namespace finadd

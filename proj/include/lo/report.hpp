// JSON serialization of every result type.  Exact quantities (big integers,
// rationals) are emitted as decimal strings, never as JSON numbers; the only
// floating-point values in any report are quadrature outputs, which carry an
// explicit "approximate" flag at their use site.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lo/gap.hpp"
#include "lo/instances.hpp"
#include "lo/inverse.hpp"
#include "lo/oracle.hpp"
#include "lo/walk.hpp"

namespace lo {

using Json = nlohmann::ordered_json;

Json gap_to_json(const Gap& q);
Gap gap_from_json(const Json& j);

Json element_set_to_json(const ElementSet& e);
Json walk_distribution_to_json(const WalkDistribution& d);
Json concentration_to_json(const ConcentrationResult& r);
Json ratio_record_to_json(const RatioRecord& r);
Json trace_step_to_json(const TraceStep& s);
Json verification_to_json(const VerificationReport& rep);
Json inverse_result_to_json(const InverseResult& r);
Json strong_inverse_result_to_json(const StrongInverseResult& r);
Json word_to_json(const Word& w);
Json config_to_json(const InverseConfig& cfg);

// instance file format: {"steps": ["..."], "mu": "p/q"}
struct ParsedInstance {
    Word word;
    std::optional<Density> mu;
};
ParsedInstance instance_from_json(const Json& j);
Json instance_to_json(const Word& w, const std::optional<Density>& mu);

// one trace step per line
std::string trace_to_jsonl(const std::vector<TraceStep>& trace);

} // namespace lo

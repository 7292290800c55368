#pragma once

// Structured output records: deterministic JSON encodings of values and
// results, plus the inverse parsers used by the round-trip guarantees.
// Rationals always serialize as "num/den" strings.

#include <json.hpp>

#include "csl/metrics.hpp"
#include "csl/monads.hpp"
#include "csl/term.hpp"
#include "csl/value.hpp"

namespace csl::record {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q);
Json elem_json(const Elem& e);
Json dist_json(const Dist& d);
Json carrier_json(const Carrier& c);
Json set_json(const ConvexSet& s);
Json maybe_json(const MaybeSet& m);
Json value_json(const CanonicalValue& v);
Json report_json(const LawReport& r);
Json metric_json(const FinMetric& d);

// Inverse parsers for records over name carriers (the only kind the CLI
// emits). Malformed input raises input_error.
Rational rational_from(const Json& j);
Elem elem_from(const Json& j);
Dist dist_from(const Json& j);
Carrier carrier_from(const Json& j);
ConvexSet set_from(const Json& j);
MaybeSet maybe_from(const Json& j);
CanonicalValue value_from(const Json& j);

}  // namespace csl::record

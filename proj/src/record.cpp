#include "csl/record.hpp"

#include "csl/errors.hpp"

namespace csl::record {

Json rational_json(const Rational& q) { return rat_str(q); }

Json elem_json(const Elem& e) {
  switch (e.kind()) {
    case Elem::Kind::Star:
      return "star";
    case Elem::Kind::Gen:
      return e.name();
    case Elem::Kind::Set:
      return Json{{"set", set_json(e.set_value())}};
  }
  return {};
}

Json dist_json(const Dist& d) {
  Json out = Json::array();
  for (const auto& [e, w] : d.entries()) out.push_back(Json::array({elem_json(e), rational_json(w)}));
  return out;
}

Json carrier_json(const Carrier& c) {
  Json gens = Json::array();
  for (const Elem& e : c.gens()) gens.push_back(elem_json(e));
  return Json{{"gens", gens}, {"star", c.has_star()}};
}

Json set_json(const ConvexSet& s) {
  Json base = Json::array();
  for (const Dist& d : s.base()) base.push_back(dist_json(d));
  return Json{{"carrier", carrier_json(s.carrier())}, {"base", base}};
}

Json maybe_json(const MaybeSet& m) {
  if (m.is_star()) return Json{{"star", true}};
  return Json{{"set", set_json(m.set_value())}};
}

Json value_json(const CanonicalValue& v) {
  Json out{{"theory", theory_name(v.theory)}};
  if (v.set) out["value"] = set_json(*v.set);
  if (v.maybe) out["value"] = maybe_json(*v.maybe);
  return out;
}

Json report_json(const LawReport& r) {
  Json fails = Json::array();
  for (const auto& f : r.failures) fails.push_back(f);
  return Json{{"law", r.law}, {"samples", r.samples}, {"failures", fails}};
}

Json metric_json(const FinMetric& d) {
  Json carrier = Json::array();
  for (const Elem& e : d.carrier()) carrier.push_back(elem_json(e));
  Json rows = Json::array();
  for (const auto& row : d.table()) {
    Json r = Json::array();
    for (const Rational& v : row) r.push_back(rational_json(v));
    rows.push_back(r);
  }
  return Json{{"carrier", carrier}, {"table", rows}};
}

// --- inverse parsers --------------------------------------------------------

namespace {
[[noreturn]] void bad(const std::string& what) { throw input_error("malformed record: " + what); }
}  // namespace

Rational rational_from(const Json& j) {
  if (!j.is_string()) bad("rational must be a string");
  return parse_rational(j.get<std::string>());
}

Elem elem_from(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    return s == "star" ? Elem::star() : Elem::gen(s);
  }
  if (j.is_object() && j.contains("set")) return Elem::set(set_from(j.at("set")));
  bad("element");
}

Dist dist_from(const Json& j) {
  if (!j.is_array()) bad("distribution");
  std::vector<Dist::Entry> entries;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) bad("distribution entry");
    entries.emplace_back(elem_from(pair[0]), rational_from(pair[1]));
  }
  return Dist::make(std::move(entries));
}

Carrier carrier_from(const Json& j) {
  if (!j.is_object() || !j.contains("gens") || !j.contains("star")) bad("carrier");
  std::vector<Elem> gens;
  for (const auto& g : j.at("gens")) gens.push_back(elem_from(g));
  return Carrier::of(std::move(gens), j.at("star").get<bool>());
}

ConvexSet set_from(const Json& j) {
  if (!j.is_object() || !j.contains("carrier") || !j.contains("base")) bad("convex set");
  std::vector<Dist> base;
  for (const auto& d : j.at("base")) base.push_back(dist_from(d));
  // records always carry canonical bases
  return ConvexSet::from_base_unchecked(carrier_from(j.at("carrier")), std::move(base));
}

MaybeSet maybe_from(const Json& j) {
  if (j.is_object() && j.contains("star") && j.at("star").get<bool>()) return MaybeSet::star();
  if (j.is_object() && j.contains("set")) return MaybeSet::set(set_from(j.at("set")));
  bad("maybe-set");
}

CanonicalValue value_from(const Json& j) {
  if (!j.is_object() || !j.contains("theory") || !j.contains("value")) bad("canonical value");
  const auto th = theory_from_name(j.at("theory").get<std::string>());
  if (!th) bad("theory name");
  CanonicalValue v;
  v.theory = *th;
  if (*th == TheoryId::CSBotBH)
    v.maybe = maybe_from(j.at("value"));
  else
    v.set = set_from(j.at("value"));
  return v;
}

}  // namespace csl::record

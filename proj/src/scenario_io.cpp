#include "ztrust/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "ztrust/error.hpp"

namespace ztrust {

using namespace json_util;

namespace {

// Sparse labeled probability row: absent labels are zero; present ones must be
// known and in [0,1]; the row must sum to 1.
std::map<std::string, double> probability_row(const Json& j, const std::vector<std::string>& labels,
                                              const std::string& loc) {
  as_object(j, loc);
  std::map<std::string, double> row;
  double sum = 0.0;
  for (const auto& [key, value] : j.items()) {
    if (std::find(labels.begin(), labels.end(), key) == labels.end())
      throw ValidationError(join(loc, key), "unknown label");
    const double p = as_number(value, join(loc, key));
    if (p < 0.0 || p > 1.0) throw ValidationError(join(loc, key), "probability " + format_number(p) + " outside [0,1]");
    row[key] = p;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance)
    throw ValidationError(loc, "row sums to " + format_number(sum) + ", expected 1 (tolerance 1e-9)");
  return row;
}

ProfileSpec parse_profile(const std::string& name, const Json& j, const std::vector<std::string>& types,
                          const std::string& loc) {
  as_object(j, loc);
  ProfileSpec p;
  p.name = name;
  p.actions = label_list(member(j, "actions", loc), join(loc, "actions"));
  p.evidence_values = label_list(member(j, "evidence_values", loc), join(loc, "evidence_values"));

  const std::string bloc = join(loc, "behavior");
  const Json& behavior = as_object(member(j, "behavior", loc), bloc);
  for (const auto& [type, _] : behavior.items())
    if (std::find(types.begin(), types.end(), type) == types.end())
      throw ValidationError(join(bloc, type), "unknown type");
  for (const auto& type : types)
    p.behavior[type] = probability_row(member(behavior, type, bloc), p.actions, join(bloc, type));

  const std::string eloc = join(loc, "evidence");
  const Json& evidence = as_object(member(j, "evidence", loc), eloc);
  for (const auto& [action, _] : evidence.items())
    if (std::find(p.actions.begin(), p.actions.end(), action) == p.actions.end())
      throw ValidationError(join(eloc, action), "unknown action");
  for (const auto& action : p.actions) {
    const std::string aloc = join(eloc, action);
    const Json& rows = as_object(member(evidence, action, eloc), aloc);
    for (const auto& [type, _] : rows.items())
      if (std::find(types.begin(), types.end(), type) == types.end())
        throw ValidationError(join(aloc, type), "unknown type");
    for (const auto& type : types)
      p.evidence[action][type] = probability_row(member(rows, type, aloc), p.evidence_values, join(aloc, type));
  }
  return p;
}

std::vector<PriorSource> parse_prior(const Json& j, const std::string& loc) {
  std::vector<PriorSource> out;
  if (j.is_number()) {
    const double s = as_number(j, loc);
    if (s < 0.0 || s > 1.0) throw ValidationError(loc, "prior score outside [0,1]");
    out.push_back({s, 1.0});
    return out;
  }
  as_array(j, loc);
  double total = 0.0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string sloc = loc + "[" + std::to_string(i) + "]";
    const double score = as_number(member(j[i], "score", sloc), join(sloc, "score"));
    const Json* w = optional_member(j[i], "weight", sloc);
    const double weight = w ? as_number(*w, join(sloc, "weight")) : 1.0;
    if (score < 0.0 || score > 1.0) throw ValidationError(join(sloc, "score"), "prior score outside [0,1]");
    if (weight < 0.0) throw ValidationError(join(sloc, "weight"), "prior weight is negative");
    total += weight;
    out.push_back({score, weight});
  }
  if (!(total > 0.0)) throw ValidationError(loc, "no prior sources with positive weight");
  return out;
}

}  // namespace

ScenarioSpec parse_scenario(const std::string& text) {
  const Json doc = parse_document(text);
  require_schema(doc, kScenarioSchema);
  static const std::set<std::string> kSections = {"schema", "type_space", "profiles", "entities", "policy", "run"};
  for (const auto& [key, _] : doc.items())
    if (!kSections.count(key)) throw ValidationError(key, "unknown section");

  ScenarioSpec spec;
  const Json& ts = as_object(member(doc, "type_space", ""), "type_space");
  spec.types = label_list(member(ts, "types", "type_space"), "type_space.types");
  const Json& trusted = as_array(member(ts, "trusted", "type_space"), "type_space.trusted");
  std::set<std::string> trusted_seen;
  for (std::size_t i = 0; i < trusted.size(); ++i) {
    const std::string loc = "type_space.trusted[" + std::to_string(i) + "]";
    auto t = as_string(trusted[i], loc);
    if (std::find(spec.types.begin(), spec.types.end(), t) == spec.types.end())
      throw ValidationError(loc, "trusted type '" + t + "' is not declared in type_space.types");
    if (!trusted_seen.insert(t).second) throw ValidationError(loc, "duplicate trusted type '" + t + "'");
    spec.trusted.push_back(std::move(t));
  }

  const Json& profiles = as_object(member(doc, "profiles", ""), "profiles");
  if (profiles.empty()) throw ValidationError("profiles", "at least one profile is required");
  for (const auto& [name, body] : profiles.items())
    spec.profiles.push_back(parse_profile(name, body, spec.types, join("profiles", name)));

  const Json& entities = as_array(member(doc, "entities", ""), "entities");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const std::string loc = "entities[" + std::to_string(i) + "]";
    EntityEntry e;
    e.id = as_string(member(entities[i], "id", loc), join(loc, "id"));
    if (!ids.insert(e.id).second) throw ValidationError(join(loc, "id"), "duplicate entity id '" + e.id + "'");
    e.true_type = as_string(member(entities[i], "true_type", loc), join(loc, "true_type"));
    if (std::find(spec.types.begin(), spec.types.end(), e.true_type) == spec.types.end())
      throw ValidationError(join(loc, "true_type"), "unknown type '" + e.true_type + "'");
    e.profile = as_string(member(entities[i], "profile", loc), join(loc, "profile"));
    bool found = false;
    for (const auto& p : spec.profiles) found = found || p.name == e.profile;
    if (!found) throw ValidationError(join(loc, "profile"), "unknown profile '" + e.profile + "'");
    e.prior = parse_prior(member(entities[i], "prior", loc), join(loc, "prior"));
    spec.entities.push_back(std::move(e));
  }

  if (const Json* policy = optional_member(doc, "policy", "")) {
    as_object(*policy, "policy");
    static const std::set<std::string> kKeys = {"grant", "deny", "decay_rate", "baseline", "observe_while_denied"};
    for (const auto& [key, _] : policy->items())
      if (!kKeys.count(key)) throw ValidationError(join("policy", key), "unknown key");
    if (const Json* v = optional_member(*policy, "grant", "policy")) spec.policy.grant = as_number(*v, "policy.grant");
    if (const Json* v = optional_member(*policy, "deny", "policy")) spec.policy.deny = as_number(*v, "policy.deny");
    if (const Json* v = optional_member(*policy, "decay_rate", "policy"))
      spec.policy.decay_rate = as_number(*v, "policy.decay_rate");
    if (const Json* v = optional_member(*policy, "observe_while_denied", "policy"))
      spec.policy.observe_while_denied = as_bool(*v, "policy.observe_while_denied");
    if (const Json* v = optional_member(*policy, "baseline", "policy")) {
      auto row = probability_row(*v, spec.types, "policy.baseline");
      for (const auto& t : spec.types) row.emplace(t, 0.0);
      spec.policy.baseline = std::move(row);
    }
  }
  if (!(0.0 <= spec.policy.deny && spec.policy.deny <= spec.policy.grant && spec.policy.grant <= 1.0))
    throw ValidationError("policy", "thresholds must satisfy 0 <= deny (" + format_number(spec.policy.deny) +
                                        ") <= grant (" + format_number(spec.policy.grant) + ") <= 1");
  if (spec.policy.decay_rate < 0.0) throw ValidationError("policy.decay_rate", "must be >= 0");

  if (const Json* run = optional_member(doc, "run", "")) {
    as_object(*run, "run");
    for (const auto& [key, _] : run->items())
      if (key != "horizon" && key != "seed") throw ValidationError(join("run", key), "unknown key");
    if (const Json* v = optional_member(*run, "horizon", "run")) spec.horizon = as_integer(*v, "run.horizon");
    if (const Json* v = optional_member(*run, "seed", "run")) spec.seed = as_unsigned(*v, "run.seed");
  }
  if (spec.horizon < 1) throw ValidationError("run.horizon", "must be >= 1");
  return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path, "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioSpec& spec) {
  Json doc;
  doc["schema"] = kScenarioSchema;
  doc["type_space"] = {{"types", spec.types}, {"trusted", spec.trusted}};
  Json profiles = Json::object();
  for (const auto& p : spec.profiles) {
    Json body;
    body["actions"] = p.actions;
    body["evidence_values"] = p.evidence_values;
    Json behavior = Json::object();
    for (const auto& type : spec.types) {
      Json row = Json::object();
      for (const auto& a : p.actions) {
        auto it = p.behavior.at(type).find(a);
        if (it != p.behavior.at(type).end()) row[a] = it->second;
      }
      behavior[type] = std::move(row);
    }
    body["behavior"] = std::move(behavior);
    Json evidence = Json::object();
    for (const auto& a : p.actions) {
      Json rows = Json::object();
      for (const auto& type : spec.types) {
        Json row = Json::object();
        const auto& src = p.evidence.at(a).at(type);
        for (const auto& e : p.evidence_values) {
          auto it = src.find(e);
          if (it != src.end()) row[e] = it->second;
        }
        rows[type] = std::move(row);
      }
      evidence[a] = std::move(rows);
    }
    body["evidence"] = std::move(evidence);
    profiles[p.name] = std::move(body);
  }
  doc["profiles"] = std::move(profiles);
  Json entities = Json::array();
  for (const auto& e : spec.entities) {
    Json prior = Json::array();
    for (const auto& s : e.prior) prior.push_back({{"score", s.score}, {"weight", s.weight}});
    entities.push_back({{"id", e.id}, {"true_type", e.true_type}, {"profile", e.profile}, {"prior", prior}});
  }
  doc["entities"] = std::move(entities);
  Json policy;
  policy["grant"] = spec.policy.grant;
  policy["deny"] = spec.policy.deny;
  policy["decay_rate"] = spec.policy.decay_rate;
  if (spec.policy.baseline) {
    Json b = Json::object();
    for (const auto& t : spec.types) b[t] = spec.policy.baseline->at(t);
    policy["baseline"] = std::move(b);
  }
  policy["observe_while_denied"] = spec.policy.observe_while_denied;
  doc["policy"] = std::move(policy);
  doc["run"] = {{"horizon", spec.horizon}, {"seed", spec.seed}};
  return doc.dump(2) + "\n";
}

Scenario to_scenario(const ScenarioSpec& spec) {
  try {
    Scenario s;
    s.space = std::make_shared<const TypeSpace>(spec.types, spec.trusted);
    for (const auto& p : spec.profiles) {
      s.profiles.push_back(Profile{p.name, BehaviorModel(s.space, p.actions, p.behavior),
                                   EvidenceModel(s.space, p.actions, p.evidence_values, p.evidence)});
    }
    for (const auto& e : spec.entities) s.entities.push_back(EntitySpec{e.id, e.true_type, e.prior, e.profile});
    s.policy.grant_threshold = spec.policy.grant;
    s.policy.deny_threshold = spec.policy.deny;
    s.policy.decay_rate = spec.policy.decay_rate;
    s.policy.observe_while_denied = spec.policy.observe_while_denied;
    if (spec.policy.baseline) s.policy.baseline = TrustState::from_map(s.space, *spec.policy.baseline);
    s.horizon = spec.horizon;
    s.seed = spec.seed;
    s.validate();
    return s;
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError("scenario", e.what());
  }
}

}  // namespace ztrust

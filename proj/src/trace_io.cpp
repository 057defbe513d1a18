#include "ztrust/trace_io.hpp"

#include "json_util.hpp"
#include "ztrust/error.hpp"

namespace ztrust {

using json_util::Json;

namespace {

Json header(const char* kind) {
  Json j;
  j["schema"] = kTraceSchema;
  j["kind"] = kind;
  return j;
}

Json labeled_mix(const std::vector<std::string>& labels, const MixedStrategy& mix) {
  Json j = Json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) j[labels[i]] = mix.weights[i];
  return j;
}

}  // namespace

void write_line(std::ostream& sink, const std::string& line, std::size_t written) {
  if (!sink) throw SinkError(written);
  sink << line << '\n';
  if (!sink) throw SinkError(written);
}

std::string step_record_line(const StepRecord& r, std::uint64_t seed) {
  Json j = header("step");
  j["seed"] = seed;
  j["tick"] = r.tick;
  j["entity"] = r.entity;
  j["decision"] = to_string(r.decision);
  j["action"] = r.action ? Json(*r.action) : Json(nullptr);
  j["evidence"] = r.evidence ? Json(*r.evidence) : Json(nullptr);
  j["score_before"] = r.score_before;
  j["score_after"] = r.score_after;
  return j.dump();
}

std::size_t emit_trace(const std::vector<StepRecord>& records, std::uint64_t seed, std::ostream& sink) {
  std::size_t written = 0;
  for (const auto& r : records) {
    write_line(sink, step_record_line(r, seed), written);
    ++written;
  }
  sink.flush();
  if (!sink) throw SinkError(written);
  return written;
}

std::size_t emit_trace(const SimTrace& trace, std::ostream& sink) {
  return emit_trace(trace.records, trace.seed, sink);
}

std::string metrics_line(const Metrics& metrics, std::uint64_t seed, std::int64_t horizon) {
  Json j = header("metrics");
  j["seed"] = seed;
  j["horizon"] = horizon;
  Json entities = Json::array();
  std::size_t detected = 0, lockouts = 0;
  for (const auto& e : metrics.entities) {
    Json ej;
    ej["id"] = e.id;
    ej["true_type"] = e.true_type;
    ej["trusted_type"] = e.trusted_type;
    ej["time_to_detection"] = e.time_to_detection ? Json(*e.time_to_detection) : Json(nullptr);
    ej["false_lockout"] = e.false_lockout;
    ej["final_score"] = e.final_score;
    ej["trajectory"] = e.trajectory;
    entities.push_back(std::move(ej));
    if (e.time_to_detection) ++detected;
    if (e.false_lockout) ++lockouts;
  }
  j["entities"] = std::move(entities);
  j["summary"] = {{"entities", metrics.entities.size()}, {"detected", detected}, {"false_lockouts", lockouts}};
  return j.dump();
}

std::string zero_sum_line(const MatrixGame& game, const ZeroSumSolution& sol) {
  Json j = header("zero_sum_solution");
  j["game"] = "matrix_game";
  j["value"] = sol.value;
  j["row_strategy"] = labeled_mix(game.row_labels, sol.row);
  j["col_strategy"] = labeled_mix(game.col_labels, sol.col);
  j["certificate_gap"] = minimax_certificate_gap(game.payoff, sol);
  return j.dump();
}

std::string stackelberg_line(const BimatrixGame& game, CommitmentMode mode, const SSEResult& sol) {
  Json j = header("stackelberg_solution");
  j["game"] = "bimatrix_game";
  j["mode"] = to_string(mode);
  j["leader_strategy"] = labeled_mix(game.row_labels, sol.leader);
  j["follower_action"] = game.col_labels[sol.follower_action];
  j["leader_value"] = sol.leader_value;
  j["follower_value"] = sol.follower_value;
  return j.dump();
}

std::string bne_line(const BayesianGameSpec& spec, const std::vector<BayesianStrategy>& equilibria) {
  Json j = header("bne_set");
  j["game"] = "bayesian_game";
  j["count"] = equilibria.size();
  Json list = Json::array();
  for (const auto& eq : equilibria) {
    Json profile = Json::object();
    for (std::size_t i = 0; i < spec.player_count(); ++i) {
      const auto& p = spec.players()[i];
      Json map = Json::object();
      for (std::size_t t = 0; t < p.types.size(); ++t) map[p.types[t]] = p.actions[eq.actions[i][t]];
      profile[p.name] = std::move(map);
    }
    list.push_back(std::move(profile));
  }
  j["equilibria"] = std::move(list);
  return j.dump();
}

std::string pbe_line(const SignalingGameSpec& spec, OffPathRule rule, const std::vector<PBEResult>& equilibria) {
  Json j = header("pbe_set");
  j["game"] = "signaling_game";
  j["off_path"] = to_string(rule);
  j["count"] = equilibria.size();
  std::size_t pooling = 0, separating = 0, hybrid = 0;
  Json list = Json::array();
  for (const auto& eq : equilibria) {
    Json e;
    e["classification"] = to_string(eq.classification);
    Json sender = Json::object();
    for (std::size_t t = 0; t < spec.types().size(); ++t) sender[spec.types()[t]] = spec.signals()[eq.sender[t]];
    e["sender"] = std::move(sender);
    Json receiver = Json::object();
    for (std::size_t s = 0; s < spec.signals().size(); ++s) receiver[spec.signals()[s]] = spec.actions()[eq.receiver[s]];
    e["receiver"] = std::move(receiver);
    Json beliefs = Json::object();
    for (std::size_t s = 0; s < spec.signals().size(); ++s) {
      Json b;
      Json over = Json::object();
      for (std::size_t t = 0; t < spec.types().size(); ++t) over[spec.types()[t]] = eq.beliefs[s].over_types[t];
      b["belief"] = std::move(over);
      b["on_path"] = eq.beliefs[s].on_path;
      beliefs[spec.signals()[s]] = std::move(b);
    }
    e["beliefs"] = std::move(beliefs);
    list.push_back(std::move(e));
    switch (eq.classification) {
      case PbeClass::kPooling: ++pooling; break;
      case PbeClass::kSeparating: ++separating; break;
      case PbeClass::kHybrid: ++hybrid; break;
    }
  }
  j["pooling"] = pooling;
  j["separating"] = separating;
  j["hybrid"] = hybrid;
  j["equilibria"] = std::move(list);
  return j.dump();
}

}  // namespace ztrust

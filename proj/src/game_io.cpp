#include "ztrust/game_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json_util.hpp"
#include "ztrust/error.hpp"
#include "ztrust/trust_core.hpp"

namespace ztrust {

using namespace json_util;

namespace {

const char* const kKinds[] = {"matrix_game", "bimatrix_game", "bayesian_game", "signaling_game"};

// Labeled table: rows keyed by row label, each an object keyed by column label.
Matrix labeled_table(const Json& j, const std::vector<std::string>& rows,
                     const std::vector<std::string>& cols, const std::string& loc) {
  require_keys(j, rows, loc);
  Matrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string rloc = join(loc, rows[r]);
    const Json& row = j.at(rows[r]);
    require_keys(row, cols, rloc);
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = as_number(row.at(cols[c]), join(rloc, cols[c]));
  }
  return m;
}

MatrixGame parse_matrix(const Json& j, const std::string& loc) {
  MatrixGame g;
  g.row_labels = label_list(member(j, "rows", loc), join(loc, "rows"));
  g.col_labels = label_list(member(j, "cols", loc), join(loc, "cols"));
  g.payoff = labeled_table(member(j, "payoff", loc), g.row_labels, g.col_labels, join(loc, "payoff"));
  return g;
}

BimatrixGame parse_bimatrix(const Json& j, const std::string& loc) {
  BimatrixGame g;
  g.row_labels = label_list(member(j, "rows", loc), join(loc, "rows"));
  g.col_labels = label_list(member(j, "cols", loc), join(loc, "cols"));
  g.leader_payoff = labeled_table(member(j, "leader", loc), g.row_labels, g.col_labels, join(loc, "leader"));
  g.follower_payoff = labeled_table(member(j, "follower", loc), g.row_labels, g.col_labels, join(loc, "follower"));
  return g;
}

std::vector<std::size_t> label_indices(const Json& j, const std::vector<std::vector<std::string>>& domains,
                                       const std::string& loc) {
  as_array(j, loc);
  if (j.size() != domains.size())
    throw ValidationError(loc, "expected " + std::to_string(domains.size()) + " labels, one per player");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto s = as_string(j[i], loc + "[" + std::to_string(i) + "]");
    auto it = std::find(domains[i].begin(), domains[i].end(), s);
    if (it == domains[i].end()) throw ValidationError(loc + "[" + std::to_string(i) + "]", "unknown label '" + s + "'");
    out.push_back(static_cast<std::size_t>(it - domains[i].begin()));
  }
  return out;
}

BayesianGameSpec parse_bayesian(const Json& j, const std::string& loc) {
  const std::string ploc = join(loc, "players");
  const Json& players_json = as_array(member(j, "players", loc), ploc);
  if (players_json.empty()) throw ValidationError(ploc, "at least one player is required");
  std::vector<BayesianPlayer> players;
  std::vector<std::vector<double>> marginals;
  bool have_marginals = true;
  for (std::size_t i = 0; i < players_json.size(); ++i) {
    const std::string iloc = ploc + "[" + std::to_string(i) + "]";
    BayesianPlayer p;
    p.name = as_string(member(players_json[i], "name", iloc), join(iloc, "name"));
    const Json& types = member(players_json[i], "types", iloc);
    if (types.is_object()) {
      std::vector<double> m;
      for (const auto& [t, v] : types.items()) {
        p.types.push_back(t);
        const double q = as_number(v, join(join(iloc, "types"), t));
        if (q < 0.0) throw ValidationError(join(join(iloc, "types"), t), "negative probability");
        m.push_back(q);
      }
      if (p.types.empty()) throw ValidationError(join(iloc, "types"), "at least one type is required");
      double s = 0.0;
      for (double q : m) s += q;
      if (std::abs(s - 1.0) > kProbabilityTolerance)
        throw ValidationError(join(iloc, "types"), "marginal sums to " + format_number(s) + ", expected 1");
      marginals.push_back(std::move(m));
    } else {
      p.types = label_list(types, join(iloc, "types"));
      have_marginals = false;
    }
    p.actions = label_list(member(players_json[i], "actions", iloc), join(iloc, "actions"));
    for (const auto& q : players)
      if (q.name == p.name) throw ValidationError(join(iloc, "name"), "duplicate player name '" + p.name + "'");
    players.push_back(std::move(p));
  }

  std::vector<std::vector<std::string>> type_domains, action_domains;
  for (const auto& p : players) {
    type_domains.push_back(p.types);
    action_domains.push_back(p.actions);
  }
  auto encode = [](const std::vector<std::size_t>& idx, const std::vector<std::vector<std::string>>& dom) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) k = k * dom[i].size() + idx[i];
    return k;
  };
  std::size_t type_profiles = 1, action_profiles = 1;
  for (const auto& p : players) {
    type_profiles *= p.types.size();
    action_profiles *= p.actions.size();
  }

  std::vector<double> prior;
  if (const Json* jp = optional_member(j, "joint_prior", loc)) {
    const std::string jloc = join(loc, "joint_prior");
    as_array(*jp, jloc);
    prior.assign(type_profiles, 0.0);
    std::vector<bool> seen(type_profiles, false);
    double s = 0.0;
    for (std::size_t k = 0; k < jp->size(); ++k) {
      const std::string eloc = jloc + "[" + std::to_string(k) + "]";
      auto idx = label_indices(member((*jp)[k], "types", eloc), type_domains, join(eloc, "types"));
      const std::size_t tp = encode(idx, type_domains);
      if (seen[tp]) throw ValidationError(eloc, "duplicate type profile");
      seen[tp] = true;
      const double q = as_number(member((*jp)[k], "p", eloc), join(eloc, "p"));
      if (q < 0.0) throw ValidationError(join(eloc, "p"), "negative probability");
      prior[tp] = q;
      s += q;
    }
    if (std::abs(s - 1.0) > kProbabilityTolerance)
      throw ValidationError(jloc, "joint prior sums to " + format_number(s) + ", expected 1");
  } else {
    if (!have_marginals)
      throw ValidationError(join(loc, "joint_prior"), "required when player types are given without probabilities");
    prior = BayesianGameSpec::independent_prior(players, marginals);
  }

  const std::string uloc = join(loc, "utility");
  const Json& utility = as_array(member(j, "utility", loc), uloc);
  std::vector<std::vector<double>> table(players.size(), std::vector<double>(type_profiles * action_profiles, 0.0));
  std::vector<bool> covered(type_profiles * action_profiles, false);
  std::vector<std::string> names;
  for (const auto& p : players) names.push_back(p.name);
  for (std::size_t k = 0; k < utility.size(); ++k) {
    const std::string eloc = uloc + "[" + std::to_string(k) + "]";
    auto tidx = label_indices(member(utility[k], "types", eloc), type_domains, join(eloc, "types"));
    auto aidx = label_indices(member(utility[k], "actions", eloc), action_domains, join(eloc, "actions"));
    const std::size_t cell = encode(aidx, action_domains) * type_profiles + encode(tidx, type_domains);
    if (covered[cell]) throw ValidationError(eloc, "duplicate (types, actions) entry");
    covered[cell] = true;
    const Json& pay = member(utility[k], "payoff", eloc);
    require_keys(pay, names, join(eloc, "payoff"));
    for (std::size_t i = 0; i < players.size(); ++i)
      table[i][cell] = as_number(pay.at(names[i]), join(join(eloc, "payoff"), names[i]));
  }
  for (bool c : covered)
    if (!c)
      throw ValidationError(uloc, "utility table must cover every (type profile, action profile); " +
                                      std::to_string(utility.size()) + " of " +
                                      std::to_string(covered.size()) + " entries given");
  try {
    return BayesianGameSpec(std::move(players), std::move(prior), std::move(table));
  } catch (const DomainError& e) {
    throw ValidationError(loc, e.what());
  }
}

SignalingGameSpec parse_signaling(const Json& j, const std::string& loc) {
  const std::string tloc = join(loc, "types");
  const Json& types_json = as_object(member(j, "types", loc), tloc);
  std::vector<std::string> types;
  std::vector<double> prior;
  double s = 0.0;
  for (const auto& [t, v] : types_json.items()) {
    types.push_back(t);
    const double q = as_number(v, join(tloc, t));
    if (q < 0.0) throw ValidationError(join(tloc, t), "negative probability");
    prior.push_back(q);
    s += q;
  }
  if (types.empty()) throw ValidationError(tloc, "at least one sender type is required");
  if (std::abs(s - 1.0) > kProbabilityTolerance)
    throw ValidationError(tloc, "prior sums to " + format_number(s) + ", expected 1");
  auto signals = label_list(member(j, "signals", loc), join(loc, "signals"));
  auto actions = label_list(member(j, "actions", loc), join(loc, "actions"));

  const std::string sloc = join(loc, "sender_utility");
  const Json& sender = member(j, "sender_utility", loc);
  require_keys(sender, types, sloc);
  std::vector<Matrix> sender_tables;
  for (const auto& t : types) sender_tables.push_back(labeled_table(sender.at(t), signals, actions, join(sloc, t)));
  Matrix receiver = labeled_table(member(j, "receiver_utility", loc), actions, types, join(loc, "receiver_utility"));
  try {
    return SignalingGameSpec(std::move(types), std::move(prior), std::move(signals), std::move(actions),
                             std::move(sender_tables), std::move(receiver));
  } catch (const DomainError& e) {
    throw ValidationError(loc, e.what());
  }
}

}  // namespace

std::string game_kind(const GameSpec& game) {
  return kKinds[game.index()];
}

GameSpec parse_game(const std::string& text) {
  const Json doc = parse_document(text);
  require_schema(doc, kGameSchema);
  std::string kind;
  for (const auto& [key, _] : doc.items()) {
    if (key == "schema") continue;
    if (std::find(std::begin(kKinds), std::end(kKinds), key) == std::end(kKinds))
      throw ValidationError(key, "unknown section (expected one of matrix_game, bimatrix_game, bayesian_game, signaling_game)");
    if (!kind.empty()) throw ValidationError(key, "a game file declares exactly one game; '" + kind + "' already present");
    kind = key;
  }
  if (kind.empty()) throw ValidationError("document", "no game section found");
  const Json& body = as_object(doc.at(kind), kind);
  if (kind == "matrix_game") {
    auto g = parse_matrix(body, kind);
    try {
      g.validate();
    } catch (const DomainError& e) {
      throw ValidationError(kind, e.what());
    }
    return g;
  }
  if (kind == "bimatrix_game") {
    auto g = parse_bimatrix(body, kind);
    try {
      g.validate();
    } catch (const DomainError& e) {
      throw ValidationError(kind, e.what());
    }
    return g;
  }
  if (kind == "bayesian_game") return parse_bayesian(body, kind);
  return parse_signaling(body, kind);
}

GameSpec load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path, "cannot open game file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

}  // namespace ztrust

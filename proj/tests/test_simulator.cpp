#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "ztrust/error.hpp"
#include "ztrust/rng.hpp"
#include "ztrust/simulator.hpp"
#include "ztrust/sweep.hpp"

using namespace ztrust;

namespace {

TypeSpacePtr tm_space() {
  return std::make_shared<const TypeSpace>(std::vector<std::string>{"T", "M"}, std::vector<std::string>{"T"});
}

// sigma(attack|M)=1, sigma(attack|T)=0.1; h(alarm|attack,M)=1, h(alarm|attack,T)=0.1.
Scenario deterministic_attacker(std::int64_t horizon = 3) {
  auto s = tm_space();
  Scenario sc;
  sc.space = s;
  BehaviorModel b(s, {"attack", "benign"}, {{"T", {{"attack", 0.1}, {"benign", 0.9}}}, {"M", {{"attack", 1.0}}}});
  EvidenceModel e(s, {"attack", "benign"}, {"no_alarm", "alarm"},
                  {{"attack", {{"T", {{"no_alarm", 0.9}, {"alarm", 0.1}}}, {"M", {{"alarm", 1.0}}}}},
                   {"benign", {{"T", {{"no_alarm", 1.0}}}, {"M", {{"no_alarm", 1.0}}}}}});
  sc.profiles.push_back(Profile{"attacker", b, e});
  sc.entities.push_back(EntitySpec{"intruder", "M", {{0.5, 1.0}}, "attacker"});
  sc.horizon = horizon;
  sc.seed = 9;
  return sc;
}

Scenario mixed_population(std::uint64_t seed, double decay = 0.0) {
  auto s = tm_space();
  Scenario sc;
  sc.space = s;
  BehaviorModel b(s, {"benign", "attack"}, {{"T", {{"benign", 0.9}, {"attack", 0.1}}}, {"M", {{"benign", 0.6}, {"attack", 0.4}}}});
  EvidenceModel e(s, {"benign", "attack"}, {"0", "1"},
                  {{"benign", {{"T", {{"0", 0.95}, {"1", 0.05}}}, {"M", {{"0", 0.8}, {"1", 0.2}}}}},
                   {"attack", {{"T", {{"0", 0.5}, {"1", 0.5}}}, {"M", {{"0", 0.2}, {"1", 0.8}}}}}});
  sc.profiles.push_back(Profile{"p", b, e});
  for (int i = 0; i < 6; ++i) sc.entities.push_back(EntitySpec{"good" + std::to_string(i), "T", {{0.6, 1.0}}, "p"});
  for (int i = 0; i < 3; ++i) sc.entities.push_back(EntitySpec{"bad" + std::to_string(i), "M", {{0.6, 1.0}}, "p"});
  sc.policy.decay_rate = decay;
  sc.horizon = 40;
  sc.seed = seed;
  return sc;
}

}  // namespace

TEST_CASE("policy_decide thresholds") {
  PolicyConfig p;
  CHECK(policy_decide(0.9, p) == Decision::kGrant);
  CHECK(policy_decide(0.7, p) == Decision::kGrant);
  CHECK(policy_decide(0.5, p) == Decision::kChallenge);
  CHECK(policy_decide(0.3, p) == Decision::kChallenge);
  CHECK(policy_decide(0.2999, p) == Decision::kDeny);
  p.deny_threshold = 0.8;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("rng helpers are fixed functions") {
  // Reference values for splitmix64 from its published definition.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(entity_stream_seed(1, "x") != entity_stream_seed(1, "y"));
  CHECK(entity_stream_seed(1, "x") != entity_stream_seed(2, "x"));
  // mt19937_64 with the default seed: the 10000th output is fixed by the standard.
  std::mt19937_64 ref(5489u);
  ref.discard(9999);
  CHECK(ref() == 9981545732273789042ULL);
}

TEST_CASE("categorical never returns a zero-weight index") {
  Rng rng(4);
  const std::vector<double> p{0.0, 0.5, 0.0, 0.5, 0.0};
  for (int i = 0; i < 5000; ++i) {
    const auto k = rng.categorical(p);
    CHECK((k == 1 || k == 3));
  }
}

TEST_CASE("sample_action and generate_evidence frequencies") {
  auto s = tm_space();
  BehaviorModel b(s, {"benign", "attack"}, {{"T", {{"benign", 1.0}}}, {"M", {{"benign", 0.5}, {"attack", 0.5}}}});
  EvidenceModel e(s, {"benign", "attack"}, {"0", "1"},
                  {{"benign", {{"T", {{"0", 0.95}, {"1", 0.05}}}, {"M", {{"0", 1.0}}}}},
                   {"attack", {{"T", {{"0", 0.5}, {"1", 0.5}}}, {"M", {{"1", 1.0}}}}}});
  Rng rng(20240601);
  for (int i = 0; i < 100; ++i) CHECK(sample_action(rng, b, "T") == "benign");
  for (int i = 0; i < 100; ++i) CHECK(generate_evidence(rng, e, "attack", "M") == "1");

  int attacks = 0, alarms = 0;
  for (int i = 0; i < 10000; ++i) {
    attacks += sample_action(rng, b, "M") == "attack";
    alarms += generate_evidence(rng, e, "benign", "T") == "1";
  }
  CHECK(std::abs(attacks / 10000.0 - 0.5) <= 0.02);
  CHECK(std::abs(alarms / 10000.0 - 0.05) <= 0.01);

  Rng a(77), c(77);
  for (int i = 0; i < 50; ++i) CHECK(sample_action(a, b, "M") == sample_action(c, b, "M"));
}

TEST_CASE("one step of the deterministic attacker matches hand Bayes") {
  const auto sc = deterministic_attacker();
  const auto r = step(sc, initial_state(sc));
  REQUIRE(r.records.size() == 1);
  const auto& rec = r.records[0];
  CHECK(rec.tick == 1);
  CHECK(rec.decision == Decision::kChallenge);
  CHECK(rec.action == std::optional<std::string>("attack"));
  CHECK(rec.evidence == std::optional<std::string>("alarm"));
  CHECK(rec.score_before == 0.5);
  CHECK(rec.score_after == doctest::Approx(oracle::two_type_posterior(0.5, 0.1, 1.0, 0.1, 1.0)).epsilon(1e-12));
  CHECK(std::abs(rec.score_after - 0.0099) <= 1e-4);
  CHECK(r.state.tick == 1);
}

TEST_CASE("denied entities take no action and only attenuate") {
  auto sc = deterministic_attacker(4);
  sc.policy.decay_rate = 0.5;
  const auto trace = run(sc);
  REQUIRE(trace.records.size() == 4);
  const auto& denied = trace.records[1];
  CHECK(denied.decision == Decision::kDeny);
  CHECK_FALSE(denied.action.has_value());
  CHECK_FALSE(denied.evidence.has_value());
  // Uniform baseline trust 0.5; one tick of decay at rate 0.5.
  const double expected = 0.5 + (denied.score_before - 0.5) * std::exp(-0.5);
  CHECK(denied.score_after == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("observe_while_denied keeps sampling") {
  auto sc = deterministic_attacker(3);
  sc.policy.observe_while_denied = true;
  const auto trace = run(sc);
  CHECK(trace.records[1].decision == Decision::kDeny);
  CHECK(trace.records[1].action.has_value());
}

TEST_CASE("zero entities still advance the clock") {
  auto sc = deterministic_attacker();
  sc.entities.clear();
  const auto r = step(sc, initial_state(sc));
  CHECK(r.records.empty());
  CHECK(r.state.tick == 1);
  CHECK_THROWS_AS(step(sc, SimState{sc.horizon, {}}), DomainError);
}

TEST_CASE("zero-probability observations carry the entity id") {
  auto sc = deterministic_attacker();
  // The entity is type M, which always attacks, but the defender's model says
  // only benign is possible for every type.
  auto s = sc.space;
  sc.profiles[0] = Profile{"attacker",
                           BehaviorModel(s, {"attack", "benign"}, {{"T", {{"benign", 1.0}}}, {"M", {{"attack", 1.0}}}}),
                           sc.profiles[0].evidence};
  sc.entities[0].prior = {{1.0, 1.0}};
  try {
    run(sc);
    FAIL("expected ZeroProbabilityObservation");
  } catch (const ZeroProbabilityObservation& e) {
    CHECK(e.entity() == "intruder");
    CHECK(e.tick() == 1);
  }
}

TEST_CASE("run and compute_metrics on the deterministic attacker") {
  const auto sc = deterministic_attacker(5);
  const auto trace = run(sc);
  CHECK(trace.records.size() == 5);
  const auto m = compute_metrics(sc, trace);
  REQUIRE(m.entities.size() == 1);
  CHECK(m.entities[0].time_to_detection == std::optional<std::int64_t>(1));
  CHECK_FALSE(m.entities[0].false_lockout);
  CHECK(m.entities[0].trajectory.size() == 5);

  auto one = deterministic_attacker(1);
  const auto r = step(one, initial_state(one));
  CHECK(run(one).records[0].score_after == r.records[0].score_after);
}

TEST_CASE("uninformative evidence leaves every score at its prior") {
  auto s = tm_space();
  Scenario sc;
  sc.space = s;
  BehaviorModel b(s, {"x", "y"}, {{"T", {{"x", 0.3}, {"y", 0.7}}}, {"M", {{"x", 0.3}, {"y", 0.7}}}});
  EvidenceModel e(s, {"x", "y"}, {"0", "1"},
                  {{"x", {{"T", {{"0", 0.5}, {"1", 0.5}}}, {"M", {{"0", 0.5}, {"1", 0.5}}}}},
                   {"y", {{"T", {{"0", 0.9}, {"1", 0.1}}}, {"M", {{"0", 0.9}, {"1", 0.1}}}}}});
  sc.profiles.push_back(Profile{"flat", b, e});
  for (int i = 0; i < 4; ++i) sc.entities.push_back(EntitySpec{"e" + std::to_string(i), "T", {{0.8, 1.0}}, "flat"});
  sc.horizon = 25;
  const auto m = compute_metrics(sc, run(sc));
  for (const auto& em : m.entities) {
    CHECK_FALSE(em.time_to_detection.has_value());
    CHECK_FALSE(em.false_lockout);
    for (double v : em.trajectory) CHECK(v == doctest::Approx(0.8).epsilon(1e-12));
  }
}

TEST_CASE("a trusted entity that gets denied is a false lockout") {
  auto sc = deterministic_attacker(3);
  sc.entities[0].true_type = "T";
  sc.entities[0].prior = {{0.1, 1.0}};
  const auto m = compute_metrics(sc, run(sc));
  CHECK(m.entities[0].false_lockout);
}

TEST_CASE("property: one tick conserves expected trust") {
  // Enumerate every (action, evidence) pair for one entity's first tick.
  gen::Engine rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    auto sc = mixed_population(trial);
    sc.entities.resize(1);
    sc.entities[0].prior = {{0.05 + 0.9 * gen::unit(rng), 1.0}};
    sc.policy.deny_threshold = 0.0;
    const auto state = initial_state(sc);
    const auto& prof = sc.profiles[0];
    const auto& trust = state.entities[0].trust;
    double expected = 0.0;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t e = 0; e < 2; ++e) {
        double p = 0.0;
        for (std::size_t t = 0; t < 2; ++t) p += trust.mass()[t] * prof.behavior.likelihood(t, a) * prof.evidence.likelihood(a, t, e);
        expected += p * trust_score(bayes_update(trust, a, e, Observation{"", "", 1}, prof.behavior, prof.evidence));
      }
    }
    const auto rec = step(sc, state).records[0];
    CHECK(std::abs(expected - rec.score_before) <= 1e-9);
  }
}

TEST_CASE("property: scores stay in [0,1] and decisions follow the before-score") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sc = mixed_population(seed, 0.05);
    for (const auto& r : run(sc).records) {
      CHECK(r.score_before >= 0.0);
      CHECK(r.score_before <= 1.0);
      CHECK(r.score_after >= 0.0);
      CHECK(r.score_after <= 1.0);
      CHECK(r.decision == policy_decide(r.score_before, sc.policy));
    }
  }
}

TEST_CASE("property: runs are a function of the seed") {
  const auto a = run(mixed_population(5));
  const auto b = run(mixed_population(5));
  const auto c = run(mixed_population(6));
  REQUIRE(a.records.size() == b.records.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].score_after == b.records[i].score_after);
    CHECK(a.records[i].action == b.records[i].action);
    differs = differs || a.records[i].score_after != c.records[i].score_after;
  }
  CHECK(differs);
}

TEST_CASE("property: entity order does not perturb per-entity draws") {
  auto sc = mixed_population(12);
  auto reversed = sc;
  std::reverse(reversed.entities.begin(), reversed.entities.end());
  std::map<std::string, std::vector<double>> fwd, rev;
  for (const auto& r : run(sc).records) fwd[r.entity].push_back(r.score_after);
  for (const auto& r : run(reversed).records) rev[r.entity].push_back(r.score_after);
  CHECK(fwd == rev);
}

TEST_CASE("parallel sweep equals the serial reference") {
  const auto sc = mixed_population(0, 0.02);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 100; s < 140; ++s) seeds.push_back(s);
  SweepOptions opts;
  opts.keep_traces = true;
  opts.threads = 4;
  const auto par = run_sweep(sc, seeds, opts);
  const auto ser = run_sweep_serial(sc, seeds, opts);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].seed == seeds[i]);
    CHECK(par[i].seed == ser[i].seed);
    REQUIRE(par[i].trace.records.size() == ser[i].trace.records.size());
    for (std::size_t k = 0; k < par[i].trace.records.size(); ++k)
      CHECK(par[i].trace.records[k].score_after == ser[i].trace.records[k].score_after);
    for (std::size_t k = 0; k < par[i].metrics.entities.size(); ++k)
      CHECK(par[i].metrics.entities[k].final_score == ser[i].metrics.entities[k].final_score);
  }
}

TEST_CASE("sweep surfaces a failing run") {
  auto sc = deterministic_attacker();
  auto s = sc.space;
  sc.profiles[0] = Profile{"attacker",
                           BehaviorModel(s, {"attack", "benign"}, {{"T", {{"benign", 1.0}}}, {"M", {{"attack", 1.0}}}}),
                           sc.profiles[0].evidence};
  sc.entities[0].prior = {{1.0, 1.0}};
  CHECK_THROWS_AS(run_sweep(sc, {1, 2, 3}), ZeroProbabilityObservation);
}

TEST_CASE("median and score pools") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS(median({}));
  const auto runs = run_sweep_serial(mixed_population(1), {1, 2});
  const auto pools = pool_final_scores(runs);
  CHECK(pools.trusted.size() == 12);
  CHECK(pools.adversarial.size() == 6);
}

#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "ztrust/error.hpp"
#include "ztrust/trust_core.hpp"

using namespace ztrust;

namespace {

TypeSpacePtr tm_space() { return std::make_shared<const TypeSpace>(std::vector<std::string>{"T", "M"}, std::vector<std::string>{"T"}); }

struct Models {
  BehaviorModel behavior;
  EvidenceModel evidence;
};

// sigma(benign|T)=0.9, sigma(benign|M)=0.3; h(no_alarm|benign,T)=0.95,
// h(no_alarm|benign,M)=0.4; sigma(attack|T)=0.1, sigma(attack|M)=0.7;
// h(alarm|attack,T)=0.7, h(alarm|attack,M)=0.9.
Models access_models(const TypeSpacePtr& s) {
  BehaviorModel b(s, {"benign", "attack"},
                  {{"T", {{"benign", 0.9}, {"attack", 0.1}}}, {"M", {{"benign", 0.3}, {"attack", 0.7}}}});
  EvidenceModel e(s, {"benign", "attack"}, {"no_alarm", "alarm"},
                  {{"benign", {{"T", {{"no_alarm", 0.95}, {"alarm", 0.05}}}, {"M", {{"no_alarm", 0.4}, {"alarm", 0.6}}}}},
                   {"attack", {{"T", {{"no_alarm", 0.3}, {"alarm", 0.7}}}, {"M", {{"no_alarm", 0.1}, {"alarm", 0.9}}}}}});
  return {std::move(b), std::move(e)};
}

}  // namespace

TEST_CASE("trust_score sums mass over the trusted subset") {
  auto s = tm_space();
  CHECK(trust_score(TrustState(s, {0.8, 0.2})) == doctest::Approx(0.8));

  auto s3 = std::make_shared<const TypeSpace>(std::vector<std::string>{"T1", "T2", "M"},
                                              std::vector<std::string>{"T1", "T2"});
  CHECK(trust_score(TrustState(s3, {0.5, 0.3, 0.2})) == doctest::Approx(0.8));

  auto none = std::make_shared<const TypeSpace>(std::vector<std::string>{"A", "B"}, std::vector<std::string>{});
  CHECK(trust_score(TrustState(none, {0.4, 0.6})) == 0.0);
}

TEST_CASE("trust_score rejects a state from a different type space") {
  auto s = tm_space();
  TypeSpace other({"T", "X"}, {"T"});
  CHECK_THROWS_AS(trust_score(TrustState(s, {0.5, 0.5}), other), StructuralError);
}

TEST_CASE("TypeSpace and TrustState validate their invariants") {
  CHECK_THROWS_AS(TypeSpace({}, {}), ModelError);
  CHECK_THROWS_AS(TypeSpace({"A", "A"}, {}), ModelError);
  CHECK_THROWS_AS(TypeSpace({"A"}, {"B"}), ModelError);
  auto s = tm_space();
  CHECK_THROWS(TrustState(s, {0.5, 0.6}));
  CHECK_THROWS(TrustState(s, {1.2, -0.2}));
  CHECK_THROWS(TrustState(s, {1.0}));
  CHECK_THROWS(TrustState(s, {0.5, 0.5}, -1));
  CHECK_THROWS(TrustState::from_map(s, {{"T", 1.0}}));
}

TEST_CASE("likelihood tables must sum to one per row") {
  auto s = tm_space();
  CHECK_THROWS_AS(BehaviorModel(s, {"a", "b"}, {{"T", {{"a", 0.5}, {"b", 0.4}}}, {"M", {{"a", 1.0}}}}), ModelError);
  CHECK_THROWS_AS(EvidenceModel(s, {"a"}, {"x", "y"}, {{"a", {{"T", {{"x", 1.0}}}, {"M", {{"x", 0.3}}}}}}),
                  ModelError);
  CHECK_NOTHROW(BehaviorModel(s, {"a", "b"}, {{"T", {{"a", 0.5}, {"b", 0.5}}}, {"M", {{"a", 1.0}}}}));
}

TEST_CASE("bayes_update matches the hand-evaluated posteriors") {
  auto s = tm_space();
  auto [b, e] = access_models(s);
  const TrustState prior(s, {0.8, 0.2});

  const auto quiet = bayes_update(prior, Observation{"benign", "no_alarm", 3}, b, e);
  CHECK(trust_score(quiet) == doctest::Approx(0.684 / 0.708).epsilon(1e-12));
  CHECK(trust_score(quiet) == doctest::Approx(0.9661).epsilon(1e-4));
  CHECK(trust_score(quiet) == doctest::Approx(oracle::two_type_posterior(0.8, 0.9, 0.3, 0.95, 0.4)));
  CHECK(quiet.timestamp() == 3);

  const auto alarm = bayes_update(prior, Observation{"attack", "alarm", 1}, b, e);
  CHECK(trust_score(alarm) == doctest::Approx(0.056 / 0.182).epsilon(1e-12));
  CHECK(std::abs(trust_score(alarm) - 0.3077) < 1e-4);

  // input untouched
  CHECK(prior.mass()[0] == 0.8);
}

TEST_CASE("equal likelihoods leave the state unchanged") {
  auto s = tm_space();
  BehaviorModel b(s, {"a", "b"}, {{"T", {{"a", 0.4}, {"b", 0.6}}}, {"M", {{"a", 0.4}, {"b", 0.6}}}});
  EvidenceModel e(s, {"a", "b"}, {"x", "y"},
                  {{"a", {{"T", {{"x", 0.2}, {"y", 0.8}}}, {"M", {{"x", 0.2}, {"y", 0.8}}}}},
                   {"b", {{"T", {{"x", 0.5}, {"y", 0.5}}}, {"M", {{"x", 0.5}, {"y", 0.5}}}}}});
  const TrustState prior(s, {0.37, 0.63});
  const auto post = bayes_update(prior, Observation{"a", "x", 0}, b, e);
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(post.mass()[i] - prior.mass()[i]) <= 1e-12);
}

TEST_CASE("a degenerate prior is absorbing") {
  auto s = tm_space();
  auto [b, e] = access_models(s);
  const auto post = bayes_update(TrustState(s, {1.0, 0.0}), Observation{"attack", "alarm", 0}, b, e);
  CHECK(post.mass()[0] == 1.0);
  CHECK(post.mass()[1] == 0.0);
}

TEST_CASE("impossible observations are reported, not reset") {
  auto s = tm_space();
  BehaviorModel b(s, {"a", "b"}, {{"T", {{"a", 1.0}}}, {"M", {{"a", 0.5}, {"b", 0.5}}}});
  EvidenceModel e(s, {"a", "b"}, {"x"}, {{"a", {{"T", {{"x", 1.0}}}, {"M", {{"x", 1.0}}}}},
                                         {"b", {{"T", {{"x", 1.0}}}, {"M", {{"x", 1.0}}}}}});
  try {
    bayes_update(TrustState(s, {1.0, 0.0}), Observation{"b", "x", 4}, b, e);
    FAIL("expected ZeroProbabilityObservation");
  } catch (const ZeroProbabilityObservation& err) {
    CHECK(err.action() == "b");
    CHECK(err.evidence() == "x");
    CHECK(err.tick() == 4);
  }
  CHECK_THROWS_AS(bayes_update(TrustState(s, {0.5, 0.5}), Observation{"zzz", "x", 0}, b, e), DomainError);
}

TEST_CASE("sequence_update folds bayes_update") {
  auto s = tm_space();
  auto [b, e] = access_models(s);
  const TrustState prior(s, {0.8, 0.2});

  CHECK(sequence_update(prior, {}, b, e) == prior);

  const std::vector<Observation> one{{"benign", "no_alarm", 1}};
  CHECK(sequence_update(prior, one, b, e) == bayes_update(prior, one[0], b, e));

  // Chained by hand: the first posterior becomes the prior of the second update.
  const std::vector<Observation> two{{"benign", "no_alarm", 1}, {"attack", "alarm", 2}};
  const double first = oracle::two_type_posterior(0.8, 0.9, 0.3, 0.95, 0.4);
  const double second = oracle::two_type_posterior(first, 0.1, 0.7, 0.7, 0.9);
  CHECK(trust_score(sequence_update(prior, two, b, e)) == doctest::Approx(second).epsilon(1e-12));
  CHECK(second == doctest::Approx(0.9661 * 0.07 / (0.9661 * 0.07 + 0.0339 * 0.63)).epsilon(1e-3));
}

TEST_CASE("sequence_update reports the failing index and enforces tick order") {
  auto s = tm_space();
  BehaviorModel b(s, {"a", "b"}, {{"T", {{"a", 1.0}}}, {"M", {{"a", 0.5}, {"b", 0.5}}}});
  EvidenceModel e(s, {"a", "b"}, {"x"}, {{"a", {{"T", {{"x", 1.0}}}, {"M", {{"x", 1.0}}}}},
                                         {"b", {{"T", {{"x", 1.0}}}, {"M", {{"x", 1.0}}}}}});
  // From a point mass on T, action b (index 1) has zero likelihood.
  const std::vector<Observation> obs{{"a", "x", 0}, {"b", "x", 1}};
  try {
    sequence_update(TrustState(s, {1.0, 0.0}), obs, b, e);
    FAIL("expected ZeroProbabilityObservation");
  } catch (const ZeroProbabilityObservation& err) {
    REQUIRE(err.index().has_value());
    CHECK(*err.index() == 1);
  }
  const std::vector<Observation> unordered{{"a", "x", 5}, {"a", "x", 4}};
  CHECK_THROWS_AS(sequence_update(TrustState(s, {0.5, 0.5}), unordered, b, e), DomainError);
}

TEST_CASE("compose_prior is a weighted mean") {
  const std::vector<PriorSource> single{{0.7, 1.0}};
  CHECK(compose_prior(single) == doctest::Approx(0.7));
  const std::vector<PriorSource> equal{{0.6, 0.5}, {0.8, 0.5}};
  CHECK(compose_prior(equal) == doctest::Approx(0.7));
  const std::vector<PriorSource> skewed{{0.9, 3.0}, {0.1, 1.0}};
  CHECK(compose_prior(skewed) == doctest::Approx((0.9 * 3.0 + 0.1 * 1.0) / 4.0));
  CHECK_THROWS_AS(compose_prior(std::vector<PriorSource>{}), NoPriorSources);
  CHECK_THROWS_AS(compose_prior(std::vector<PriorSource>{{0.4, 0.0}}), NoPriorSources);
  CHECK_THROWS_AS(compose_prior(std::vector<PriorSource>{{1.4, 1.0}}), DomainError);
}

TEST_CASE("attenuate decays toward the baseline") {
  auto s = tm_space();
  const TrustState state(s, {0.9, 0.1}, 2);
  const TrustState half(s, {0.5, 0.5});

  const auto same = attenuate(state, 10, 0.0, half);
  CHECK(same.mass()[0] == doctest::Approx(0.9));
  CHECK(same.timestamp() == 12);

  const auto one = attenuate(state, 1, std::log(2.0), half);
  CHECK(one.mass()[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(one.mass()[1] == doctest::Approx(0.3).epsilon(1e-12));

  const auto far = attenuate(state, 1000, 1.0, half);
  CHECK(far.mass()[0] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(attenuate(state, -1, 0.1, half), DomainError);
  CHECK_THROWS_AS(attenuate(state, 1, -0.1, half), DomainError);
}

TEST_CASE("property: attenuation contracts monotonically toward the baseline") {
  gen::Engine rng(11);
  auto s = std::make_shared<const TypeSpace>(std::vector<std::string>{"a", "b", "c"}, std::vector<std::string>{"a"});
  for (int trial = 0; trial < 50; ++trial) {
    const TrustState state(s, gen::simplex_point(rng, 3));
    const TrustState base(s, gen::simplex_point(rng, 3));
    const double rate = gen::unit(rng);
    std::vector<double> prev(3, 2.0);
    for (std::int64_t dt = 0; dt < 30; ++dt) {
      const auto out = attenuate(state, dt, rate, base);
      double sum = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        const double gap = std::abs(out.mass()[i] - base.mass()[i]);
        CHECK(gap <= prev[i] + 1e-15);
        prev[i] = gap;
        sum += out.mass()[i];
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
  }
}

namespace {

struct RandomModel {
  TypeSpacePtr space;
  std::vector<std::vector<double>> sigma;
  std::vector<std::vector<std::vector<double>>> h;  // [action][type][evidence]
  BehaviorModel behavior;
  EvidenceModel evidence;
};

RandomModel random_model(gen::Engine& rng, std::size_t nt, std::size_t na, std::size_t ne) {
  std::vector<std::string> types, actions, values, trusted;
  for (std::size_t i = 0; i < nt; ++i) types.push_back("t" + std::to_string(i));
  for (std::size_t i = 0; i < na; ++i) actions.push_back("a" + std::to_string(i));
  for (std::size_t i = 0; i < ne; ++i) values.push_back("e" + std::to_string(i));
  for (std::size_t i = 0; i < nt; ++i)
    if (gen::unit(rng) < 0.5) trusted.push_back(types[i]);
  auto space = std::make_shared<const TypeSpace>(types, trusted);
  std::vector<std::vector<double>> sigma;
  BehaviorModel::Table bt;
  for (std::size_t t = 0; t < nt; ++t) {
    sigma.push_back(gen::simplex_point(rng, na, true));
    for (std::size_t a = 0; a < na; ++a) bt[types[t]][actions[a]] = sigma[t][a];
  }
  std::vector<std::vector<std::vector<double>>> h(na);
  EvidenceModel::Table et;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t t = 0; t < nt; ++t) {
      h[a].push_back(gen::simplex_point(rng, ne, true));
      for (std::size_t e = 0; e < ne; ++e) et[actions[a]][types[t]][values[e]] = h[a][t][e];
    }
  }
  BehaviorModel b(space, actions, bt);
  EvidenceModel ev(space, actions, values, et);
  return {space, std::move(sigma), std::move(h), std::move(b), std::move(ev)};
}

}  // namespace

TEST_CASE("property: expected posterior trust equals prior trust") {
  gen::Engine rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_model(rng, gen::between(rng, 1, 4), gen::between(rng, 1, 3), gen::between(rng, 1, 2));
    const TrustState prior(m.space, gen::simplex_point(rng, m.space->size(), true));
    double expected = 0.0;
    for (std::size_t a = 0; a < m.behavior.actions().size(); ++a) {
      for (std::size_t e = 0; e < m.evidence.evidence_values().size(); ++e) {
        double p = 0.0;
        for (std::size_t t = 0; t < m.space->size(); ++t)
          p += m.h[a][t][e] * m.sigma[t][a] * prior.mass()[t];
        if (p == 0.0) continue;
        expected += p * trust_score(bayes_update(prior, a, e, Observation{}, m.behavior, m.evidence));
      }
    }
    std::vector<bool> trusted;
    for (std::size_t t = 0; t < m.space->size(); ++t) trusted.push_back(m.space->is_trusted(t));
    std::vector<double> pm(prior.mass().begin(), prior.mass().end());
    CHECK(std::abs(expected - trust_score(prior)) <= 1e-9);
    CHECK(std::abs(oracle::expected_posterior_trust(pm, trusted, m.sigma, m.h) - trust_score(prior)) <= 1e-9);
  }
}

TEST_CASE("property: sequence_update splits at any point") {
  gen::Engine rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_model(rng, 3, 3, 2);
    // Strictly positive tables keep every observation possible.
    const TrustState prior(m.space, gen::simplex_point(rng, 3));
    std::vector<Observation> obs;
    const std::size_t n = gen::between(rng, 0, 8);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = gen::between(rng, 0, 2), e = gen::between(rng, 0, 1);
      obs.push_back({m.behavior.actions()[a], m.evidence.evidence_values()[e], static_cast<std::int64_t>(i)});
    }
    const std::size_t cut = gen::between(rng, 0, n);
    try {
      const auto whole = sequence_update(prior, obs, m.behavior, m.evidence);
      const std::span<const Observation> all(obs);
      const auto left = sequence_update(prior, all.first(cut), m.behavior, m.evidence);
      const auto right = sequence_update(left, all.subspan(cut), m.behavior, m.evidence);
      for (std::size_t t = 0; t < 3; ++t) CHECK(whole.mass()[t] == doctest::Approx(right.mass()[t]).epsilon(1e-12));
    } catch (const ZeroProbabilityObservation&) {
      // sparse tables can make a random sequence impossible; both sides agree on that
      const std::span<const Observation> all(obs);
      bool failed = false;
      try {
        auto left = sequence_update(prior, all.first(cut), m.behavior, m.evidence);
        sequence_update(left, all.subspan(cut), m.behavior, m.evidence);
      } catch (const ZeroProbabilityObservation&) {
        failed = true;
      }
      CHECK(failed);
    }
  }
}

TEST_CASE("property: dominant trusted likelihood raises the score") {
  gen::Engine rng(5);
  auto s = std::make_shared<const TypeSpace>(std::vector<std::string>{"g1", "g2", "b1"},
                                             std::vector<std::string>{"g1", "g2"});
  for (int trial = 0; trial < 100; ++trial) {
    // Action "x" with evidence "ok": trusted joint likelihoods drawn above
    // every untrusted one.
    const double bad = 0.05 + 0.4 * gen::unit(rng);
    const double g1 = bad + 0.01 + (0.95 - bad) * gen::unit(rng);
    const double g2 = bad + 0.01 + (0.95 - bad) * gen::unit(rng);
    BehaviorModel b(s, {"x", "y"},
                    {{"g1", {{"x", g1}, {"y", 1 - g1}}}, {"g2", {{"x", g2}, {"y", 1 - g2}}}, {"b1", {{"x", bad}, {"y", 1 - bad}}}});
    EvidenceModel e(s, {"x", "y"}, {"ok"},
                    {{"x", {{"g1", {{"ok", 1.0}}}, {"g2", {{"ok", 1.0}}}, {"b1", {{"ok", 1.0}}}}},
                     {"y", {{"g1", {{"ok", 1.0}}}, {"g2", {{"ok", 1.0}}}, {"b1", {{"ok", 1.0}}}}}});
    const TrustState prior(s, gen::simplex_point(rng, 3));
    const double before = trust_score(prior);
    const double after = trust_score(bayes_update(prior, Observation{"x", "ok", 0}, b, e));
    CHECK(after > before);
  }
}

TEST_CASE("from_score spreads mass within the trusted and untrusted groups") {
  auto s = std::make_shared<const TypeSpace>(std::vector<std::string>{"a", "b", "c"}, std::vector<std::string>{"a", "b"});
  const auto st = TrustState::from_score(s, 0.6);
  CHECK(st.mass()[0] == doctest::Approx(0.3));
  CHECK(st.mass()[1] == doctest::Approx(0.3));
  CHECK(st.mass()[2] == doctest::Approx(0.4));
  CHECK(trust_score(st) == doctest::Approx(0.6));
}

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pds/search.hpp"
#include "pds/verify.hpp"

using namespace pds;

TEST_CASE("alpha defaults to (n-1)k") {
  CHECK(default_alpha(Params(5, 2, 0, 1)) == 8);
  CHECK(default_alpha(Params(64, 18, 2, 6)) == 63 * 18);
  SearchConfig c;
  CHECK(effective_alpha(c, Params(13, 6, 2, 3)) == 72);
  c.alpha = 5;
  CHECK(effective_alpha(c, Params(13, 6, 2, 3)) == 5);
}

TEST_CASE("propose_swap") {
  const GroupTable g = cyclic_group(11);
  // D = G \ {1} minus one element (k = n - 2).
  std::vector<Element> d;
  for (Element x = 1; x < 10; ++x) d.push_back(x);
  const SearchState s(g, Params(11, 9, 0, 0), d);

  SUBCASE("valid fraction over a full sweep is exactly (n-1-k)/(n-1)") {
    std::uint64_t valid = 0;
    const std::uint64_t total = 10 * 9;
    for (std::uint64_t step = 0; step < total; ++step) {
      const Proposal p = sweep_proposal(s, step);
      valid += p.valid;
      CHECK(p.in != g.identity());
      CHECK(s.contains(p.out));
      if (p.valid) CHECK(p.in == 10);
    }
    CHECK(valid == 9);  // k (n-1-k) of the (n-1)k proposals
  }

  SUBCASE("random proposals hit the valid fraction in distribution") {
    Rng rng(3);
    const int samples = 200000;
    int valid = 0;
    for (int i = 0; i < samples; ++i) {
      const Proposal p = propose_swap(s, rng);
      CHECK(p.in != g.identity());
      if (p.valid) CHECK(p.out != p.in);
      valid += p.valid;
    }
    const double expected = samples / 10.0;
    const double sigma = std::sqrt(samples * 0.1 * 0.9);
    CHECK(std::abs(valid - expected) < 5 * sigma);
  }

  SUBCASE("fixed seed gives a fixed proposal sequence") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
      const Proposal p = propose_swap(s, a), q = propose_swap(s, b);
      CHECK(p.out == q.out);
      CHECK(p.in == q.in);
    }
  }
}

TEST_CASE("random_start draws a k-subset of G \\ {1}") {
  const GroupTable g = dihedral_group(6);
  Rng rng(1);
  std::vector<int> seen(g.order(), 0);
  for (int t = 0; t < 2000; ++t) {
    auto d = random_start(g, 5, rng);
    std::sort(d.begin(), d.end());
    CHECK(std::adjacent_find(d.begin(), d.end()) == d.end());
    CHECK(d.size() == 5);
    for (Element x : d) ++seen[x];
  }
  CHECK(seen[g.identity()] == 0);
  for (Element x = 1; x < g.order(); ++x) CHECK(seen[x] > 0);
}

TEST_CASE("run_trial") {
  const GroupTable z13 = cyclic_group(13);
  const Params p(13, 6, 2, 3);
  SearchConfig config;
  config.base_seed = 77;

  SUBCASE("deterministic in seed and index") {
    const TrialResult a = run_trial(z13, p, config, 4);
    const TrialResult b = run_trial(z13, p, config, 4);
    CHECK(a == b);
    CHECK(a.seed == 81);
    CHECK(std::is_sorted(a.final_set.begin(), a.final_set.end()));
    CHECK((a.final_error == 0) == (a.converged_by == Convergence::ZeroError));
  }

  SUBCASE("final error never exceeds the starting error") {
    for (std::uint64_t t = 0; t < 50; ++t) {
      Rng rng(config.base_seed + t);
      const auto start = random_start(z13, 6, rng);
      const TrialResult r = run_trial(z13, p, config, t);
      CHECK(r.final_error <= oracle::error(z13, p, start));
      CHECK(r.final_error == oracle::error(z13, p, r.final_set));
      if (r.improving_moves == 0) CHECK(r.final_set == [&] { auto s = start; std::sort(s.begin(), s.end()); return s; }());
    }
  }

  SUBCASE("a planted PDS returns immediately") {
    const std::vector<Element> residues = {1, 3, 4, 9, 10, 12};
    SearchState state(z13, p, residues);
    Rng rng(0);
    const TrialResult r = climb(state, config, rng, 0);
    CHECK(r.proposals_made == 0);
    CHECK(r.hit());
    CHECK(r.converged_by == Convergence::ZeroError);
  }

  SUBCASE("mismatched order is rejected") {
    CHECK_THROWS_AS(run_trial(cyclic_group(12), p, config, 0), StateError);
  }
}

TEST_CASE("sweep mode ends only at true local minima") {
  struct Case {
    GroupTable group;
    Params params;
  };
  const std::vector<Case> cases = {
      {cyclic_group(5), Params(5, 2, 0, 1)},
      {cyclic_group(13), Params(13, 6, 2, 3)},
      {direct_product(cyclic_group(4), cyclic_group(4)), Params(16, 6, 2, 2)},
      {dihedral_group(8), Params(16, 5, 0, 2)},
  };
  for (const auto& c : cases) {
    SearchConfig config;
    config.proposal_mode = ProposalMode::Sweep;
    for (std::uint64_t t = 0; t < 40; ++t) {
      const TrialResult r = run_trial(c.group, c.params, config, t);
      if (r.hit()) continue;
      CHECK(r.converged_by == Convergence::AlphaExhausted);
      // Exhaustive neighbour scan by full recomputation.
      CHECK(oracle::best_neighbour_error(c.group, c.params, r.final_set) >= r.final_error);
    }
  }
}

TEST_CASE("Z5 terminal states have no improving neighbour") {
  const GroupTable z5 = cyclic_group(5);
  const Params p(5, 2, 0, 1);
  SearchConfig config;
  config.proposal_mode = ProposalMode::Sweep;
  for (std::uint64_t t = 0; t < 30; ++t) {
    const TrialResult r = run_trial(z5, p, config, t);
    if (r.hit()) continue;
    CHECK(oracle::best_neighbour_error(z5, p, r.final_set) >= r.final_error);
  }
}

TEST_CASE("run_search") {
  const GroupTable z13 = cyclic_group(13);
  const Params p(13, 6, 2, 3);

  SUBCASE("zero budget") {
    SearchConfig config;
    config.max_trials = 0;
    const SearchOutcome o = run_search(z13, p, config);
    CHECK(o.trials.empty());
    CHECK(o.summary.hits == 0);
    CHECK(o.summary.trials_used == 0);
  }

  SUBCASE("Paley 13 is found and verifies") {
    SearchConfig config;
    config.max_trials = 1000;
    config.stop_mode = StopMode::CollectAll;
    config.worker_count = 4;
    const SearchOutcome o = run_search(z13, p, config);
    CHECK(o.summary.trials_used == 1000);
    REQUIRE(o.summary.hits >= 1);
    for (const TrialResult* hit : o.hits()) CHECK(verify_pds(z13, p, hit->final_set).ok());
  }

  SUBCASE("first-hit with a planted start") {
    const std::vector<Element> residues = {1, 3, 4, 9, 10, 12};
    StartProvider plant = [&](std::uint64_t trial) -> std::optional<std::vector<Element>> {
      if (trial == 0) return residues;
      return std::nullopt;
    };
    SearchConfig config;
    config.max_trials = 1000;
    config.worker_count = 1;
    const SearchOutcome single = run_search(z13, p, config, plant);
    CHECK(single.summary.trials_used == 1);
    CHECK(single.summary.hits == 1);
    CHECK(single.trials.front().final_set == residues);

    config.worker_count = 4;
    const SearchOutcome multi = run_search(z13, p, config, plant);
    CHECK(multi.summary.hits >= 1);
    CHECK(multi.trials.front().trial_index == 0);
    CHECK(multi.trials.front().hit());
    CHECK(multi.summary.trials_used < 1000);
  }

  SUBCASE("collect-all results do not depend on worker count") {
    SearchConfig config;
    config.max_trials = 200;
    config.base_seed = 12345;
    config.stop_mode = StopMode::CollectAll;
    config.worker_count = 1;
    const SearchOutcome one = run_search(z13, p, config);
    config.worker_count = 5;
    const SearchOutcome five = run_search(z13, p, config);
    CHECK(one.trials == five.trials);
    CHECK(one.summary.hits == five.summary.hits);
  }

  SUBCASE("first_trial offsets the seeds") {
    SearchConfig config;
    config.max_trials = 3;
    config.first_trial = 10;
    config.stop_mode = StopMode::CollectAll;
    const SearchOutcome o = run_search(z13, p, config);
    REQUIRE(o.trials.size() == 3);
    CHECK(o.trials[0].trial_index == 10);
    CHECK(o.trials[0] == run_trial(z13, p, config, 10));
  }
}

TEST_CASE("schedule presets") {
  using V = std::vector<std::uint64_t>;
  CHECK(schedule_preset(100, 10, true) == V{50000});
  CHECK(schedule_preset(64, 18, true) == V{5 * 64 * 64});
  CHECK(schedule_preset(144, 30, true) == V{20736});
  CHECK(schedule_preset(144, 52, true) == V{20736, 41472, 41472});
  CHECK(schedule_preset(144, 34, false) == V{20736, 41472, 41472});
  CHECK(schedule_preset(147, 66, false) == V{2 * 147 * 147});
  CHECK_FALSE(schedule_preset(147, 66, true).has_value());
  CHECK(schedule_preset(170, 10, false) == V{2 * 170 * 170, 2 * 170 * 170});
  CHECK(schedule_preset(200, 10, false) == V{2 * 200 * 200});
  CHECK_FALSE(schedule_preset(216, 10, false).has_value());
  CHECK_FALSE(schedule_preset(217, 10, false).has_value());
  CHECK(schedule_preset(238, 10, false) == V{2 * 238 * 238});
  CHECK_FALSE(schedule_preset(239, 10, false).has_value());
  CHECK_FALSE(schedule_preset(1, 1, true).has_value());
}

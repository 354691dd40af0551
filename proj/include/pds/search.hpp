#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "pds/group.hpp"
#include "pds/params.hpp"
#include "pds/search_state.hpp"

namespace pds {

enum class StopMode { FirstHit, CollectAll };

enum class ProposalMode {
  Random,  // out uniform over D, in uniform over G \ {1}, with replacement
  Sweep,   // cycle through all (n-1)k (slot, candidate) pairs in fixed order
};

struct SearchConfig {
  /// Consecutive invalid or non-improving proposals that end a trial;
  /// 0 means the default (n-1)k.
  std::uint64_t alpha = 0;
  std::uint64_t max_trials = 1000;
  std::uint64_t base_seed = 1;
  /// Index of the first trial; trial t is seeded with base_seed + t.
  std::uint64_t first_trial = 0;
  StopMode stop_mode = StopMode::FirstHit;
  ProposalMode proposal_mode = ProposalMode::Random;
  unsigned worker_count = 1;
};

std::uint64_t default_alpha(const Params& params);
std::uint64_t effective_alpha(const SearchConfig& config, const Params& params);

enum class Convergence { AlphaExhausted, ZeroError };

struct TrialResult {
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;
  std::int64_t final_error = 0;
  std::vector<Element> final_set;  // sorted, 0-indexed
  std::uint64_t proposals_made = 0;
  std::uint64_t improving_moves = 0;
  Convergence converged_by = Convergence::AlphaExhausted;

  bool hit() const noexcept { return final_error == 0; }
  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

using Rng = std::mt19937_64;

struct Proposal {
  Element out;
  Element in;
  bool valid;  // false when `in` is already a member
};

/// Random proposal: out uniform over the k members, in uniform over the
/// n - 1 non-identity elements.
Proposal propose_swap(const SearchState& state, Rng& rng);

/// Proposal number `step` of the deterministic sweep.
Proposal sweep_proposal(const SearchState& state, std::uint64_t step);

/// Uniform k-subset of G \ {1} by partial Fisher-Yates shuffle.
std::vector<Element> random_start(const GroupTable& group, std::size_t k, Rng& rng);

/// Hill climbs `state` in place with first-improvement moves until the error
/// is zero or alpha consecutive proposals fail.
TrialResult climb(SearchState& state, const SearchConfig& config, Rng& rng,
                  std::uint64_t trial_index);

/// One trial from a uniform random start, deterministic in
/// (config.base_seed, trial_index).
TrialResult run_trial(const GroupTable& group, const Params& params, const SearchConfig& config,
                      std::uint64_t trial_index);

/// Optional override of a trial's initial set (used to plant known starts).
using StartProvider = std::function<std::optional<std::vector<Element>>(std::uint64_t trial)>;

struct SearchSummary {
  std::uint64_t trials_used = 0;
  std::uint64_t hits = 0;
  std::int64_t best_error = -1;  // -1 when no trial ran
  double wall_seconds = 0.0;
};

struct SearchOutcome {
  std::vector<TrialResult> trials;  // sorted by trial index
  SearchSummary summary;

  std::vector<const TrialResult*> hits() const;
};

/// Runs trials config.first_trial .. first_trial + max_trials - 1 on
/// worker_count threads. In first-hit mode, no new trial starts after a hit
/// is recorded; trials already running finish and are reported.
SearchOutcome run_search(const GroupTable& group, const Params& params, const SearchConfig& config,
                         const StartProvider& start = {});

/// Trial budgets per pass for the parameter-sweep schedule. nullopt when no
/// preset covers (n, k, srg_known).
std::optional<std::vector<std::uint64_t>> schedule_preset(std::int64_t n, std::int64_t k,
                                                          bool srg_known);

}  // namespace pds

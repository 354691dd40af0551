#include "pds/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

namespace pds {

namespace {

// Unbiased draw from [0, bound) by rejection; the mapping from generator
// output to value is fixed so seeded runs match across standard libraries.
std::uint64_t bounded(Rng& rng, std::uint64_t bound) {
  static_assert(Rng::min() == 0 && Rng::max() == ~std::uint64_t{0});
  const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;  // 2^64 mod bound
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return x % bound;
}

Element nonidentity_at(const GroupTable& group, std::uint64_t index) {
  const auto e = static_cast<std::uint64_t>(group.identity());
  return static_cast<Element>(index < e ? index : index + 1);
}

}  // namespace

std::uint64_t default_alpha(const Params& params) {
  return static_cast<std::uint64_t>((params.n() - 1) * params.k());
}

std::uint64_t effective_alpha(const SearchConfig& config, const Params& params) {
  return config.alpha == 0 ? default_alpha(params) : config.alpha;
}

Proposal propose_swap(const SearchState& state, Rng& rng) {
  const auto roster = state.roster();
  const Element out = roster[bounded(rng, roster.size())];
  const Element in = nonidentity_at(state.group(), bounded(rng, state.group().order() - 1));
  return {out, in, !state.contains(in)};
}

Proposal sweep_proposal(const SearchState& state, std::uint64_t step) {
  const auto roster = state.roster();
  const std::uint64_t candidates = state.group().order() - 1;
  const Element out = roster[(step / candidates) % roster.size()];
  const Element in = nonidentity_at(state.group(), step % candidates);
  return {out, in, !state.contains(in)};
}

std::vector<Element> random_start(const GroupTable& group, std::size_t k, Rng& rng) {
  std::vector<Element> pool;
  pool.reserve(group.order() - 1);
  for (Element g = 0; g < group.order(); ++g) {
    if (g != group.identity()) pool.push_back(g);
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + bounded(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

TrialResult climb(SearchState& state, const SearchConfig& config, Rng& rng,
                  std::uint64_t trial_index) {
  TrialResult result;
  result.trial_index = trial_index;
  const std::uint64_t alpha = effective_alpha(config, state.params());

  std::uint64_t failures = 0;
  std::uint64_t step = 0;
  while (state.error() != 0 && failures < alpha) {
    const Proposal p = config.proposal_mode == ProposalMode::Sweep ? sweep_proposal(state, step++)
                                                                   : propose_swap(state, rng);
    ++result.proposals_made;
    if (!p.valid) {
      ++failures;
      continue;
    }
    if (state.swap_delta(p.out, p.in) < 0) {
      state.apply_swap(p.out, p.in);
      ++result.improving_moves;
      failures = 0;
    } else {
      ++failures;
    }
  }

  result.final_error = state.error();
  result.final_set = state.sorted_set();
  result.converged_by = state.error() == 0 ? Convergence::ZeroError : Convergence::AlphaExhausted;
  return result;
}

namespace {

TrialResult run_one(const GroupTable& group, const Params& params, const SearchConfig& config,
                    std::uint64_t trial_index, const StartProvider& start) {
  const std::uint64_t seed = config.base_seed + trial_index;
  Rng rng(seed);
  std::optional<std::vector<Element>> planted;
  if (start) planted = start(trial_index);
  const std::vector<Element> initial =
      planted ? std::move(*planted) : random_start(group, static_cast<std::size_t>(params.k()), rng);
  SearchState state(group, params, initial);
  TrialResult result = climb(state, config, rng, trial_index);
  result.seed = seed;
  return result;
}

void require_compatible(const GroupTable& group, const Params& params) {
  if (static_cast<std::int64_t>(group.order()) != params.n()) {
    throw StateError(StateError::Kind::SizeMismatch,
                     "group order " + std::to_string(group.order()) + " does not match params " +
                         params.to_string());
  }
}

}  // namespace

TrialResult run_trial(const GroupTable& group, const Params& params, const SearchConfig& config,
                      std::uint64_t trial_index) {
  require_compatible(group, params);
  return run_one(group, params, config, trial_index, {});
}

std::vector<const TrialResult*> SearchOutcome::hits() const {
  std::vector<const TrialResult*> out;
  for (const auto& t : trials) {
    if (t.hit()) out.push_back(&t);
  }
  return out;
}

SearchOutcome run_search(const GroupTable& group, const Params& params, const SearchConfig& config,
                         const StartProvider& start) {
  require_compatible(group, params);
  const auto started = std::chrono::steady_clock::now();

  SearchOutcome outcome;
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex sink_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      while (!stop.load(std::memory_order_acquire)) {
        const std::uint64_t offset = next.fetch_add(1, std::memory_order_relaxed);
        if (offset >= config.max_trials) break;
        TrialResult r = run_one(group, params, config, config.first_trial + offset, start);
        const bool hit = r.hit();
        {
          std::lock_guard lock(sink_mutex);
          outcome.trials.push_back(std::move(r));
        }
        if (hit && config.stop_mode == StopMode::FirstHit) stop.store(true, std::memory_order_release);
      }
    } catch (...) {
      std::lock_guard lock(sink_mutex);
      if (!failure) failure = std::current_exception();
      stop.store(true, std::memory_order_release);
    }
  };

  const unsigned workers = std::max(1u, config.worker_count);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(outcome.trials.begin(), outcome.trials.end(),
            [](const TrialResult& a, const TrialResult& b) { return a.trial_index < b.trial_index; });
  auto& s = outcome.summary;
  s.trials_used = outcome.trials.size();
  for (const auto& t : outcome.trials) {
    if (t.hit()) ++s.hits;
    if (s.best_error < 0 || t.final_error < s.best_error) s.best_error = t.final_error;
  }
  s.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return outcome;
}

std::optional<std::vector<std::uint64_t>> schedule_preset(std::int64_t n, std::int64_t k,
                                                          bool srg_known) {
  if (n < 2) return std::nullopt;
  const auto sq = static_cast<std::uint64_t>(n * n);
  if (n < 144) return std::vector<std::uint64_t>{5 * sq};
  if (n == 144) {
    if (k < 34) return std::vector<std::uint64_t>{sq};
    return std::vector<std::uint64_t>{sq, 2 * sq, 2 * sq};
  }
  if (srg_known) return std::nullopt;
  if (n < 162) return std::vector<std::uint64_t>{2 * sq};
  if (n < 186) return std::vector<std::uint64_t>{2 * sq, 2 * sq};
  if (n < 239 && n != 216 && n != 217) return std::vector<std::uint64_t>{2 * sq};
  return std::nullopt;
}

}  // namespace pds

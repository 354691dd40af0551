#include "pds/cli.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace pds::cli {

namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Splits "A x B" of a product spec: the left operand is a primitive spec, so
// the first 'x' after the prefix separates them.
GroupTable parse_spec(std::string_view spec) {
  if (starts_with(spec, "product:")) {
    const std::string_view body = spec.substr(8);
    const auto split = body.find('x');
    if (split == std::string_view::npos) {
      throw std::invalid_argument("product spec needs <spec>x<spec>: '" + std::string(spec) + "'");
    }
    return direct_product(parse_spec(body.substr(0, split)), parse_spec(body.substr(split + 1)));
  }
  if (starts_with(spec, "cyclic:")) return cyclic_group(parse_count(spec.substr(7), "cyclic order"));
  if (starts_with(spec, "dihedral:")) {
    return dihedral_group(parse_count(spec.substr(9), "dihedral parameter"));
  }
  if (starts_with(spec, "ea2:")) {
    return elementary_abelian_2(static_cast<unsigned>(parse_count(spec.substr(4), "rank")));
  }
  throw std::invalid_argument("unknown group spec '" + std::string(spec) + "'");
}

}  // namespace

GroupTable parse_group_spec(std::string_view spec) {
  GroupTable g = parse_spec(spec);
  const std::size_t n = g.order();
  return GroupTable(n, {g.products().begin(), g.products().end()}, g.identity(),
                    {g.inverses().begin(), g.inverses().end()}, std::string(spec));
}

std::vector<Element> parse_element_list(std::string_view text, std::size_t order, bool one_indexed) {
  std::vector<Element> out;
  std::size_t pos = 0;
  constexpr std::string_view separators = " \t\r\n,[]{}()";
  while (pos < text.size()) {
    const auto begin = text.find_first_not_of(separators, pos);
    if (begin == std::string_view::npos) break;
    auto end = text.find_first_of(separators, begin);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view token = text.substr(begin, end - begin);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw std::invalid_argument("bad element '" + std::string(token) + "'");
    }
    const long long lo = one_indexed ? 1 : 0;
    if (value < lo || value >= static_cast<long long>(order) + lo) {
      throw std::invalid_argument("element " + std::string(token) + " out of range for order " +
                                  std::to_string(order) +
                                  (one_indexed ? " (1-indexed)" : " (0-indexed)"));
    }
    out.push_back(static_cast<Element>(value - lo));
    pos = end;
  }
  std::vector<Element> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (const auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw std::invalid_argument("duplicate element " + std::to_string(*dup + (one_indexed ? 1 : 0)));
  }
  return out;
}

nlohmann::ordered_json certificate_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["group_label"] = cert.group_label;
  j["n"] = cert.params.n();
  j["k"] = cert.params.k();
  j["lambda"] = cert.params.lambda();
  j["mu"] = cert.params.mu();
  j["pds_1indexed"] = cert.emitted_1indexed();
  j["pds_pass"] = cert.pds_pass();
  j["srg_pass"] = cert.srg_pass();
  if (!cert.pds_pass()) j["pds_failures"] = cert.pds_check.summary();
  if (!cert.srg_pass()) j["srg_failure"] = cert.srg_check.detail;
  return j;
}

RunRecord execute_search(const GroupTable& group, const Params& params, const SearchRequest& request) {
  RunRecord record{group.label(), params, request.config, request.passes, {}, 0, -1, 0.0};
  if (record.passes.empty()) record.passes.push_back(request.config.max_trials);
  record.config.alpha = effective_alpha(request.config, params);

  SearchConfig config = record.config;
  for (std::uint64_t budget : record.passes) {
    config.max_trials = budget;
    const SearchOutcome outcome = run_search(group, params, config);
    record.trials_used += outcome.summary.trials_used;
    record.wall_seconds += outcome.summary.wall_seconds;
    if (outcome.summary.best_error >= 0 &&
        (record.best_error < 0 || outcome.summary.best_error < record.best_error)) {
      record.best_error = outcome.summary.best_error;
    }
    for (const TrialResult* hit : outcome.hits()) {
      Certificate cert = certify(group, params, hit->final_set);
      if (!cert.passed()) {
        throw std::logic_error("zero-error set from trial " + std::to_string(hit->trial_index) +
                               " failed certification: " + cert.pds_check.summary() + " " +
                               cert.srg_check.detail);
      }
      record.hits.push_back(
          {hit->trial_index, hit->seed, hit->proposals_made, hit->improving_moves, std::move(cert)});
    }
    config.first_trial += budget;
    if (!record.hits.empty() && config.stop_mode == StopMode::FirstHit) break;
  }
  return record;
}

nlohmann::ordered_json run_record_json(const RunRecord& record, bool include_runtime) {
  nlohmann::ordered_json j;
  j["group_label"] = record.group_label;
  j["n"] = record.params.n();
  j["k"] = record.params.k();
  j["lambda"] = record.params.lambda();
  j["mu"] = record.params.mu();
  j["config"] = {
      {"alpha", record.config.alpha},
      {"base_seed", record.config.base_seed},
      {"first_trial", record.config.first_trial},
      {"max_trials", record.passes},
      {"stop", record.config.stop_mode == StopMode::FirstHit ? "first" : "all"},
      {"proposal", record.config.proposal_mode == ProposalMode::Random ? "random" : "sweep"},
  };
  j["trials_used"] = record.trials_used;
  j["best_error"] = record.best_error;
  j["hit_count"] = record.hits.size();
  auto hits = nlohmann::ordered_json::array();
  for (const auto& h : record.hits) {
    nlohmann::ordered_json entry;
    entry["trial_index"] = h.trial_index;
    entry["seed"] = h.seed;
    entry["proposals"] = h.proposals;
    entry["improving_moves"] = h.improving_moves;
    entry["certificate"] = certificate_json(h.certificate);
    hits.push_back(std::move(entry));
  }
  j["hits"] = std::move(hits);
  if (include_runtime) {
    j["runtime"] = {{"workers", record.config.worker_count}, {"wall_time_s", record.wall_seconds}};
  }
  return j;
}

nlohmann::ordered_json feasible_json(const FeasibleParams& f) {
  return {{"n", f.params.n()},
          {"k", f.params.k()},
          {"lambda", f.params.lambda()},
          {"mu", f.params.mu()},
          {"m_plus", f.multiplicity_plus},
          {"m_minus", f.multiplicity_minus},
          {"conference", f.conference}};
}

}  // namespace pds::cli

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pds/group.hpp"
#include "pds/params.hpp"
#include "pds/search.hpp"
#include "pds/verify.hpp"

namespace pds::cli {

inline constexpr int kExitHit = 0;
inline constexpr int kExitNoHit = 1;
inline constexpr int kExitError = 2;

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "PDS_WORKERS";

/// Group spec grammar:
///   cyclic:m | dihedral:m | ea2:d | product:<spec>x<spec>
/// `product` is right-associative: product:cyclic:2xproduct:cyclic:2xcyclic:2.
GroupTable parse_group_spec(std::string_view spec);

/// Parses an element list such as "[2, 3, 5]" or "2 3 5". When one_indexed,
/// subtracts 1. Throws std::invalid_argument on out-of-range or duplicate
/// elements.
std::vector<Element> parse_element_list(std::string_view text, std::size_t order, bool one_indexed);

nlohmann::ordered_json certificate_json(const Certificate& cert);

struct HitRecord {
  std::uint64_t trial_index;
  std::uint64_t seed;
  std::uint64_t proposals;
  std::uint64_t improving_moves;
  Certificate certificate;
};

struct RunRecord {
  std::string group_label;
  Params params;
  SearchConfig config;
  std::vector<std::uint64_t> passes;  // trial budget per pass
  std::vector<HitRecord> hits;
  std::uint64_t trials_used = 0;
  std::int64_t best_error = -1;
  double wall_seconds = 0.0;
};

struct SearchRequest {
  SearchConfig config;
  /// Per-pass budgets; empty means one pass of config.max_trials.
  std::vector<std::uint64_t> passes;
};

/// Runs the passes in order (trial indices continue across passes), certifies
/// every zero-error trial and returns the record. Throws std::logic_error if
/// a zero-error set fails certification, so an unverified hit is never
/// recorded.
RunRecord execute_search(const GroupTable& group, const Params& params, const SearchRequest& request);

/// Worker count and wall time go in a "runtime" block only when
/// include_runtime is set; without it the document depends only on the
/// inputs and seeds.
nlohmann::ordered_json run_record_json(const RunRecord& record, bool include_runtime);

nlohmann::ordered_json feasible_json(const FeasibleParams& f);

}  // namespace pds::cli

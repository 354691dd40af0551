#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pds/group.hpp"
#include "pds/params.hpp"

namespace pds {

class StateError : public std::invalid_argument {
 public:
  enum class Kind {
    SizeMismatch,       // table order differs from params.n
    WrongCardinality,   // |D| != k
    IdentityInSet,
    Duplicate,
    OutOfRange,
    OutNotMember,       // swap removes an element not in D
    InAlreadyMember,    // swap inserts an element already in D
    InIsIdentity,
  };

  StateError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A k-subset D of G \ {1} together with the coefficient vector of the
/// group-ring square D^2 (all k^2 ordered products, diagonal included) and
/// the cached error
///
///   e(D) = sum_g (coeff[g] - target(g))^2,
///   target(g) = k if g = 1, lambda if g in D, mu otherwise.
///
/// e(D) = 0 exactly when D is a regular PDS with the given parameters.
/// Single owner; the GroupTable must outlive the state.
class SearchState {
 public:
  /// Full O(k^2 + n) build.
  SearchState(const GroupTable& group, const Params& params, std::span<const Element> set);

  const GroupTable& group() const noexcept { return *group_; }
  const Params& params() const noexcept { return params_; }

  std::int64_t error() const noexcept { return error_; }
  bool contains(Element g) const noexcept { return member_[g] != 0; }
  std::span<const Element> roster() const noexcept { return roster_; }
  std::span<const std::int32_t> coefficients() const noexcept { return coeff_; }

  /// Slot of a member in roster(); apply_swap puts `in` in the slot `out` vacated.
  std::size_t slot_of(Element member) const noexcept { return slot_[member]; }

  std::int64_t target(Element g) const noexcept;

  /// e(D') - e(D) for D' = D \ {out} u {in}, in O(k). Does not change the set.
  /// Throws StateError on an invalid swap.
  std::int64_t swap_delta(Element out, Element in) const;

  /// Performs the swap in O(k) and returns the error change.
  std::int64_t apply_swap(Element out, Element in);

  /// Sorted copy of the roster.
  std::vector<Element> sorted_set() const;

  /// Recomputes e(D) from scratch; used by tests and debug checks.
  std::int64_t recompute_error() const;

 private:
  void check_swap(Element out, Element in) const;
  // Accumulates the coefficient changes of a swap into scratch_ and returns
  // the error difference.
  std::int64_t accumulate_delta(Element out, Element in) const;

  const GroupTable* group_;
  Params params_;
  std::vector<std::uint8_t> member_;
  std::vector<Element> roster_;
  std::vector<std::uint32_t> slot_;
  std::vector<std::int32_t> coeff_;
  std::int64_t error_ = 0;

  // Scratch for swap evaluation; logically const.
  mutable std::vector<std::int32_t> scratch_;
  mutable std::vector<std::uint32_t> stamp_;
  mutable std::vector<Element> touched_;
  mutable std::uint32_t epoch_ = 0;
};

/// Full-scan error of a set, independent of SearchState's incremental
/// bookkeeping: O(k^2 + n).
std::int64_t full_error(const GroupTable& group, const Params& params,
                        std::span<const Element> set);

}  // namespace pds

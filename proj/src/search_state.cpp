#include "pds/search_state.hpp"

#include <algorithm>
#include <limits>

namespace pds {

namespace {

std::int64_t square(std::int64_t x) { return x * x; }

}  // namespace

SearchState::SearchState(const GroupTable& group, const Params& params,
                         std::span<const Element> set)
    : group_(&group), params_(params) {
  using Kind = StateError::Kind;
  const std::size_t n = group.order();
  if (static_cast<std::int64_t>(n) != params.n()) {
    throw StateError(Kind::SizeMismatch, "group order " + std::to_string(n) +
                                             " does not match params " + params.to_string());
  }
  if (static_cast<std::int64_t>(set.size()) != params.k()) {
    throw StateError(Kind::WrongCardinality, "set has " + std::to_string(set.size()) +
                                                 " elements, expected k = " +
                                                 std::to_string(params.k()));
  }

  member_.assign(n, 0);
  slot_.assign(n, 0);
  roster_.reserve(set.size());
  for (Element g : set) {
    if (g >= n) throw StateError(Kind::OutOfRange, "element " + std::to_string(g) + " out of range");
    if (g == group.identity()) throw StateError(Kind::IdentityInSet, "identity in set");
    if (member_[g]) throw StateError(Kind::Duplicate, "duplicate element " + std::to_string(g));
    member_[g] = 1;
    slot_[g] = static_cast<std::uint32_t>(roster_.size());
    roster_.push_back(g);
  }

  coeff_.assign(n, 0);
  for (Element a : roster_) {
    const auto row = group.row(a);
    for (Element b : roster_) ++coeff_[row[b]];
  }
  error_ = 0;
  for (Element g = 0; g < n; ++g) error_ += square(coeff_[g] - target(g));

  scratch_.assign(n, 0);
  stamp_.assign(n, 0);
  touched_.reserve(4 * roster_.size() + 4);
}

std::int64_t SearchState::target(Element g) const noexcept {
  if (g == group_->identity()) return params_.k();
  return member_[g] ? params_.lambda() : params_.mu();
}

void SearchState::check_swap(Element out, Element in) const {
  using Kind = StateError::Kind;
  const std::size_t n = group_->order();
  if (out >= n || in >= n) throw StateError(Kind::OutOfRange, "swap element out of range");
  if (!member_[out]) throw StateError(Kind::OutNotMember, "swap removes a non-member");
  if (in == group_->identity()) throw StateError(Kind::InIsIdentity, "swap inserts the identity");
  if (member_[in]) throw StateError(Kind::InAlreadyMember, "swap inserts a member");
}

std::int64_t SearchState::accumulate_delta(Element out, Element in) const {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  touched_.clear();
  auto bump = [this](Element g, std::int32_t amount) {
    if (stamp_[g] != epoch_) {
      stamp_[g] = epoch_;
      scratch_[g] = 0;
      touched_.push_back(g);
    }
    scratch_[g] += amount;
  };

  // D^2 = R^2 + out R + R out + out^2 with R = D \ {out}; the swap replaces
  // every product involving `out` by the matching product with `in`.
  const auto row_out = group_->row(out);
  const auto row_in = group_->row(in);
  for (Element x : roster_) {
    if (x == out) continue;
    const auto row_x = group_->row(x);
    bump(row_out[x], -1);
    bump(row_x[out], -1);
    bump(row_in[x], +1);
    bump(row_x[in], +1);
  }
  bump(row_out[out], -1);
  bump(row_in[in], +1);
  // Targets change at out (lambda -> mu) and in (mu -> lambda).
  bump(out, 0);
  bump(in, 0);

  const std::int64_t lambda = params_.lambda(), mu = params_.mu();
  std::int64_t delta = 0;
  for (Element g : touched_) {
    const std::int64_t before_target = target(g);
    const std::int64_t after_target = g == out ? mu : g == in ? lambda : before_target;
    const std::int64_t c = coeff_[g];
    delta += square(c + scratch_[g] - after_target) - square(c - before_target);
  }
  return delta;
}

std::int64_t SearchState::swap_delta(Element out, Element in) const {
  check_swap(out, in);
  return accumulate_delta(out, in);
}

std::int64_t SearchState::apply_swap(Element out, Element in) {
  check_swap(out, in);
  const std::int64_t delta = accumulate_delta(out, in);
  for (Element g : touched_) coeff_[g] += scratch_[g];
  error_ += delta;

  const std::uint32_t slot = slot_[out];
  member_[out] = 0;
  member_[in] = 1;
  roster_[slot] = in;
  slot_[in] = slot;
  return delta;
}

std::vector<Element> SearchState::sorted_set() const {
  std::vector<Element> out(roster_.begin(), roster_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t SearchState::recompute_error() const { return full_error(*group_, params_, roster_); }

std::int64_t full_error(const GroupTable& group, const Params& params,
                        std::span<const Element> set) {
  const std::size_t n = group.order();
  std::vector<std::int64_t> coeff(n, 0);
  std::vector<bool> member(n, false);
  for (Element a : set) {
    member[a] = true;
    for (Element b : set) ++coeff[group.mul(a, b)];
  }
  std::int64_t error = 0;
  for (Element g = 0; g < n; ++g) {
    const std::int64_t t = g == group.identity() ? params.k()
                           : member[g]           ? params.lambda()
                                                 : params.mu();
    error += square(coeff[g] - t);
  }
  return error;
}

}  // namespace pds

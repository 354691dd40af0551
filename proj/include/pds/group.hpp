#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pds {

/// Dense element index in [0, n).
using Element = std::uint32_t;

/// Largest order accepted by the constructors and the parser. The table is
/// stored densely, so n = 4096 already costs 64 MiB.
inline constexpr std::size_t kMaxOrder = 4096;

class GroupError : public std::runtime_error {
 public:
  enum class Kind {
    InvalidOrder,   // order out of range for the constructor
    Size,           // product order exceeds kMaxOrder
    Malformed,      // text is not a well-formed table
    OutOfRange,     // table entry outside [1, n]
    NoIdentity,     // no element acts as a two-sided identity
    NotLatin,       // some row or column is not a permutation
    NotGroup,       // inverse or identity laws fail
    NotAssociative,
  };

  GroupError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Complete multiplication table of a finite group. Immutable once built and
/// safe to share read-only between threads.
class GroupTable {
 public:
  /// Derives identity and inverses from a row-major product table. Throws
  /// GroupError::NoIdentity if no two-sided identity exists. Inverses that do
  /// not exist are recorded as `order()` and show up in validate_table.
  static GroupTable from_products(std::size_t n, std::vector<Element> products,
                                  std::string label);

  /// Unchecked constructor; callers promise nothing. Used to build
  /// deliberately broken tables for validation tests.
  GroupTable(std::size_t n, std::vector<Element> products, Element identity,
             std::vector<Element> inverses, std::string label);

  std::size_t order() const noexcept { return n_; }
  Element identity() const noexcept { return identity_; }
  const std::string& label() const noexcept { return label_; }

  Element mul(Element a, Element b) const noexcept { return products_[a * n_ + b]; }
  Element inv(Element g) const noexcept { return inverses_[g]; }

  std::span<const Element> row(Element a) const noexcept {
    return {products_.data() + a * n_, n_};
  }
  std::span<const Element> products() const noexcept { return products_; }
  std::span<const Element> inverses() const noexcept { return inverses_; }

  bool is_abelian() const noexcept;

  /// Equality of the mathematical content (label ignored).
  bool same_table(const GroupTable& other) const noexcept;

 private:
  std::size_t n_;
  std::vector<Element> products_;
  Element identity_;
  std::vector<Element> inverses_;
  std::string label_;
};

/// Z_m with identity 0.
GroupTable cyclic_group(std::size_t m);

/// Dihedral group of order 2m. Indices 0..m-1 are rotations r^i, indices
/// m..2m-1 are reflections r^i f.
GroupTable dihedral_group(std::size_t m);

/// Element (x, y) is encoded as x * b.order() + y.
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

/// Z_2^d.
GroupTable elementary_abelian_2(unsigned d);

struct ValidationFailure {
  enum class Check { LatinRow, LatinColumn, Identity, Inverse, Associativity };
  Check check;
  // Witness; unused slots are zero.
  Element a = 0;
  Element b = 0;
  Element c = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationFailure> failures;
  bool associativity_checked = true;

  bool ok() const noexcept { return failures.empty(); }
  bool has(ValidationFailure::Check check) const noexcept;
  std::string summary() const;
};

struct ValidateOptions {
  /// Associativity is O(n^3). It is always checked up to n = 512; above
  /// that it is skipped when this flag is set.
  bool skip_large_associativity = false;
};

ValidationReport validate_table(const GroupTable& table, ValidateOptions options = {});

/// Text form: first line n, then n rows of n 1-indexed products. The label
/// is written as a `# label:` comment so round trips preserve it.
std::string serialize_table(const GroupTable& table);

/// Parses the text form. '#' starts a comment, blank lines are ignored, and
/// a `# label: <text>` comment sets the label (otherwise `fallback_label`).
/// The result has passed validate_table.
GroupTable parse_table(std::string_view text, std::string fallback_label = "table",
                       ValidateOptions options = {});

GroupTable load_table(const std::string& path, ValidateOptions options = {});

}  // namespace pds

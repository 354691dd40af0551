#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pds/group.hpp"
#include "pds/params.hpp"

namespace pds {

struct AxiomFailure {
  enum class Axiom { Cardinality, IdentityMember, InverseClosure, DifferenceCount };
  Axiom axiom;
  Element witness = 0;        // offending element, where one exists
  std::int64_t observed = 0;  // observed count (cardinality or differences)
  std::int64_t expected = 0;
  std::string detail;
};

struct PdsReport {
  std::vector<AxiomFailure> failures;
  bool ok() const noexcept { return failures.empty(); }
  bool has(AxiomFailure::Axiom axiom) const noexcept;
  std::string summary() const;
};

/// Brute-force check of the regular-PDS axioms by counting ordered
/// differences d1 d2^-1 with d1 != d2. Shares nothing with SearchState.
PdsReport verify_pds(const GroupTable& group, const Params& params, std::span<const Element> set);

/// Undirected simple graph stored as sorted adjacency lists.
struct Graph {
  std::vector<std::vector<Element>> adjacency;
  std::size_t vertex_count() const noexcept { return adjacency.size(); }
  bool adjacent(Element a, Element b) const;
};

class CayleyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// g ~ h iff g h^-1 is in the set. Throws CayleyError if the set contains
/// the identity, is not inverse-closed, or has out-of-range elements.
Graph build_cayley_graph(const GroupTable& group, std::span<const Element> set);

struct SrgReport {
  bool ok = true;
  std::string detail;  // first failure, empty on success
  // Witness pair for a failed lambda/mu check, or the vertex (a) for degree.
  std::optional<std::pair<Element, Element>> witness;
  std::int64_t observed = 0;
  std::int64_t expected = 0;
};

/// Direct neighbourhood counting: degree k everywhere, lambda common
/// neighbours for adjacent pairs and mu for non-adjacent distinct pairs.
SrgReport verify_srg(const Graph& graph, const Params& params);

/// G \ ({1} u D) with complemented parameters. Throws std::invalid_argument
/// if the input does not verify.
std::pair<std::vector<Element>, Params> complement_pds(const GroupTable& group,
                                                       const Params& params,
                                                       std::span<const Element> set);

struct Certificate {
  std::string group_label;
  Params params;
  std::vector<Element> pds;  // sorted, 0-indexed
  PdsReport pds_check;
  SrgReport srg_check;

  bool pds_pass() const noexcept { return pds_check.ok(); }
  bool srg_pass() const noexcept { return srg_check.ok; }
  bool passed() const noexcept { return pds_pass() && srg_pass(); }
  std::vector<std::int64_t> emitted_1indexed() const;
};

/// Runs verify_pds and, whenever the Cayley graph is defined, verify_srg.
/// srg_check fails with a note if the graph cannot be built.
Certificate certify(const GroupTable& group, const Params& params, std::span<const Element> set);

}  // namespace pds

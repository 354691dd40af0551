#include "pds/verify.hpp"

#include <algorithm>
#include <sstream>

namespace pds {

bool PdsReport::has(AxiomFailure::Axiom axiom) const noexcept {
  return std::any_of(failures.begin(), failures.end(),
                     [axiom](const AxiomFailure& f) { return f.axiom == axiom; });
}

std::string PdsReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (i) out << "; ";
    out << failures[i].detail;
  }
  return out.str();
}

PdsReport verify_pds(const GroupTable& group, const Params& params, std::span<const Element> set) {
  using Axiom = AxiomFailure::Axiom;
  PdsReport report;
  const std::size_t n = group.order();

  std::vector<bool> member(n, false);
  for (Element d : set) {
    if (d < n) member[d] = true;
  }
  std::size_t distinct = 0;
  for (bool m : member) distinct += m;
  const bool in_range = std::all_of(set.begin(), set.end(), [n](Element d) { return d < n; });

  if (static_cast<std::int64_t>(n) != params.n() || !in_range || distinct != set.size() ||
      static_cast<std::int64_t>(set.size()) != params.k()) {
    report.failures.push_back({Axiom::Cardinality, 0, static_cast<std::int64_t>(distinct),
                               params.k(),
                               "set has " + std::to_string(distinct) + " distinct in-range elements in a group of order " +
                                   std::to_string(n) + ", expected k = " + std::to_string(params.k()) +
                                   " and n = " + std::to_string(params.n())});
  }
  if (member[group.identity()]) {
    report.failures.push_back({Axiom::IdentityMember, group.identity(), 1, 0,
                               "identity " + std::to_string(group.identity()) + " is in the set"});
  }
  for (Element d : set) {
    if (d < n && !member[group.inv(d)]) {
      report.failures.push_back({Axiom::InverseClosure, d, 0, 1,
                                 "inverse of " + std::to_string(d) + " (" +
                                     std::to_string(group.inv(d)) + ") is not in the set"});
      break;
    }
  }
  if (static_cast<std::int64_t>(n) != params.n() || !in_range) return report;

  std::vector<std::int64_t> count(n, 0);
  for (Element a : set) {
    for (Element b : set) {
      if (a != b) ++count[group.mul(a, group.inv(b))];
    }
  }
  for (Element g = 0; g < n; ++g) {
    if (g == group.identity()) continue;
    const std::int64_t expected = member[g] ? params.lambda() : params.mu();
    if (count[g] != expected) {
      report.failures.push_back({Axiom::DifferenceCount, g, count[g], expected,
                                 "element " + std::to_string(g) + " occurs " +
                                     std::to_string(count[g]) + " times as a difference, expected " +
                                     std::to_string(expected)});
      break;
    }
  }
  return report;
}

bool Graph::adjacent(Element a, Element b) const {
  const auto& row = adjacency[a];
  return std::binary_search(row.begin(), row.end(), b);
}

Graph build_cayley_graph(const GroupTable& group, std::span<const Element> set) {
  const std::size_t n = group.order();
  std::vector<bool> member(n, false);
  for (Element d : set) {
    if (d >= n) throw CayleyError("element " + std::to_string(d) + " out of range");
    member[d] = true;
  }
  if (member[group.identity()]) throw CayleyError("connection set contains the identity");
  for (Element d : set) {
    if (!member[group.inv(d)]) {
      throw CayleyError("connection set is not closed under inverses (" + std::to_string(d) + ")");
    }
  }

  Graph graph;
  graph.adjacency.resize(n);
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      if (member[group.mul(g, group.inv(h))]) graph.adjacency[g].push_back(h);
    }
  }
  return graph;
}

SrgReport verify_srg(const Graph& graph, const Params& params) {
  SrgReport report;
  const std::size_t n = graph.vertex_count();
  auto fail = [&report](std::string detail, std::optional<std::pair<Element, Element>> witness,
                        std::int64_t observed, std::int64_t expected) {
    report.ok = false;
    report.detail = std::move(detail);
    report.witness = witness;
    report.observed = observed;
    report.expected = expected;
    return report;
  };

  if (static_cast<std::int64_t>(n) != params.n()) {
    return fail("graph has " + std::to_string(n) + " vertices, expected " +
                    std::to_string(params.n()),
                std::nullopt, static_cast<std::int64_t>(n), params.n());
  }
  for (Element v = 0; v < n; ++v) {
    const auto degree = static_cast<std::int64_t>(graph.adjacency[v].size());
    if (degree != params.k()) {
      return fail("vertex " + std::to_string(v) + " has degree " + std::to_string(degree),
                  std::pair{v, v}, degree, params.k());
    }
  }
  for (Element a = 0; a < n; ++a) {
    const auto& na = graph.adjacency[a];
    for (Element b = a + 1; b < n; ++b) {
      const auto& nb = graph.adjacency[b];
      std::int64_t common = 0;
      auto i = na.begin();
      auto j = nb.begin();
      while (i != na.end() && j != nb.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++common;
          ++i;
          ++j;
        }
      }
      const bool adj = graph.adjacent(a, b);
      const std::int64_t expected = adj ? params.lambda() : params.mu();
      if (common != expected) {
        return fail(std::string(adj ? "adjacent" : "non-adjacent") + " pair (" +
                        std::to_string(a) + "," + std::to_string(b) + ") has " +
                        std::to_string(common) + " common neighbours, expected " +
                        std::to_string(expected),
                    std::pair{a, b}, common, expected);
      }
    }
  }
  return report;
}

std::pair<std::vector<Element>, Params> complement_pds(const GroupTable& group,
                                                       const Params& params,
                                                       std::span<const Element> set) {
  const PdsReport input = verify_pds(group, params, set);
  if (!input.ok()) throw std::invalid_argument("input is not a PDS: " + input.summary());
  std::vector<bool> member(group.order(), false);
  for (Element d : set) member[d] = true;
  std::vector<Element> out;
  for (Element g = 0; g < group.order(); ++g) {
    if (g != group.identity() && !member[g]) out.push_back(g);
  }
  return {std::move(out), params.complement()};
}

std::vector<std::int64_t> Certificate::emitted_1indexed() const {
  std::vector<std::int64_t> out;
  out.reserve(pds.size());
  for (Element g : pds) out.push_back(static_cast<std::int64_t>(g) + 1);
  return out;
}

Certificate certify(const GroupTable& group, const Params& params, std::span<const Element> set) {
  Certificate cert{group.label(), params, {set.begin(), set.end()}, {}, {}};
  std::sort(cert.pds.begin(), cert.pds.end());
  cert.pds_check = verify_pds(group, params, cert.pds);
  try {
    cert.srg_check = verify_srg(build_cayley_graph(group, cert.pds), params);
  } catch (const CayleyError& e) {
    cert.srg_check.ok = false;
    cert.srg_check.detail = std::string("Cayley graph undefined: ") + e.what();
  }
  return cert;
}

}  // namespace pds

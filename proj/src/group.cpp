#include "pds/group.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace pds {

namespace {

std::string check_name(ValidationFailure::Check check) {
  switch (check) {
    case ValidationFailure::Check::LatinRow: return "latin-row";
    case ValidationFailure::Check::LatinColumn: return "latin-column";
    case ValidationFailure::Check::Identity: return "identity";
    case ValidationFailure::Check::Inverse: return "inverse";
    case ValidationFailure::Check::Associativity: return "associativity";
  }
  return "unknown";
}

void require_order(std::size_t n) {
  if (n > kMaxOrder) {
    throw GroupError(GroupError::Kind::Size,
                     "group order " + std::to_string(n) + " exceeds limit " +
                         std::to_string(kMaxOrder));
  }
}

}  // namespace

GroupTable::GroupTable(std::size_t n, std::vector<Element> products, Element identity,
                       std::vector<Element> inverses, std::string label)
    : n_(n),
      products_(std::move(products)),
      identity_(identity),
      inverses_(std::move(inverses)),
      label_(std::move(label)) {
  if (n_ == 0) throw GroupError(GroupError::Kind::InvalidOrder, "group order must be positive");
  require_order(n_);
  if (products_.size() != n_ * n_ || inverses_.size() != n_ || identity_ >= n_) {
    throw GroupError(GroupError::Kind::Malformed, "inconsistent table dimensions");
  }
}

GroupTable GroupTable::from_products(std::size_t n, std::vector<Element> products,
                                     std::string label) {
  if (n == 0) throw GroupError(GroupError::Kind::InvalidOrder, "group order must be positive");
  require_order(n);
  if (products.size() != n * n) {
    throw GroupError(GroupError::Kind::Malformed, "product table has wrong size");
  }

  // Structural detection: e is the identity iff row e and column e are both
  // the identity permutation.
  std::vector<Element> candidates;
  for (Element e = 0; e < n; ++e) {
    bool acts = true;
    for (Element g = 0; g < n && acts; ++g) {
      acts = products[e * n + g] == g && products[g * n + e] == g;
    }
    if (acts) candidates.push_back(e);
  }
  if (candidates.size() != 1) {
    throw GroupError(GroupError::Kind::NoIdentity,
                     candidates.empty() ? "no identity element" : "identity is not unique");
  }
  const Element identity = candidates.front();

  std::vector<Element> inverses(n, static_cast<Element>(n));
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      if (products[g * n + h] == identity) {
        inverses[g] = h;
        break;
      }
    }
  }
  return GroupTable(n, std::move(products), identity, std::move(inverses), std::move(label));
}

bool GroupTable::is_abelian() const noexcept {
  for (Element a = 0; a < n_; ++a) {
    for (Element b = a + 1; b < n_; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

bool GroupTable::same_table(const GroupTable& other) const noexcept {
  return n_ == other.n_ && identity_ == other.identity_ && products_ == other.products_ &&
         inverses_ == other.inverses_;
}

GroupTable cyclic_group(std::size_t m) {
  if (m == 0) throw GroupError(GroupError::Kind::InvalidOrder, "cyclic group needs m >= 1");
  require_order(m);
  std::vector<Element> products(m * m);
  std::vector<Element> inverses(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) products[i * m + j] = static_cast<Element>((i + j) % m);
    inverses[i] = static_cast<Element>((m - i) % m);
  }
  return GroupTable(m, std::move(products), 0, std::move(inverses),
                    "cyclic(" + std::to_string(m) + ")");
}

GroupTable dihedral_group(std::size_t m) {
  if (m < 3) throw GroupError(GroupError::Kind::InvalidOrder, "dihedral group needs m >= 3");
  require_order(2 * m);
  const std::size_t n = 2 * m;
  // r^i f^s with s in {0,1}; f r^j = r^{-j} f.
  auto encode = [m](std::size_t i, std::size_t s) { return static_cast<Element>(s * m + i % m); };
  std::vector<Element> products(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t i = x % m, s = x / m;
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t j = y % m, t = y / m;
      // r^i f^s r^j f^t = r^(i + (-1)^s j) f^(s+t)
      const std::size_t rot = s == 0 ? i + j : i + m - j;
      products[x * n + y] = encode(rot, (s + t) % 2);
    }
  }
  std::vector<Element> inverses(n);
  for (std::size_t i = 0; i < m; ++i) {
    inverses[i] = static_cast<Element>((m - i) % m);
    inverses[m + i] = static_cast<Element>(m + i);
  }
  return GroupTable(n, std::move(products), 0, std::move(inverses),
                    "dihedral(" + std::to_string(m) + ")");
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  const std::size_t na = a.order(), nb = b.order();
  if (na > kMaxOrder / nb) {
    throw GroupError(GroupError::Kind::Size, "direct product order " + std::to_string(na) + "*" +
                                                 std::to_string(nb) + " exceeds limit");
  }
  const std::size_t n = na * nb;
  std::vector<Element> products(n * n);
  std::vector<Element> inverses(n);
  for (Element x = 0; x < n; ++x) {
    const Element xa = x / nb, xb = x % nb;
    for (Element y = 0; y < n; ++y) {
      const Element ya = y / nb, yb = y % nb;
      products[x * n + y] = static_cast<Element>(a.mul(xa, ya) * nb + b.mul(xb, yb));
    }
    inverses[x] = static_cast<Element>(a.inv(xa) * nb + b.inv(xb));
  }
  const auto identity = static_cast<Element>(a.identity() * nb + b.identity());
  return GroupTable(n, std::move(products), identity, std::move(inverses),
                    "product(" + a.label() + "," + b.label() + ")");
}

GroupTable elementary_abelian_2(unsigned d) {
  if (d == 0) return cyclic_group(1);
  GroupTable g = cyclic_group(2);
  for (unsigned i = 1; i < d; ++i) g = direct_product(cyclic_group(2), g);
  const std::size_t n = g.order();
  std::vector<Element> products(g.products().begin(), g.products().end());
  std::vector<Element> inverses(g.inverses().begin(), g.inverses().end());
  return GroupTable(n, std::move(products), g.identity(), std::move(inverses),
                    "EA(" + std::to_string(n) + ")");
}

bool ValidationReport::has(ValidationFailure::Check check) const noexcept {
  return std::any_of(failures.begin(), failures.end(),
                     [check](const ValidationFailure& f) { return f.check == check; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (i) out << "; ";
    out << check_name(failures[i].check) << ": " << failures[i].detail;
  }
  return out.str();
}

ValidationReport validate_table(const GroupTable& t, ValidateOptions options) {
  using Check = ValidationFailure::Check;
  ValidationReport report;
  const std::size_t n = t.order();
  const Element e = t.identity();

  auto fail = [&report](Check check, Element a, Element b, Element c, std::string detail) {
    report.failures.push_back({check, a, b, c, std::move(detail)});
  };

  // Range errors are reported as Latin failures; nothing below indexes with
  // an out-of-range product.
  bool in_range = true;
  for (Element a = 0; a < n && in_range; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (t.mul(a, b) >= n) {
        fail(Check::LatinRow, a, b, 0,
             "product of " + std::to_string(a) + " and " + std::to_string(b) + " out of range");
        in_range = false;
        break;
      }
    }
  }
  if (!in_range) return report;

  std::vector<Element> seen(n);
  Element stamp = 0;
  auto first_repeat = [&](auto&& entry) -> std::pair<Element, Element> {
    ++stamp;
    for (Element j = 0; j < n; ++j) {
      const Element v = entry(j);
      if (seen[v] == stamp) return {j, v};
      seen[v] = stamp;
    }
    return {static_cast<Element>(n), 0};
  };
  std::fill(seen.begin(), seen.end(), 0);
  for (Element a = 0; a < n; ++a) {
    auto [j, v] = first_repeat([&](Element b) { return t.mul(a, b); });
    if (j < n) {
      fail(Check::LatinRow, a, j, v,
           "row " + std::to_string(a) + " repeats value " + std::to_string(v) + " at column " +
               std::to_string(j));
      break;
    }
  }
  for (Element b = 0; b < n; ++b) {
    auto [j, v] = first_repeat([&](Element a) { return t.mul(a, b); });
    if (j < n) {
      fail(Check::LatinColumn, j, b, v,
           "column " + std::to_string(b) + " repeats value " + std::to_string(v) + " at row " +
               std::to_string(j));
      break;
    }
  }

  for (Element g = 0; g < n; ++g) {
    if (t.mul(e, g) != g || t.mul(g, e) != g) {
      fail(Check::Identity, e, g, 0, "identity " + std::to_string(e) + " fails on " + std::to_string(g));
      break;
    }
  }

  for (Element g = 0; g < n; ++g) {
    const Element h = t.inv(g);
    if (h >= n || t.mul(g, h) != e || t.mul(h, g) != e) {
      fail(Check::Inverse, g, h, 0, "no two-sided inverse recorded for " + std::to_string(g));
      break;
    }
  }

  report.associativity_checked = !(options.skip_large_associativity && n > 512);
  if (report.associativity_checked) {
    for (Element a = 0; a < n; ++a) {
      const auto row_a = t.row(a);
      for (Element b = 0; b < n; ++b) {
        const auto row_ab = t.row(row_a[b]);
        const auto row_b = t.row(b);
        for (Element c = 0; c < n; ++c) {
          if (row_ab[c] != row_a[row_b[c]]) {
            fail(Check::Associativity, a, b, c,
                 "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" + std::to_string(c) +
                     " != " + std::to_string(a) + "*(" + std::to_string(b) + "*" +
                     std::to_string(c) + ")");
            return report;
          }
        }
      }
    }
  }
  return report;
}

std::string serialize_table(const GroupTable& t) {
  std::string out;
  const std::size_t n = t.order();
  out.reserve(n * n * 4 + 64);
  if (!t.label().empty()) out += "# label: " + t.label() + "\n";
  out += std::to_string(n);
  out += '\n';
  for (Element a = 0; a < n; ++a) {
    const auto row = t.row(a);
    for (std::size_t b = 0; b < n; ++b) {
      if (b) out += ' ';
      out += std::to_string(row[b] + 1);
    }
    out += '\n';
  }
  return out;
}

GroupTable parse_table(std::string_view text, std::string fallback_label,
                       ValidateOptions options) {
  using Kind = GroupError::Kind;
  std::string label = std::move(fallback_label);
  std::vector<std::vector<long long>> lines;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      std::string_view comment = line.substr(hash + 1);
      constexpr std::string_view key = "label:";
      const auto start = comment.find_first_not_of(" \t");
      if (start != std::string_view::npos && comment.substr(start, key.size()) == key) {
        comment.remove_prefix(start + key.size());
        const auto b = comment.find_first_not_of(" \t");
        const auto e = comment.find_last_not_of(" \t\r");
        if (b != std::string_view::npos) label = std::string(comment.substr(b, e - b + 1));
      }
      line = line.substr(0, hash);
    }

    std::vector<long long> values;
    std::size_t pos = 0;
    while (pos < line.size()) {
      const auto begin = line.find_first_not_of(" \t\r,", pos);
      if (begin == std::string_view::npos) break;
      auto end = line.find_first_of(" \t\r,", begin);
      if (end == std::string_view::npos) end = line.size();
      const std::string_view token = line.substr(begin, end - begin);
      long long value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw GroupError(Kind::Malformed, "line " + std::to_string(line_no) + ": bad token '" +
                                              std::string(token) + "'");
      }
      values.push_back(value);
      pos = end;
    }
    if (!values.empty()) lines.push_back(std::move(values));
  }

  if (lines.empty()) throw GroupError(Kind::Malformed, "empty table");
  if (lines.front().size() != 1 || lines.front().front() <= 0) {
    throw GroupError(Kind::Malformed, "first line must hold the positive group order");
  }
  const auto order = static_cast<std::size_t>(lines.front().front());
  if (order > kMaxOrder) throw GroupError(Kind::Size, "group order exceeds limit");
  if (lines.size() != order + 1) {
    throw GroupError(Kind::Malformed, "expected " + std::to_string(order) + " rows, found " +
                                          std::to_string(lines.size() - 1));
  }

  std::vector<Element> products;
  products.reserve(order * order);
  for (std::size_t r = 1; r <= order; ++r) {
    if (lines[r].size() != order) {
      throw GroupError(Kind::Malformed, "row " + std::to_string(r) + " has " +
                                            std::to_string(lines[r].size()) + " entries");
    }
    for (long long v : lines[r]) {
      if (v < 1 || static_cast<std::size_t>(v) > order) {
        throw GroupError(Kind::OutOfRange, "row " + std::to_string(r) + ": entry " +
                                               std::to_string(v) + " outside [1, " +
                                               std::to_string(order) + "]");
      }
      products.push_back(static_cast<Element>(v - 1));
    }
  }

  GroupTable table = GroupTable::from_products(order, std::move(products), std::move(label));
  const ValidationReport report = validate_table(table, options);
  if (!report.ok()) {
    using Check = ValidationFailure::Check;
    const Check first = report.failures.front().check;
    const Kind kind = first == Check::LatinRow || first == Check::LatinColumn ? Kind::NotLatin
                      : first == Check::Associativity                         ? Kind::NotAssociative
                                                                              : Kind::NotGroup;
    throw GroupError(kind, "table fails validation: " + report.summary());
  }
  return table;
}

GroupTable load_table(const std::string& path, ValidateOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open group table '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem.erase(0, slash + 1);
  if (const auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.erase(dot);
  return parse_table(buffer.str(), stem, options);
}

}  // namespace pds

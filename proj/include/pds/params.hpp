#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pds {

class ParamsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The quadruple (n, k, lambda, mu) shared by a regular PDS and its Cayley
/// graph. Construction enforces 0 < k < n, lambda < k, mu <= k.
class Params {
 public:
  Params(std::int64_t n, std::int64_t k, std::int64_t lambda, std::int64_t mu);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t k() const noexcept { return k_; }
  std::int64_t lambda() const noexcept { return lambda_; }
  std::int64_t mu() const noexcept { return mu_; }

  /// k(k - lambda - 1) == (n - k - 1) mu
  bool counting_identity_holds() const noexcept;

  /// Parameters of the complementary set G \ ({1} u D).
  Params complement() const;

  std::string to_string() const;

  friend bool operator==(const Params&, const Params&) = default;

 private:
  std::int64_t n_, k_, lambda_, mu_;
};

/// Parses "n,k,lambda,mu" (parentheses and spaces allowed).
Params parse_params(const std::string& text);

struct FeasibleParams {
  Params params;
  std::int64_t multiplicity_plus;   // multiplicity of the positive restricted eigenvalue
  std::int64_t multiplicity_minus;
  bool conference = false;
};

struct Rejection {
  std::string reason;
};

/// Counting identity and eigenvalue-multiplicity integrality, with the
/// conference case admitted for n = 1 mod 4. Exact integer arithmetic.
std::variant<FeasibleParams, Rejection> check_feasible(const Params& params);

struct EnumerateOptions {
  /// Keep only k <= (n - 1) / 2; by default a set and its complement are both listed.
  bool half_only = false;
};

/// All primitive feasible (n, k, lambda, mu) with 1 <= mu < k, sorted by k
/// then lambda. Empty for n < 5.
std::vector<FeasibleParams> enumerate_feasible(std::int64_t n, EnumerateOptions options = {});

/// floor(sqrt(x)) for x >= 0, exact.
std::int64_t isqrt(std::int64_t x);

}  // namespace pds

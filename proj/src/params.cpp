#include "pds/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pds {

Params::Params(std::int64_t n, std::int64_t k, std::int64_t lambda, std::int64_t mu)
    : n_(n), k_(k), lambda_(lambda), mu_(mu) {
  if (!(0 < k && k < n)) throw ParamsError("params " + to_string() + ": need 0 < k < n");
  if (lambda < 0 || mu < 0) throw ParamsError("params " + to_string() + ": lambda, mu must be >= 0");
  if (lambda >= k) throw ParamsError("params " + to_string() + ": need lambda < k");
  if (mu > k) throw ParamsError("params " + to_string() + ": need mu <= k");
}

bool Params::counting_identity_holds() const noexcept {
  return k_ * (k_ - lambda_ - 1) == (n_ - k_ - 1) * mu_;
}

Params Params::complement() const {
  return Params(n_, n_ - k_ - 1, n_ - 2 - 2 * k_ + mu_, n_ - 2 * k_ + lambda_);
}

std::string Params::to_string() const {
  std::ostringstream out;
  out << '(' << n_ << ',' << k_ << ',' << lambda_ << ',' << mu_ << ')';
  return out.str();
}

Params parse_params(const std::string& text) {
  std::string cleaned;
  for (char c : text) cleaned += (c == '(' || c == ')' || c == ',') ? ' ' : c;
  std::istringstream in(cleaned);
  std::int64_t v[4];
  for (auto& x : v) {
    if (!(in >> x)) throw ParamsError("expected four integers n,k,lambda,mu in '" + text + "'");
  }
  std::string rest;
  if (in >> rest) throw ParamsError("trailing input in params '" + text + "'");
  return Params(v[0], v[1], v[2], v[3]);
}

std::int64_t isqrt(std::int64_t x) {
  if (x < 0) return -1;
  using Wide = __int128;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (Wide{r} * r > x) --r;
  while (Wide{r + 1} * (r + 1) <= x) ++r;
  return r;
}

std::variant<FeasibleParams, Rejection> check_feasible(const Params& p) {
  const std::int64_t n = p.n(), k = p.k(), lambda = p.lambda(), mu = p.mu();
  if (n < 5) return Rejection{"n < 5"};
  if (k >= n - 1) return Rejection{"k >= n - 1 (complete graph)"};
  if (mu < 1) return Rejection{"mu < 1 (disconnected graph)"};
  // The complement must itself have valid counts: lambda' = n - 2 - 2k + mu.
  if (n - 2 - 2 * k + mu < 0) return Rejection{"complement has negative lambda"};
  if (!p.counting_identity_holds()) {
    std::ostringstream out;
    out << "counting identity fails: k(k-lambda-1) = " << k * (k - lambda - 1)
        << " != (n-k-1)mu = " << (n - k - 1) * mu;
    return Rejection{out.str()};
  }

  // m+- = ((n-1) -+ (2k + (n-1)(lambda-mu)) / s) / 2 with s^2 = disc.
  const std::int64_t disc = (lambda - mu) * (lambda - mu) + 4 * (k - mu);
  const std::int64_t numerator = 2 * k + (n - 1) * (lambda - mu);
  const bool conference = lambda - mu == -1 && 2 * k == n - 1;
  const std::int64_t s = isqrt(disc);

  if (s * s != disc) {
    if (!conference || numerator != 0) {
      return Rejection{"eigenvalues irrational and parameters are not of conference type"};
    }
    if (n % 4 != 1) return Rejection{"conference parameters need n = 1 mod 4"};
    return FeasibleParams{p, (n - 1) / 2, (n - 1) / 2, true};
  }
  if (s == 0) return Rejection{"degenerate eigenvalues"};

  const std::int64_t twice_plus = (n - 1) * s - numerator;   // 2s * m+
  const std::int64_t twice_minus = (n - 1) * s + numerator;  // 2s * m-
  if (twice_plus % (2 * s) != 0 || twice_minus % (2 * s) != 0) {
    return Rejection{"eigenvalue multiplicities are not integers"};
  }
  const std::int64_t m_plus = twice_plus / (2 * s), m_minus = twice_minus / (2 * s);
  if (m_plus < 0 || m_minus < 0) return Rejection{"negative eigenvalue multiplicity"};
  return FeasibleParams{p, m_plus, m_minus, conference};
}

std::vector<FeasibleParams> enumerate_feasible(std::int64_t n, EnumerateOptions options) {
  std::vector<FeasibleParams> out;
  if (n < 5) return out;
  for (std::int64_t k = 2; k < n - 1; ++k) {
    if (options.half_only && 2 * k > n - 1) break;
    for (std::int64_t lambda = 0; lambda < k; ++lambda) {
      const std::int64_t lhs = k * (k - lambda - 1);
      if (lhs % (n - k - 1) != 0) continue;
      const std::int64_t mu = lhs / (n - k - 1);
      if (mu < 1 || mu >= k) continue;
      const Params p(n, k, lambda, mu);
      auto verdict = check_feasible(p);
      if (auto* f = std::get_if<FeasibleParams>(&verdict)) out.push_back(*f);
    }
  }
  return out;
}

}  // namespace pds

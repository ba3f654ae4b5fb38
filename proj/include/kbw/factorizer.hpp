#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kbw/exact.hpp"

namespace kbw {

struct PrimePower {
  Int prime;
  unsigned exponent = 1;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  Int n;
  std::vector<PrimePower> factors;  // ascending primes
  // Composite pieces left when the rho budget ran out. Empty when complete.
  std::vector<Int> composite_cofactors;
  bool complete() const { return composite_cofactors.empty(); }
};

struct FactorBudget {
  u64 trial_limit = 1000000;
  // Total Pollard-Brent iterations allowed per composite cofactor, across all seeds.
  u64 rho_iterations = 50000000;
};

// Trial division up to budget.trial_limit, then Pollard-rho (Brent) with
// f(x) = x^2 + c, c = 1, 3, 5, ... and x0 = 2. Prime cofactors pass is_prime.
Factorization factorize(const Int& n, const FactorBudget& budget = {});

inline constexpr u64 kDefaultFactorTableMax = 24;
inline constexpr u64 kLongFactorTableMax = 30;
// Factorizations of !n - 1 for 3 <= n <= n_max.
std::vector<Factorization> left_factorial_minus_one_table(u64 n_max = kDefaultFactorTableMax,
                                                          const FactorBudget& budget = {}, unsigned threads = 0);

struct GcdReport {
  u64 n_max = 0;
  std::vector<u64> failures;  // n with gcd(!n, n!) != 2
  bool holds() const { return failures.empty(); }
};
GcdReport kurepa_gcd_check(u64 n_max);

// "3^2 × 11 × 467"; a trailing "[composite c]" marks each unfinished cofactor.
std::string render_factors(const Factorization& f);
// Parses "3^2x11x467" or "3^2 × 11 × 467".
std::vector<PrimePower> parse_factors(const std::string& s);
Int multiply_out(const std::vector<PrimePower>& factors);

nlohmann::json to_json(const Factorization& f);

}  // namespace kbw

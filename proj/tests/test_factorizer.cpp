#include <random>

#include <doctest.h>

#include "kbw/error.hpp"
#include "kbw/factorizer.hpp"
#include "kbw/residues.hpp"
#include "oracles.hpp"

using namespace kbw;

namespace {
std::vector<PrimePower> pp(std::initializer_list<std::pair<const char*, unsigned>> l) {
  std::vector<PrimePower> v;
  for (auto [p, e] : l) v.push_back({Int(p), e});
  return v;
}
}  // namespace

TEST_CASE("small factorizations") {
  CHECK_THROWS_AS(factorize(Int(1)), DomainError);
  CHECK(factorize(Int(360)).factors == pp({{"2", 3}, {"3", 2}, {"5", 1}}));
  CHECK(factorize(Int(9409)).factors == pp({{"97", 2}}));
  CHECK(factorize(Int("1000000007")).factors == pp({{"1000000007", 1}}));
  CHECK_THROWS_AS(factorize(Int(0)), DomainError);
}

TEST_CASE("rho splits products of large primes") {
  FactorBudget b;
  b.trial_limit = 1000;
  Int n = Int("349882390108241") * Int("47793258077");
  Factorization f = factorize(n, b);
  CHECK(f.complete());
  CHECK(f.factors == pp({{"47793258077", 1}, {"349882390108241", 1}}));
  Int sq = Int("2882477797") * Int("2882477797") * 11;
  CHECK(factorize(sq, b).factors == pp({{"11", 1}, {"2882477797", 2}}));
}

TEST_CASE("an exhausted budget leaves a composite cofactor") {
  FactorBudget tiny;
  tiny.trial_limit = 10;
  tiny.rho_iterations = 10;
  Int n = Int("1000000007") * Int("998244353");
  Factorization f = factorize(n, tiny);
  CHECK_FALSE(f.complete());
  CHECK(f.composite_cofactors == std::vector<Int>{n});
  CHECK(render_factors(f).find("[composite") != std::string::npos);
}

TEST_CASE("!n - 1 table") {
  auto t = left_factorial_minus_one_table(24);
  REQUIRE(t.size() == 22);
  CHECK(render_factors(t[0]) == "3");
  CHECK(render_factors(t[2]) == "3 × 11");
  CHECK(render_factors(t[18]) == "3^2 × 11^2 × 53 × 67 × 662348503367");
  for (std::size_t i = 0; i < t.size(); ++i) {
    REQUIRE(t[i].complete());
    REQUIRE(t[i].n == oracle::left_factorial(static_cast<unsigned>(i + 3)) - 1);
  }
}

TEST_CASE("parsing printed factor strings") {
  CHECK(parse_factors("3^2x11x467") == pp({{"3", 2}, {"11", 1}, {"467", 1}}));
  CHECK(parse_factors("3^2 × 11 × 467") == pp({{"3", 2}, {"11", 1}, {"467", 1}}));
  CHECK(parse_factors("3 * 11") == pp({{"3", 1}, {"11", 1}}));
  CHECK(multiply_out(parse_factors("3^2x11x467")) == 46233);
  CHECK_THROWS_AS(parse_factors("3^x"), DomainError);
}

TEST_CASE("json") {
  nlohmann::json j = to_json(factorize(Int(360)));
  CHECK(j["n"] == "360");
  CHECK(j["complete"] == true);
  CHECK(j["factors"].size() == 3);
}

TEST_CASE("gcd(!n, n!) = 2") {
  GcdReport r = kurepa_gcd_check(500);
  CHECK(r.holds());
  CHECK(r.n_max == 500);
}

TEST_CASE("property: recomposition and determinism") {
  std::mt19937_64 rng(8);
  FactorBudget b;
  b.trial_limit = 200;
  for (int i = 0; i < 200; ++i) {
    Int n = 1;
    int parts = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < parts; ++k) n *= Int(std::to_string(2 + rng() % 2'000'000'000ULL));
    Factorization f = factorize(n, b);
    REQUIRE(f.complete());
    REQUIRE(multiply_out(f.factors) == n);
    for (const auto& q : f.factors) REQUIRE(is_prime(q.prime));
    REQUIRE(std::is_sorted(f.factors.begin(), f.factors.end(),
                           [](const PrimePower& a, const PrimePower& c) { return a.prime < c.prime; }));
    REQUIRE(factorize(n, b).factors == f.factors);
  }
}

TEST_CASE("property: !n - 1 is divisible by p from n = p on exactly when K_p = 1 mod p") {
  auto t = left_factorial_minus_one_table(30);
  for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL}) {
    bool persistent = true;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i + 3 >= p) persistent = persistent && oracle::mod(t[i].n, p) == 0;
    CHECK(persistent == (kurepa_mod(p).value() == 1));
  }
  auto has = [](const Factorization& f, long q) {
    for (const auto& x : f.factors)
      if (x.prime == q) return true;
    return false;
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(has(t[i], 3));
    if (i + 3 >= 11) CHECK(has(t[i], 11));
  }
}

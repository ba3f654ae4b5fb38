#include <doctest.h>

#include "kbw/error.hpp"
#include "kbw/exact.hpp"
#include "oracles.hpp"

using namespace kbw;

namespace {
Rat rat(const char* s) {
  Rat q(s);
  q.canonicalize();
  return q;
}
}  // namespace

TEST_CASE("left factorial") {
  CHECK(left_factorial(0) == 0);
  CHECK(left_factorial(5) == 34);
  CHECK(left_factorial(6) == 154);
  CHECK(left_factorial(17) == Int("22324392524314"));
  for (unsigned n = 0; n < 40; ++n) REQUIRE(left_factorial(n) == oracle::left_factorial(n));
}

TEST_CASE("Bell numbers") {
  CHECK(bell_exact(0) == 1);
  CHECK(bell_exact(4) == 15);
  CHECK(bell_exact(16) == Int("10480142147"));
  for (unsigned n = 0; n <= 11; ++n) REQUIRE(bell_exact(n) == oracle::bell(n));
  CHECK_NOTHROW(bell_exact(kBellExactCap));
  CHECK_THROWS_AS(bell_exact(kBellExactCap + 1), CapacityError);
}

TEST_CASE("derangements") {
  CHECK(derangement_exact(0) == 1);
  CHECK(derangement_exact(1) == 0);
  CHECK(derangement_exact(4) == oracle::derangements(4));
  CHECK(derangement_exact(4) == 9);
  for (unsigned n = 0; n <= 8; ++n) REQUIRE(derangement_exact(n) == oracle::derangements(n));
}

TEST_CASE("Stirling numbers of the second kind") {
  CHECK(stirling2(4, 2) == oracle::set_partitions(4, 2));
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(9, 9) == 1);
  CHECK(stirling2(0, 0) == 1);
  Int s = 0;
  for (u64 k = 0; k <= 4; ++k) s += stirling2(4, k);
  CHECK(s == 15);
  for (unsigned n = 0; n <= 9; ++n)
    for (unsigned k = 0; k <= n; ++k) REQUIRE(stirling2(n, k) == oracle::set_partitions(n, k));
  CHECK_THROWS_AS(stirling2(3, 4), DomainError);
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli_exact(0) == 1);
  CHECK(bernoulli_exact(1) == rat("-1/2"));
  CHECK(bernoulli_exact(3) == 0);
  CHECK(bernoulli_exact(12) == oracle::bernoulli(12));
  CHECK(bernoulli_exact(12) == rat("-691/2730"));
  for (unsigned k = 0; k <= 80; ++k) REQUIRE(bernoulli_exact(k) == oracle::bernoulli(k));
  CHECK_THROWS_AS(bernoulli_exact(kBernoulliExactCap + 1), CapacityError);
}

TEST_CASE("Gregory coefficients") {
  CHECK(gregory_exact(1) == rat("1/2"));
  CHECK(gregory_exact(2) == rat("-1/12"));
  CHECK(gregory_exact(3) == rat("1/24"));
  CHECK(gregory_exact(4) == rat("-19/720"));
  for (unsigned n = 1; n <= 40; ++n) REQUIRE(gregory_exact(n) == oracle::gregory(n));
}

TEST_CASE("quotients for the smallest primes") {
  CHECK(wilson_quotient_exact(3) == 1);
  CHECK(wilson_quotient_exact(5) == 5);
  CHECK(wilson_quotient_exact(7) == 103);
  CHECK(gertsch_quotient_exact(3) == 1);
  CHECK(gertsch_quotient_exact(7) == 96);
  CHECK(gertsch_quotient_exact(11) == 356540);
  CHECK(lerch_quotient_exact(7) == 1356);
  CHECK(lerch_quotient_exact(3) == 0);
  CHECK(h_quotient_exact(7) == 1357);
  CHECK(h_quotient_exact(5) == rat("66/5"));
  for (unsigned p : {3u, 5u, 7u, 11u, 13u, 29u, 53u}) {
    REQUIRE(wilson_quotient_exact(p) == oracle::wilson_quotient(p));
    for (u64 a = 1; a < p; ++a) REQUIRE(fermat_quotient_exact(p, a) == oracle::fermat_quotient(p, a));
  }
  CHECK_THROWS_AS(wilson_quotient_exact(9), DomainError);
  CHECK_THROWS_AS(lerch_quotient_exact(103), CapacityError);
}

TEST_CASE("Table 2 rows as a record") {
  struct Row {
    u64 p;
    const char *w, *l, *g, *h;
  };
  for (const Row& r : {Row{3, "1", "0", "1", "0"}, Row{5, "5", "13", "4", "66/5"}, Row{7, "103", "1356", "96", "1357"}}) {
    QuotientRecord q = quotient_record(r.p);
    CHECK(q.wilson == Int(r.w));
    CHECK(q.lerch == rat(r.l));
    CHECK(q.gertsch == Int(r.g));
    CHECK(q.h == rat(r.h));
  }
}

TEST_CASE("Agoh-Giuga quotients") {
  CHECK(agoh_giuga_exact(3) == rat("1/2"));
  CHECK(agoh_giuga_exact(5) == rat("1/6"));
  CHECK(agoh_giuga_exact(13) == rat("-37/210"));
  for (unsigned p : {3u, 5u, 7u, 11u, 13u, 31u, 71u, 97u}) {
    mpq_class expect = (p * oracle::bernoulli(p - 1) + 1) / mpq_class(p);
    expect.canonicalize();
    REQUIRE(agoh_giuga_exact(p) == expect);
  }
}

TEST_CASE("b_g against the series of (t/2)/sin(t/2)") {
  CHECK(hodge_bg_exact(0) == 1);
  CHECK(hodge_bg_exact(1) == rat("-1/24"));
  CHECK(hodge_bg_exact(2) == rat("7/5760"));
  CHECK(hodge_bg_exact(3) == oracle::hodge_b(3));
  CHECK(hodge_bg_exact(3) == rat("-31/967680"));
  CHECK(hodge_bg_exact(3) != rat("-31/9676780"));
  for (unsigned g = 0; g <= 12; ++g) REQUIRE(hodge_bg_exact(g) == oracle::hodge_b(g));
}

TEST_CASE("Giuga sums") {
  CHECK(giuga_sum(5).value() == 4);
  CHECK(giuga_sum(4).value() == 0);
  CHECK(giuga_sum(3).value() == 2);
  for (u64 n = 3; n < 400; ++n) REQUIRE((giuga_sum(n).value() == n - 1) == oracle::is_prime(n));
}

TEST_CASE("successor identities") {
  auto five = successor_identities(5);
  REQUIRE(five.size() == 1);
  CHECK(five[0].lhs == 120);
  CHECK(five[0].holds);
  auto six = successor_identities(6);
  REQUIRE(six.size() == 2);
  CHECK(six[1].lhs == 120);
  CHECK(six[1].rhs == 120);
  CHECK(six[1].holds);
  IdentityLine split = genus_split_identity(1, 1);
  CHECK(split.lhs == 2);
  CHECK(split.rhs == 6);
  CHECK_FALSE(split.holds);
}

TEST_CASE("property: exact invariants") {
  for (u64 n = 1; n < 60; ++n) REQUIRE(left_factorial(n + 1) == left_factorial(n) + factorial(n));
  for (u64 n = 0; n <= 40; ++n) {
    Int s = 0;
    for (u64 k = 0; k <= n; ++k) s += stirling2(n, k);
    REQUIRE(bell_exact(n) == s);
  }
  for (u64 n = 0; n <= 60; ++n) REQUIRE(derangement_exact(n) == derangement_closed_form(n));
  for (u64 m = 1; 2 * m + 1 <= kBernoulliExactCap; ++m) {
    REQUIRE(bernoulli_exact(2 * m + 1) == 0);
    REQUIRE(sgn(bernoulli_exact(2 * m)) == (m % 2 ? 1 : -1));
  }
  for (u64 n = 1; n <= 120; ++n) REQUIRE(sgn(gregory_exact(n)) == (n % 2 ? 1 : -1));
  for (u64 p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 127})
    CHECK_NOTHROW(gertsch_quotient_exact(p));
}

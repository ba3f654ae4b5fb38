// Cross-module agreement: the same quantity reached through different modules.

#include <random>

#include <doctest.h>

#include "kbw/adele.hpp"
#include "kbw/checks.hpp"
#include "kbw/modmath.hpp"
#include "kbw/residues.hpp"
#include "kbw/search.hpp"
#include "oracles.hpp"

using namespace kbw;

namespace {
std::vector<u64> hit_primes(const Checkpoint& c) {
  std::vector<u64> v;
  for (const Hit& h : c.hits) v.push_back(h.p);
  return v;
}
Checkpoint scan(const char* id, u64 hi) { return run_campaign(id, PrimeRange::checked(3, hi), std::nullopt); }
}  // namespace

TEST_CASE("search, profile and adele see the same Wilson zeros") {
  const PrimeRange w = PrimeRange::checked(3, 2000);
  std::vector<u64> from_profile, from_adele;
  for (const ResidueProfile& r : residue_profiles(w))
    if (r.wilson_q == 0) from_profile.push_back(r.p);
  for (const auto& [p, r] : gamma_W(w).residues)
    if (r == 0) from_adele.push_back(p);
  CHECK(hit_primes(scan("wilson_zero", 2000)) == from_profile);
  CHECK(from_adele == from_profile);
}

TEST_CASE("Gertsch = Wilson through search, catalog and adele") {
  const PrimeRange w = PrimeRange::checked(3, 3000);
  std::vector<u64> s = hit_primes(scan("gertsch_wilson", 3000));
  CatalogRun c = run_catalog(w, {"C31"});
  CHECK(s == c.tally.at("C31").agreement_primes);
  CHECK(s == adele_eq(gamma_G(w), gamma_W(w)).agreement_primes);
}

TEST_CASE("agoh atoms track the Wilson quotient") {
  for (u64 p : oracle::primes(5, 600)) {
    const u64 wq = wilson_quotient_mod(p).value();
    AtomTriple a = agoh_atoms(p);
    REQUIRE(a.v == add_mod(wq, 2, p));
    REQUIRE(a.v_star == add_mod(wq, 1, p));
    REQUIRE(a.v_prime == add_mod(wq, inv_mod(2, p), p));
  }
}

TEST_CASE("residues mod p^e reduce to residues mod lower powers") {
  std::mt19937_64 rng(5);
  std::vector<u64> ps = oracle::primes(3, 40000);
  for (int i = 0; i < 40; ++i) {
    const u64 p = ps[rng() % ps.size()];
    const u64 p2 = p * p;
    const u64 k3 = kurepa_mod(p, 3).value(), b3 = bell_pm1_mod(p, 3).value();
    REQUIRE(k3 % p2 == kurepa_mod(p, 2).value());
    REQUIRE(b3 % p2 == bell_pm1_mod(p, 2).value());
    REQUIRE(k3 % p == kurepa_mod(p).value());
    REQUIRE(kurepa_gf_mod(p) == kurepa_mod(p));
    REQUIRE(wilson_quotient_mod(p, 2).value() % p == wilson_quotient_mod(p).value());
  }
}

TEST_CASE("fast Bell_{p-1} agrees with the Bell triangle") {
  for (u64 p : oracle::primes(3, 1500)) REQUIRE(bell_pm1_mod(p).value() == bell_mod(p - 1, p).value());
}

TEST_CASE("profiles do not depend on the thread count") {
  const PrimeRange w = PrimeRange::checked(3, 800);
  auto one = residue_profiles(w, 2, 1), four = residue_profiles(w, 2, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].p == four[i].p);
    REQUIRE(one[i].k_mod == four[i].k_mod);
    REQUIRE(one[i].bell_mod == four[i].bell_mod);
    REQUIRE(one[i].wilson_q == four[i].wilson_q);
    REQUIRE(one[i].v_atoms == four[i].v_atoms);
  }
}

TEST_CASE("no Kurepa zero and no Bell one in a quick scan") {
  CHECK(scan("kurepa_zero", 50000).hits.empty());
  CHECK(scan("bell_one", 50000).hits.empty());
  for (u64 p : oracle::primes(3, 3000)) REQUIRE(gamma_Kp(PrimeRange::checked(p, p)).at(p) != std::optional<u64>(0));
}

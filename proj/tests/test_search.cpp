#include <cstdlib>
#include <fstream>

#include <doctest.h>

#include "harness.hpp"
#include "kbw/error.hpp"
#include "kbw/search.hpp"
#include "oracles.hpp"

using namespace kbw;

namespace {
std::vector<Hit> primes_only(std::initializer_list<u64> ps) {
  std::vector<Hit> v;
  for (u64 p : ps) v.push_back({p, 0});
  return v;
}
Checkpoint run(const std::string& id, u64 lo, u64 hi, u64 stride = 10000) {
  RunOptions o;
  o.stride = stride;
  return run_campaign(id, PrimeRange::checked(lo, hi), std::nullopt, o);
}
}  // namespace

TEST_CASE("small fixtures") {
  CHECK(run("wilson_zero", 3, 10000).hits == primes_only({5, 13, 563}));
  CHECK(run("wieferich", 3, 10000).hits == primes_only({1093, 3511}));
  CHECK(run("mirimanoff", 3, 10000).hits == primes_only({11}));
  CHECK(run("gertsch_wilson", 3, 3000).hits == primes_only({3, 7, 2887}));
  CHECK(run("vp_zero", 3, 2000).hits == primes_only({3, 7, 71}));
  CHECK(run("vpprime_zero", 3, 1500).hits == primes_only({3, 227, 1163}));
  CHECK(run("kurepa_zero", 3, 20000).hits.empty());
  CHECK(run("bell_one", 3, 20000).hits.empty());
  Checkpoint q = run("qpm_zero", 3, 37);
  for (Hit h : std::vector<Hit>{{3, 2}, {7, 6}, {19, 14}, {23, 5}, {31, 19}, {37, 20}})
    CHECK(std::binary_search(q.hits.begin(), q.hits.end(), h));
}

TEST_CASE("Wieferich hits match a brute-force scan") {
  std::vector<Hit> expect;
  for (u64 p : oracle::primes(3, 4000))
    if (oracle::mod(oracle::power(2, static_cast<unsigned>(p - 1)) - 1, p * p) == 0) expect.push_back({p, 0});
  CHECK(run("wieferich", 3, 4000).hits == expect);
}

TEST_CASE("verdicts") {
  Checkpoint ok = run("wilson_zero", 3, 1000);
  CHECK(verify_expected(ok).verdict == Verdict::Pass);

  Checkpoint missing = ok;
  missing.hits.erase(missing.hits.begin());
  CHECK(verify_expected(missing).verdict == Verdict::Fail);

  Checkpoint extra = ok;
  extra.hits.push_back({997, 0});
  CHECK(verify_expected(extra).verdict == Verdict::Fail);

  RunOptions o;
  o.stride = 10;
  o.stop_after = 10;
  Checkpoint partial = run_campaign("wilson_zero", PrimeRange::checked(3, 1000), std::nullopt, o);
  CHECK_FALSE(partial.complete());
  CHECK(verify_expected(partial).verdict == Verdict::Inconclusive);

  Checkpoint beyond = run("gertsch_zero", 3, 4000);
  CHECK(verify_expected(beyond).verdict == Verdict::Inconclusive);
}

TEST_CASE("checkpoint JSON round trip") {
  Checkpoint c = run("qpm_zero", 3, 37);
  Checkpoint back = checkpoint_from_json(to_json(c));
  CHECK(back.hits == c.hits);
  CHECK(back.m_max == 20);
  CHECK(to_json(c)["hits"][0] == nlohmann::json::array({2, 3}));
  Checkpoint w = run("wilson_zero", 3, 100);
  nlohmann::json j = to_json(w);
  for (const char* k : {"campaign", "lo", "hi", "last_p", "hits", "elapsed_s", "version"}) CHECK(j.contains(k));
  CHECK(j["hits"] == nlohmann::json::array({5, 13}));
}

TEST_CASE("corrupt checkpoints are rejected") {
  nlohmann::json good = to_json(run("wilson_zero", 3, 100));
  auto broken = [&](auto edit) {
    nlohmann::json j = good;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(checkpoint_from_json(broken([](auto& j) { j.erase("hits"); })), CorruptCheckpoint);
  CHECK_THROWS_AS(checkpoint_from_json(broken([](auto& j) { j["version"] = 99; })), CorruptCheckpoint);
  CHECK_THROWS_AS(checkpoint_from_json(broken([](auto& j) { j["last_p"] = 101; })), CorruptCheckpoint);
  CHECK_THROWS_AS(checkpoint_from_json(broken([](auto& j) { j["hits"] = {13, 5}; })), CorruptCheckpoint);
  CHECK_THROWS_AS(checkpoint_from_json(broken([](auto& j) { j["campaign"] = "nope"; })), CorruptCheckpoint);
  CHECK_THROWS_AS(checkpoint_from_json(broken([](auto& j) { j["lo"] = "three"; })), CorruptCheckpoint);

  const std::string path = harness::temp_path("corrupt.json");
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_checkpoint(path), CorruptCheckpoint);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_checkpoint(path), CorruptCheckpoint);

  Checkpoint other = checkpoint_from_json(good);
  CHECK_THROWS_AS(run_campaign("wieferich", PrimeRange::checked(3, 100), other), CorruptCheckpoint);
  CHECK_THROWS_AS(run_campaign("wilson_zero", PrimeRange::checked(3, 200), other), CorruptCheckpoint);
}

TEST_CASE("checkpoint writes replace the file atomically") {
  const std::string path = harness::temp_path("atomic.json");
  RunOptions o;
  o.checkpoint_path = path;
  o.stride = 7;
  Checkpoint c = run_campaign("wieferich", PrimeRange::checked(3, 2000), std::nullopt, o);
  CHECK(std::filesystem::exists(path));
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  CHECK(load_checkpoint(path).hits == c.hits);
  CHECK(load_checkpoint(path).last_p == 2000);
  std::filesystem::remove(path);
}

TEST_CASE("a completed checkpoint is returned unchanged") {
  Checkpoint c = run("wilson_zero", 3, 600);
  Checkpoint again = run_campaign("wilson_zero", PrimeRange::checked(3, 600), c);
  CHECK(again.hits == c.hits);
  CHECK(again.primes_processed == c.primes_processed);
}

TEST_CASE("property: sharding does not change the hits") {
  std::mt19937_64 rng(99);
  for (const char* id : {"wilson_zero", "gertsch_wilson", "vp_zero", "qpm_zero"}) {
    const u64 hi = 3000;
    Checkpoint whole = run(id, 3, hi);
    for (int k = 2; k <= 5; ++k) {
      std::vector<u64> cuts{2};
      for (int i = 1; i < k; ++i) cuts.push_back(3 + rng() % (hi - 3));
      std::sort(cuts.begin(), cuts.end());
      cuts.push_back(hi);
      std::vector<Hit> merged;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i] + 1 > cuts[i + 1]) continue;
        Checkpoint part = run(id, std::max<u64>(3, cuts[i] + 1), cuts[i + 1], 1 + rng() % 50);
        merged.insert(merged.end(), part.hits.begin(), part.hits.end());
      }
      std::sort(merged.begin(), merged.end());
      REQUIRE(merged == whole.hits);
    }
  }
}

TEST_CASE("property: resuming after random kills reproduces the uninterrupted run") {
  std::mt19937_64 rng(31337);
  const std::string path = harness::temp_path("resume_unit.json");
  for (int i = 0; i < 10; ++i) {
    harness::ResumeTrial t = harness::resume_trial(rng, path);
    INFO(t.campaign << " hi=" << t.hi << " stride=" << t.stride);
    REQUIRE(t.identical);
  }
}

TEST_CASE("checkpoint stride from the environment") {
  setenv("KBW_CHECKPOINT_STRIDE", "123", 1);
  CHECK(default_checkpoint_stride() == 123);
  setenv("KBW_CHECKPOINT_STRIDE", "junk", 1);
  CHECK(default_checkpoint_stride() == 10000);
  unsetenv("KBW_CHECKPOINT_STRIDE");
  CHECK(default_checkpoint_stride() == 10000);
}

TEST_CASE("unknown campaign") {
  CHECK_THROWS_AS(campaign_info("nope"), DomainError);
  CHECK_THROWS_AS(run("nope", 3, 10), DomainError);
  CHECK(render_hit({7, 6}) == "(6, 7)");
  CHECK(render_hit({563, 0}) == "563");
}

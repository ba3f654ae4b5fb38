#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kbw/modmath.hpp"

namespace kbw {

// A prime hit, or an (m, p) pair for qpm_zero.
struct Hit {
  u64 p = 0;
  u64 m = 0;  // 0 for prime-only campaigns
  friend bool operator==(const Hit&, const Hit&) = default;
  friend auto operator<=>(const Hit& a, const Hit& b) {
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.m <=> b.m;
  }
};

inline constexpr int kCheckpointVersion = 1;

// Every prime <= last_p in [lo, hi] has been processed; last_p = lo - 1 before the first one.
struct Checkpoint {
  std::string campaign;
  u64 lo = 0;
  u64 hi = 0;
  u64 last_p = 0;
  std::vector<Hit> hits;
  double elapsed_s = 0;
  u64 primes_processed = 0;
  u64 m_max = 0;  // qpm_zero only
  int version = kCheckpointVersion;

  bool complete() const { return last_p >= hi; }
  double primes_per_second() const { return elapsed_s > 0 ? primes_processed / elapsed_s : 0.0; }
};

struct CampaignInfo {
  std::string id;
  std::string description;
  bool pairs = false;
};
const std::vector<CampaignInfo>& campaigns();
const CampaignInfo& campaign_info(const std::string& id);  // DomainError when unknown

struct RunOptions {
  std::optional<std::string> checkpoint_path;
  u64 stride = 10000;  // primes between checkpoint writes
  // Stop (as if killed) after this many primes in this invocation, at a stride boundary.
  std::optional<u64> stop_after;
  u64 m_max = 20;  // qpm_zero
  unsigned threads = 0;
};

// KBW_CHECKPOINT_STRIDE when set and positive, else 10^4.
u64 default_checkpoint_stride();

// Runs (or resumes) a campaign. A resume checkpoint must name the same campaign and range.
Checkpoint run_campaign(const std::string& id, const PrimeRange& range, const std::optional<Checkpoint>& resume,
                        const RunOptions& options = {});

nlohmann::json to_json(const Checkpoint& c);
// CorruptCheckpoint on malformed documents or inconsistent contents.
Checkpoint checkpoint_from_json(const nlohmann::json& j);
Checkpoint load_checkpoint(const std::string& path);
// Writes to path + ".tmp" then renames over path.
void save_checkpoint(const std::string& path, const Checkpoint& c);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct Fixture {
  std::vector<Hit> hits;
  u64 covered_to = 0;   // the fixture is the complete hit set on [3, covered_to]
  bool contains = false;  // only require the listed hits to appear
};
std::optional<Fixture> expected_fixture(const std::string& id);

struct VerifyReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Hit> expected;
  std::vector<Hit> missing;
  std::vector<Hit> unexpected;
  std::string note;
};
VerifyReport verify_expected(const Checkpoint& c);

std::string render_hit(const Hit& h);

}  // namespace kbw

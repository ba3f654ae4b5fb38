#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "kbw/search.hpp"

namespace harness {

inline std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("kbw_" + name)).string();
}

struct ResumeTrial {
  std::string campaign;
  kbw::u64 hi = 0;
  kbw::u64 stride = 0;
  int kills = 0;
  bool identical = false;
};

// Kills the campaign at random checkpoint boundaries (stop_after in whole strides),
// reloads the checkpoint from disk each time, and compares with one uninterrupted run.
inline ResumeTrial resume_trial(std::mt19937_64& rng, const std::string& path) {
  static const char* kCampaigns[] = {"wilson_zero", "wieferich",    "mirimanoff", "gertsch_wilson", "vp_zero",
                                     "vpprime_zero", "qpm_zero",    "kurepa_zero", "bell_one",      "gertsch_zero"};
  ResumeTrial t;
  t.campaign = kCampaigns[rng() % std::size(kCampaigns)];
  t.hi = 500 + rng() % 4000;
  t.stride = 1 + rng() % 60;
  const kbw::PrimeRange range = kbw::PrimeRange::checked(3, t.hi);

  kbw::RunOptions whole;
  whole.stride = t.stride;
  kbw::Checkpoint reference = kbw::run_campaign(t.campaign, range, std::nullopt, whole);

  std::filesystem::remove(path);
  kbw::RunOptions o;
  o.checkpoint_path = path;
  o.stride = t.stride;
  std::optional<kbw::Checkpoint> state;
  while (true) {
    o.stop_after = t.stride * (1 + rng() % 5);
    kbw::Checkpoint c = kbw::run_campaign(t.campaign, range, state, o);
    if (c.complete()) break;
    ++t.kills;
    state = kbw::load_checkpoint(path);
  }
  kbw::Checkpoint final_state = kbw::load_checkpoint(path);
  t.identical = final_state.hits == reference.hits && final_state.complete() &&
                final_state.primes_processed == reference.primes_processed;
  std::filesystem::remove(path);
  return t;
}

}  // namespace harness

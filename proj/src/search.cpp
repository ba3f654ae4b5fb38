#include "kbw/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "kbw/error.hpp"
#include "kbw/parallel.hpp"
#include "kbw/residues.hpp"

namespace kbw {

const std::vector<CampaignInfo>& campaigns() {
  static const std::vector<CampaignInfo> all = {
      {"wilson_zero", "W_p = 0 mod p (Wilson primes)", false},
      {"wieferich", "q_p(2) = 0 mod p", false},
      {"mirimanoff", "q_p(3) = 0 mod p", false},
      {"gertsch_wilson", "G_p = W_p mod p", false},
      {"gertsch_zero", "G_p = 0 mod p", false},
      {"vp_zero", "W_p + 2 = 0 mod p", false},
      {"vpprime_zero", "W_p + 1/2 = 0 mod p", false},
      {"qpm_zero", "AG_p + q_p(m) = 0 mod p, pairs (m, p) with m <= m_max", true},
      {"kurepa_zero", "K_p = 0 mod p", false},
      {"bell_one", "Bell_{p-1} = 1 mod p", false},
  };
  return all;
}

const CampaignInfo& campaign_info(const std::string& id) {
  for (const auto& c : campaigns())
    if (c.id == id) return c;
  throw DomainError(fmt::format("unknown campaign '{}'", id));
}

u64 default_checkpoint_stride() {
  if (const char* env = std::getenv("KBW_CHECKPOINT_STRIDE")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) return static_cast<u64>(v);
    } catch (...) {
    }
  }
  return 10000;
}

namespace {

// Bernoulli-side check of the fast W_p = -2 test used by vp_zero.
constexpr u64 kVpDualPathBound = 1000;

std::vector<Hit> evaluate(const std::string& id, u64 p, u64 m_max) {
  std::vector<Hit> out;
  if (p == 2) return out;
  auto hit_if = [&](bool b) {
    if (b) out.push_back({p, 0});
  };
  if (id == "wilson_zero") {
    hit_if(wilson_quotient_mod(p).value() == 0);
  } else if (id == "wieferich") {
    hit_if(fermat_quotient_mod(p, u64{2}).value() == 0);
  } else if (id == "mirimanoff") {
    hit_if(p != 3 && fermat_quotient_mod(p, u64{3}).value() == 0);
  } else if (id == "gertsch_wilson") {
    hit_if(gertsch_quotient_mod(p).value() == wilson_quotient_mod(p).value());
  } else if (id == "gertsch_zero") {
    hit_if(gertsch_quotient_mod(p).value() == 0);
  } else if (id == "vp_zero") {
    u64 w = wilson_quotient_mod(p).value();
    bool fast = add_mod(w, 2 % p, p) == 0;
    if (p <= kVpDualPathBound && p <= bernoulli_mod_cap()) {
      bool slow = agoh_atoms(p).v == 0;
      if (slow != fast) throw InvariantViolation(fmt::format("vp_zero paths disagree at p={}", p));
    }
    hit_if(fast);
  } else if (id == "vpprime_zero") {
    u64 w = wilson_quotient_mod(p).value();
    hit_if(add_mod(w, inv_mod(2, p), p) == 0);
  } else if (id == "qpm_zero") {
    u64 ag = agoh_giuga_mod(p).value();
    for (u64 m = 1; m <= m_max; ++m) {
      if (m % p == 0) continue;
      if (add_mod(ag, fermat_quotient_mod(p, m).value(), p) == 0) out.push_back({p, m});
    }
  } else if (id == "kurepa_zero") {
    hit_if(kurepa_mod(p).value() == 0);
  } else if (id == "bell_one") {
    hit_if(bell_pm1_mod(p).value() == 1);
  } else {
    throw DomainError(fmt::format("unknown campaign '{}'", id));
  }
  return out;
}

void validate(const Checkpoint& c) {
  if (c.version != kCheckpointVersion)
    throw CorruptCheckpoint(fmt::format("checkpoint version {} is not supported", c.version));
  if (c.lo < 2 || c.hi < c.lo) throw CorruptCheckpoint("checkpoint range is invalid");
  if (c.last_p + 1 < c.lo || c.last_p > c.hi) throw CorruptCheckpoint("checkpoint last_p lies outside its range");
  if (!std::is_sorted(c.hits.begin(), c.hits.end()) ||
      std::adjacent_find(c.hits.begin(), c.hits.end()) != c.hits.end())
    throw CorruptCheckpoint("checkpoint hits are not strictly ascending");
  for (const Hit& h : c.hits)
    if (h.p < c.lo || h.p > c.last_p) throw CorruptCheckpoint(fmt::format("checkpoint hit {} lies outside [lo, last_p]", h.p));
}

}  // namespace

Checkpoint run_campaign(const std::string& id, const PrimeRange& range, const std::optional<Checkpoint>& resume,
                        const RunOptions& options) {
  const CampaignInfo& info = campaign_info(id);
  PrimeRange r = PrimeRange::checked(range.lo, range.hi);
  Checkpoint cp;
  if (resume) {
    validate(*resume);
    if (resume->campaign != id)
      throw CorruptCheckpoint(fmt::format("checkpoint belongs to campaign '{}', not '{}'", resume->campaign, id));
    if (resume->lo != r.lo || resume->hi != r.hi)
      throw CorruptCheckpoint(fmt::format("checkpoint range [{}, {}] differs from requested [{}, {}]", resume->lo,
                                          resume->hi, r.lo, r.hi));
    if (info.pairs && resume->m_max != options.m_max)
      throw CorruptCheckpoint(fmt::format("checkpoint m_max {} differs from requested {}", resume->m_max, options.m_max));
    cp = *resume;
  } else {
    cp.campaign = id;
    cp.lo = r.lo;
    cp.hi = r.hi;
    cp.last_p = r.lo - 1;
    cp.m_max = info.pairs ? options.m_max : 0;
  }
  if (cp.complete()) return cp;

  const u64 stride = options.stride == 0 ? 1 : options.stride;
  const auto start = std::chrono::steady_clock::now();
  const double elapsed_before = cp.elapsed_s;
  auto flush = [&] {
    cp.elapsed_s = elapsed_before + std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.checkpoint_path) save_checkpoint(*options.checkpoint_path, cp);
  };

  std::vector<u64> chunk;
  u64 done_here = 0;
  bool stopped = false;
  auto run_chunk = [&](u64 upto) {
    auto results = parallel_map(chunk, [&](u64 p) { return evaluate(id, p, cp.m_max); }, options.threads);
    for (auto& hs : results) cp.hits.insert(cp.hits.end(), hs.begin(), hs.end());
    cp.primes_processed += chunk.size();
    done_here += chunk.size();
    cp.last_p = upto;
    chunk.clear();
    flush();
    if (options.stop_after && done_here >= *options.stop_after) stopped = true;
  };

  // The enumeration stops early by throwing; the sieve has no other exit.
  struct Stop {};
  try {
    for_each_prime(PrimeRange{cp.last_p + 1 < 2 ? 2 : cp.last_p + 1, r.hi}, [&](u64 p) {
      chunk.push_back(p);
      if (chunk.size() == stride) {
        run_chunk(p);
        if (stopped) throw Stop{};
      }
    });
  } catch (const Stop&) {
    return cp;
  }
  run_chunk(r.hi);
  return cp;
}

nlohmann::json to_json(const Checkpoint& c) {
  nlohmann::json hits = nlohmann::json::array();
  for (const Hit& h : c.hits) {
    if (h.m == 0) hits.push_back(h.p);
    else hits.push_back({h.m, h.p});
  }
  nlohmann::json j = {{"campaign", c.campaign}, {"lo", c.lo},
                      {"hi", c.hi},             {"last_p", c.last_p},
                      {"hits", hits},           {"elapsed_s", c.elapsed_s},
                      {"primes_processed", c.primes_processed}, {"version", c.version}};
  if (c.m_max) j["m_max"] = c.m_max;
  return j;
}

Checkpoint checkpoint_from_json(const nlohmann::json& j) {
  Checkpoint c;
  try {
    c.campaign = j.at("campaign").get<std::string>();
    c.lo = j.at("lo").get<u64>();
    c.hi = j.at("hi").get<u64>();
    c.last_p = j.at("last_p").get<u64>();
    c.elapsed_s = j.at("elapsed_s").get<double>();
    c.version = j.at("version").get<int>();
    c.primes_processed = j.value("primes_processed", u64{0});
    c.m_max = j.value("m_max", u64{0});
    for (const auto& h : j.at("hits")) {
      if (h.is_array()) {
        if (h.size() != 2) throw CorruptCheckpoint("pair hit must have two entries");
        c.hits.push_back({h[1].get<u64>(), h[0].get<u64>()});
      } else {
        c.hits.push_back({h.get<u64>(), 0});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw CorruptCheckpoint(fmt::format("malformed checkpoint: {}", e.what()));
  }
  validate(c);
  for (const auto& info : campaigns())
    if (info.id == c.campaign) return c;
  throw CorruptCheckpoint(fmt::format("checkpoint names unknown campaign '{}'", c.campaign));
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorruptCheckpoint(fmt::format("cannot open checkpoint '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw CorruptCheckpoint(fmt::format("checkpoint '{}' is not valid JSON", path));
  return checkpoint_from_json(j);
}

void save_checkpoint(const std::string& path, const Checkpoint& c) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write checkpoint '{}'", tmp));
    out << to_json(c).dump(2) << '\n';
    out.flush();
    if (!out) throw Error(fmt::format("short write to checkpoint '{}'", tmp));
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(fmt::format("cannot rename checkpoint to '{}'", path));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<Fixture> expected_fixture(const std::string& id) {
  auto primes = [](std::initializer_list<u64> ps) {
    std::vector<Hit> v;
    for (u64 p : ps) v.push_back({p, 0});
    return v;
  };
  // covered_to is the bound up to which each set has been checked to be complete.
  if (id == "wilson_zero") return Fixture{primes({5, 13, 563}), 20000000000000ULL, false};
  if (id == "wieferich") return Fixture{primes({1093, 3511}), 1000000000000000ULL, false};
  if (id == "mirimanoff") return Fixture{primes({11, 1006003}), 100000000000000ULL, false};
  if (id == "gertsch_wilson") return Fixture{primes({3, 7, 2887}), 3000, false};
  if (id == "gertsch_zero") return Fixture{{}, 3000, false};
  if (id == "vp_zero") return Fixture{primes({3, 7, 71}), 2000, false};
  if (id == "vpprime_zero") return Fixture{primes({3, 227, 1163}), 1500, false};
  if (id == "qpm_zero") return Fixture{{{3, 2}, {7, 6}, {19, 14}, {23, 5}, {31, 19}, {37, 20}}, 37, true};
  if (id == "kurepa_zero") return Fixture{{}, 100000, false};
  if (id == "bell_one") return Fixture{{}, 100000, false};
  return std::nullopt;
}

VerifyReport verify_expected(const Checkpoint& c) {
  VerifyReport rep;
  auto fx = expected_fixture(c.campaign);
  if (!fx) {
    rep.note = "no fixture for this campaign";
    return rep;
  }
  for (const Hit& h : fx->hits)
    if (h.p >= c.lo && h.p <= c.hi) rep.expected.push_back(h);
  if (!c.complete()) {
    rep.note = fmt::format("run stopped at {} of [{}, {}]", c.last_p, c.lo, c.hi);
    return rep;
  }
  for (const Hit& h : rep.expected)
    if (!std::binary_search(c.hits.begin(), c.hits.end(), h)) rep.missing.push_back(h);
  if (!fx->contains) {
    for (const Hit& h : c.hits)
      if (h.p <= fx->covered_to && !std::binary_search(rep.expected.begin(), rep.expected.end(), h))
        rep.unexpected.push_back(h);
  }
  if (!rep.missing.empty() || !rep.unexpected.empty()) {
    rep.verdict = Verdict::Fail;
  } else if (!fx->contains && c.hi > fx->covered_to) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = fmt::format("fixture only covers p <= {}", fx->covered_to);
  } else {
    rep.verdict = Verdict::Pass;
  }
  return rep;
}

std::string render_hit(const Hit& h) { return h.m == 0 ? fmt::format("{}", h.p) : fmt::format("({}, {})", h.m, h.p); }

}  // namespace kbw

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "harness.hpp"
#include "kbw/cli.hpp"
#include "kbw/residues.hpp"

using namespace kbw;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result kbw_run(std::vector<std::string> args) {
  args.insert(args.begin(), "kbw");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }
}  // namespace

TEST_CASE("residues") {
  Result r = kbw_run({"residues", "--p", "13"});
  CHECK(r.code == cli::kExitOk);
  CHECK(has(r.out, "k_mod             10"));
  CHECK(has(r.out, "bell_mod          11"));
  CHECK(has(r.out, "wilson_q          0  <- zero"));

  Result j = kbw_run({"--format", "json", "residues", "--p", "563"});
  CHECK(j.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(j.out)["wilson_q"] == 0);

  CHECK(kbw_run({"residues", "--p", "4"}).code == cli::kExitUsage);
  CHECK(kbw_run({"residues", "--p", "2"}).code == cli::kExitUsage);
  CHECK(kbw_run({"residues"}).code == cli::kExitUsage);
}

TEST_CASE("usage errors and help") {
  Result h = kbw_run({"--help"});
  CHECK(h.code == cli::kExitOk);
  CHECK(has(h.out, "Usage"));
  CHECK(kbw_run({}).code == cli::kExitUsage);
  CHECK(kbw_run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(kbw_run({"--format", "xml", "gcd"}).code == cli::kExitUsage);
  CHECK(kbw_run({"check", "--id", "C99"}).code == cli::kExitUsage);
  CHECK(kbw_run({"search", "nope", "--to", "10"}).code == cli::kExitUsage);
  CHECK(kbw_run({"adele", "gamma_X"}).code == cli::kExitUsage);
  CHECK(kbw_run({"table", "nope"}).code == cli::kExitUsage);
}

TEST_CASE("check and catalog") {
  Result r = kbw_run({"check", "--id", "C01", "--from", "3", "--to", "600"});
  CHECK(r.code == cli::kExitOk);

  Result c31 = kbw_run({"--format", "csv", "check", "--id", "C31", "--to", "3000"});
  CHECK(c31.code == cli::kExitOk);
  CHECK(has(c31.err, "3 7 2887"));

  Result cat = kbw_run({"--format", "json", "catalog", "--to", "100", "--ids", "C05,C24"});
  CHECK(cat.code == cli::kExitOk);
  nlohmann::json j = nlohmann::json::parse(cat.out);
  CHECK(j["checks"].size() == 2);
  CHECK(j["failures"].empty());

  const std::string path = harness::temp_path("check_out.csv");
  CHECK(kbw_run({"--format", "csv", "check", "--id", "C05", "--to", "50", "--out", path}).code == cli::kExitOk);
  CHECK(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
}

TEST_CASE("capacity limits exit 3 or become skips") {
  CHECK(kbw_run({"quotients", "--p", "101"}).code == cli::kExitOk);
  CHECK(kbw_run({"quotients", "--p", "103"}).code == cli::kExitCapacity);
  CHECK(kbw_run({"factor-ln1", "--nmax", "10", "--trial-limit", "5", "--rho-iterations", "1"}).code ==
        cli::kExitCapacity);

  const u64 saved = bell_mod_cap();
  Result r = kbw_run({"--bell-cap", "10", "check", "--id", "C04", "--to", "50"});
  CHECK(r.code == cli::kExitOk);
  CHECK(has(r.out, "skipped"));
  set_bell_mod_cap(saved);
}

TEST_CASE("tables report misprints with exit 1") {
  CHECK(kbw_run({"table", "gertsch"}).code == cli::kExitOk);
  CHECK(kbw_run({"table", "table1"}).code == cli::kExitOk);
  Result ag = kbw_run({"table", "agoh_giuga"});
  CHECK(ag.code == cli::kExitMismatch);
  CHECK(has(ag.out, "diffs: 2"));
  CHECK(kbw_run({"table", "hodge"}).code == cli::kExitMismatch);
}

TEST_CASE("search with checkpoint and resume") {
  Result w = kbw_run({"--format", "json", "search", "wieferich", "--to", "1e4"});
  CHECK(w.code == cli::kExitOk);
  nlohmann::json j = nlohmann::json::parse(w.out);
  CHECK(j["hits"] == nlohmann::json::array({1093, 3511}));
  CHECK(j["fixture"] == "pass");
  CHECK_FALSE(j.contains("elapsed_s"));

  const std::string path = harness::temp_path("cli_resume.json");
  std::filesystem::remove(path);
  Result first = kbw_run({"search", "wilson_zero", "--to", "1000", "--checkpoint", path, "--stride", "20",
                          "--stop-after", "40"});
  CHECK(first.code == cli::kExitOk);
  CHECK(has(first.out, "stopped through"));
  Result rest = kbw_run({"search", "wilson_zero", "--to", "1000", "--checkpoint", path, "--resume", "--verify"});
  CHECK(rest.code == cli::kExitOk);
  CHECK(has(rest.out, "hit 563"));
  CHECK(has(rest.out, "complete through 1000"));
  CHECK(has(rest.out, "fixture: pass"));

  std::ofstream(path) << "garbage";
  CHECK(kbw_run({"search", "wilson_zero", "--to", "1000", "--checkpoint", path, "--resume"}).code ==
        cli::kExitUsage);
  std::filesystem::remove(path);
  CHECK(kbw_run({"search", "wilson_zero", "--to", "1000", "--resume"}).code == cli::kExitUsage);
}

TEST_CASE("adele") {
  Result r = kbw_run({"adele", "gamma_W", "--pmax", "13"});
  CHECK(r.code == cli::kExitOk);
  CHECK(has(r.out, "p=5 0"));
  CHECK(has(r.out, "p=13 0"));
  CHECK(kbw_run({"adele", "gamma_AG - 1", "--compare", "gamma_W", "--pmax", "300"}).code == cli::kExitOk);
  Result m = kbw_run({"adele", "gamma_G", "--compare", "gamma_W", "--pmax", "50"});
  CHECK(m.code == cli::kExitMismatch);
  CHECK(has(m.out, "2 agree"));
}

TEST_CASE("factor-ln1 and gcd") {
  Result f = kbw_run({"--format", "csv", "factor-ln1", "--nmax", "12"});
  CHECK(f.code == cli::kExitOk);
  CHECK(has(f.out, "5,33,3 × 11"));
  Result g = kbw_run({"--format", "json", "gcd", "--nmax", "200"});
  CHECK(g.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(g.out)["holds"] == true);
}

TEST_CASE("machine-readable output is byte-stable across thread counts") {
  for (const char* f : {"csv", "json"}) {
    Result a = kbw_run({"--format", f, "--threads", "1", "catalog", "--to", "200"});
    Result b = kbw_run({"--format", f, "--threads", "4", "catalog", "--to", "200"});
    CHECK(a.out == b.out);
    Result s1 = kbw_run({"--format", f, "--threads", "1", "search", "qpm_zero", "--to", "300"});
    Result s4 = kbw_run({"--format", f, "--threads", "4", "search", "qpm_zero", "--to", "300"});
    CHECK(s1.out == s4.out);
    Result t1 = kbw_run({"--format", f, "--threads", "1", "table", "longtable", "--hi", "400"});
    Result t4 = kbw_run({"--format", f, "--threads", "4", "table", "longtable", "--hi", "400"});
    CHECK(t1.out == t4.out);
  }
}

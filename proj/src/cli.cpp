#include "kbw/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "kbw/adele.hpp"
#include "kbw/checks.hpp"
#include "kbw/error.hpp"
#include "kbw/exact.hpp"
#include "kbw/factorizer.hpp"
#include "kbw/parallel.hpp"
#include "kbw/residues.hpp"
#include "kbw/search.hpp"

namespace kbw::cli {

namespace {

enum class Format { Human, Csv, Json };

struct Globals {
  std::string format = "human";
  unsigned threads = 0;
  u64 bell_cap = 0;
  u64 bernoulli_cap = 0;
  Format fmt() const { return format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Human; }
};

// Accepts plain integers and exact scientific forms such as 1e6 or 1.1e6.
u64 parse_count(const std::string& s) {
  auto bad = [&] { return DomainError(fmt::format("'{}' is not a non-negative integer", s)); };
  auto e = s.find_first_of("eE");
  std::string mant = s.substr(0, e);
  unsigned exp = 0;
  if (e != std::string::npos) {
    const std::string tail = s.substr(e + 1);
    if (tail.empty() || tail.size() > 2 || tail.find_first_not_of("0123456789") != std::string::npos) throw bad();
    exp = static_cast<unsigned>(std::stoul(tail));
  }
  auto dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    std::string frac = mant.substr(dot + 1);
    if (frac.size() > exp) throw bad();
    digits = mant.substr(0, dot) + frac;
    exp -= static_cast<unsigned>(frac.size());
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
  Int v(digits);
  for (unsigned i = 0; i < exp; ++i) v *= 10;
  if (v > Int("18446744073709551615")) throw bad();
  return v.get_ui();
}

std::string join(const std::vector<u64>& v, const char* sep = " ") {
  std::string s;
  for (u64 x : v) s += (s.empty() ? "" : sep) + std::to_string(x);
  return s;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + csv_escape(cells[i]);
  return s;
}

std::string opt(const std::optional<u64>& v) { return v ? std::to_string(*v) : ""; }

std::string triple(const std::optional<AtomTriple>& a) {
  return a ? fmt::format("{} {} {}", a->v, a->v_star, a->v_prime) : "";
}

// ---- residues ----

int cmd_residues(const Globals& g, u64 p, unsigned e, std::ostream& out) {
  require_odd_prime(p, "--p");
  if (e < 1 || e > 3) throw DomainError("--pow must be 1, 2 or 3");
  ResidueProfile r = residue_profile(p, e);
  std::vector<std::pair<std::string, std::string>> fields = {
      {"p", std::to_string(r.p)},
      {"e", std::to_string(r.e)},
      {"k_mod", std::to_string(r.k_mod)},
      {"bell_mod", std::to_string(r.bell_mod)},
      {"der_mod", std::to_string(r.der_mod)},
      {"wilson_q", std::to_string(r.wilson_q)},
      {"gertsch_q", std::to_string(r.gertsch_q)},
      {"fermat_q2", std::to_string(r.fermat_q2)},
      {"fermat_q3", opt(r.fermat_q3)},
      {"lerch_q", std::to_string(r.lerch_q)},
      {"ag_q", std::to_string(r.ag_q)},
      {"v_atoms", triple(r.v_atoms)},
      {"vladimirov_atoms", triple(r.vladimirov)},
  };
  switch (g.fmt()) {
    case Format::Human:
      for (const auto& [k, v] : fields) {
        out << fmt::format("{:<17} {}", k, v.empty() ? "-" : v);
        if (k != "p" && k != "e" && v == "0") out << "  <- zero";
        out << "\n";
      }
      break;
    case Format::Csv: {
      std::vector<std::string> head, row;
      for (const auto& [k, v] : fields) head.push_back(k), row.push_back(v);
      out << csv_row(head) << "\n" << csv_row(row) << "\n";
      break;
    }
    case Format::Json: {
      nlohmann::json j = nlohmann::json::object();
      for (const auto& [k, v] : fields) {
        if (v.empty()) j[k] = nullptr;
        else if (k == "v_atoms" || k == "vladimirov_atoms") {
          std::istringstream in(v);
          u64 a, b, c;
          in >> a >> b >> c;
          j[k] = {a, b, c};
        } else {
          j[k] = std::stoull(v);
        }
      }
      out << j.dump() << "\n";
      break;
    }
  }
  return kExitOk;
}

// ---- quotients ----

int cmd_quotients(const Globals& g, u64 p, std::ostream& out) {
  require_odd_prime(p, "--p");
  if (p > kQuotientExactCap) throw CapacityError(fmt::format("exact quotients are capped at p <= {}", kQuotientExactCap));
  QuotientRecord q = quotient_record(p);
  std::vector<std::pair<std::string, std::string>> f = {{"p", std::to_string(p)},         {"W_p", to_string(q.wilson)},
                                                        {"L_p", to_string(q.lerch)},       {"G_p", to_string(q.gertsch)},
                                                        {"H_p", to_string(q.h)},           {"AG_p", to_string(agoh_giuga_exact(p))}};
  switch (g.fmt()) {
    case Format::Human:
      for (const auto& [k, v] : f) out << fmt::format("{:<5} {}\n", k, v);
      break;
    case Format::Csv: {
      std::vector<std::string> head, row;
      for (const auto& [k, v] : f) head.push_back(k), row.push_back(v);
      out << csv_row(head) << "\n" << csv_row(row) << "\n";
      break;
    }
    case Format::Json: {
      nlohmann::json j = nlohmann::json::object();
      for (const auto& [k, v] : f) j[k] = v;
      j["p"] = p;
      out << j.dump() << "\n";
      break;
    }
  }
  return kExitOk;
}

// ---- check / catalog ----

void write_outcomes(const Globals& g, const CatalogRun& run, std::ostream& out) {
  switch (g.fmt()) {
    case Format::Human:
      for (const auto& o : run.outcomes) {
        if (o.skipped) {
          out << fmt::format("{} p={} skipped", o.id, o.p);
        } else {
          out << fmt::format("{} p={} lhs={} rhs={} {}", o.id, o.p, o.lhs, o.rhs,
                             o.holds ? "holds" : (o.measurement ? "differs" : "FAILS"));
        }
        if (!o.note.empty()) out << "  # " << o.note;
        out << "\n";
      }
      break;
    case Format::Csv:
      out << "id,p,lhs,rhs,holds,skipped,note\n";
      for (const auto& o : run.outcomes)
        out << csv_row({o.id, std::to_string(o.p), o.lhs, o.rhs, o.holds ? "1" : "0", o.skipped ? "1" : "0", o.note})
            << "\n";
      break;
    case Format::Json: {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& o : run.outcomes) a.push_back(to_json(o));
      out << a.dump() << "\n";
      break;
    }
  }
}

nlohmann::json tally_json(const CheckDescriptor& d, const CheckTally& t) {
  nlohmann::json j = {{"id", d.id},         {"class", d.cls == CheckClass::Assert ? "assert" : "measure"},
                      {"evaluated", t.evaluated}, {"held", t.held},
                      {"failed", t.failed}, {"skipped", t.skipped}};
  if (d.cls == CheckClass::Measure) j["agreement_primes"] = t.agreement_primes;
  return j;
}

void write_findings(const CatalogRun& run, std::ostream& err) {
  for (const auto& [id, t] : run.tally) {
    if (check_descriptor(id).cls != CheckClass::Measure) continue;
    err << fmt::format("findings {}: holds at {} of {} primes{}{}\n", id, t.held, t.evaluated,
                       t.agreement_primes.empty() ? "" : ": ", join(t.agreement_primes));
  }
}

PrimeRange range_of(const std::string& from, const std::string& to) {
  return PrimeRange::checked(parse_count(from), parse_count(to));
}

std::ostream& target(const std::string& path, std::ofstream& file, std::ostream& out) {
  if (path.empty()) return out;
  file.open(path);
  if (!file) throw DomainError(fmt::format("cannot open '{}' for writing", path));
  return file;
}

int cmd_check(const Globals& g, const std::string& id, const std::string& from, const std::string& to,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  check_descriptor(id);
  CatalogRun run = run_catalog(range_of(from, to), {id}, g.threads);
  std::ofstream file;
  write_outcomes(g, run, target(out_path, file, out));
  write_findings(run, err);
  return run.ok() ? kExitOk : kExitMismatch;
}

int cmd_catalog(const Globals& g, const std::string& from, const std::string& to, const std::string& ids,
                std::ostream& out, std::ostream& err) {
  std::vector<std::string> subset;
  std::stringstream in(ids);
  for (std::string s; std::getline(in, s, ',');)
    if (!s.empty()) subset.push_back(s);
  CatalogRun run = run_catalog(range_of(from, to), subset, g.threads);
  std::vector<CheckDescriptor> order;
  for (const auto& d : check_catalog())
    if (run.tally.count(d.id)) order.push_back(d);
  switch (g.fmt()) {
    case Format::Human:
      for (const auto& d : order) {
        const CheckTally& t = run.tally.at(d.id);
        out << fmt::format("{} {:<7} evaluated={} held={} failed={} skipped={}", d.id,
                           d.cls == CheckClass::Assert ? "assert" : "measure", t.evaluated, t.held, t.failed,
                           t.skipped);
        if (d.cls == CheckClass::Measure && t.agreement_primes.size() <= 20)
          out << " agree_at=[" << join(t.agreement_primes, ",") << "]";
        out << "\n";
      }
      for (const auto& o : run.outcomes)
        if (!o.skipped && !o.holds && !o.measurement)
          out << fmt::format("FAIL {} p={} lhs={} rhs={} {}\n", o.id, o.p, o.lhs, o.rhs, o.note);
      out << fmt::format("assertion failures: {}\n", run.assertion_failures);
      break;
    case Format::Csv:
      out << "id,class,evaluated,held,failed,skipped\n";
      for (const auto& d : order) {
        const CheckTally& t = run.tally.at(d.id);
        out << csv_row({d.id, d.cls == CheckClass::Assert ? "assert" : "measure", std::to_string(t.evaluated),
                        std::to_string(t.held), std::to_string(t.failed), std::to_string(t.skipped)})
            << "\n";
      }
      break;
    case Format::Json: {
      nlohmann::json a = nlohmann::json::array(), fails = nlohmann::json::array();
      for (const auto& d : order) a.push_back(tally_json(d, run.tally.at(d.id)));
      for (const auto& o : run.outcomes)
        if (!o.skipped && !o.holds && !o.measurement) fails.push_back(to_json(o));
      out << nlohmann::json{{"checks", a}, {"failures", fails}}.dump() << "\n";
      break;
    }
  }
  (void)err;
  return run.ok() ? kExitOk : kExitMismatch;
}

// ---- table ----

int cmd_table(const Globals& g, const std::string& name, const TableOptions& o, std::ostream& out) {
  TableReport r = reproduce_table(name, o);
  switch (g.fmt()) {
    case Format::Human: {
      out << r.title << "\n";
      std::string head;
      for (const auto& c : r.columns) head += (head.empty() ? "" : " | ") + c;
      out << head << "\n";
      for (const auto& row : r.rows) {
        std::string line;
        for (const auto& c : row) line += (line.empty() ? "" : " | ") + c;
        out << line << "\n";
      }
      for (const auto& n : r.notes) out << "note: " << n << "\n";
      out << fmt::format("diffs: {}\n", r.diffs.size());
      for (const auto& d : r.diffs)
        out << fmt::format("  {} [{}]: golden {} computed {}\n", d.key, d.column, d.golden, d.computed);
      break;
    }
    case Format::Csv:
      out << csv_row(r.columns) << "\n";
      for (const auto& row : r.rows) out << csv_row(row) << "\n";
      break;
    case Format::Json:
      out << to_json(r).dump() << "\n";
      break;
  }
  return r.diffs.empty() ? kExitOk : kExitMismatch;
}

// ---- search ----

struct SearchArgs {
  std::string campaign, from = "3", to, checkpoint;
  bool resume = false;
  bool verify = false;
  std::string stride;
  std::string stop_after;
  u64 m_max = 20;
};

int cmd_search(const Globals& g, const SearchArgs& a, std::ostream& out, std::ostream& err) {
  campaign_info(a.campaign);
  if (a.to.empty()) throw DomainError("--to is required");
  PrimeRange range = range_of(a.from, a.to);
  RunOptions o;
  if (!a.checkpoint.empty()) o.checkpoint_path = a.checkpoint;
  o.stride = a.stride.empty() ? default_checkpoint_stride() : parse_count(a.stride);
  if (o.stride == 0) throw DomainError("--stride must be positive");
  if (!a.stop_after.empty()) o.stop_after = parse_count(a.stop_after);
  o.m_max = a.m_max;
  o.threads = g.threads;
  std::optional<Checkpoint> resume;
  if (a.resume) {
    if (a.checkpoint.empty()) throw DomainError("--resume needs --checkpoint");
    resume = load_checkpoint(a.checkpoint);
  }
  Checkpoint c = run_campaign(a.campaign, range, resume, o);
  VerifyReport v = verify_expected(c);
  switch (g.fmt()) {
    case Format::Human:
      out << fmt::format("campaign {} on [{}, {}]\n", c.campaign, c.lo, c.hi);
      for (const Hit& h : c.hits) out << "hit " << render_hit(h) << "\n";
      out << fmt::format("{} through {}\n", c.complete() ? "complete" : "stopped", c.last_p);
      if (expected_fixture(c.campaign)) out << "fixture: " << to_string(v.verdict) << (v.note.empty() ? "" : " (" + v.note + ")") << "\n";
      break;
    case Format::Csv:
      out << (campaign_info(c.campaign).pairs ? "m,p\n" : "p\n");
      for (const Hit& h : c.hits) out << (h.m ? std::to_string(h.m) + "," : "") << h.p << "\n";
      break;
    case Format::Json: {
      nlohmann::json j = to_json(c);
      j.erase("elapsed_s");
      j["complete"] = c.complete();
      if (expected_fixture(c.campaign)) j["fixture"] = to_string(v.verdict);
      out << j.dump() << "\n";
      break;
    }
  }
  err << fmt::format("{} primes in {:.2f} s ({:.0f} primes/s)\n", c.primes_processed, c.elapsed_s,
                     c.primes_per_second());
  return (a.verify && v.verdict == Verdict::Fail) ? kExitMismatch : kExitOk;
}

// ---- adele ----

int cmd_adele(const Globals& g, const std::string& expr, const std::string& compare, const std::string& pmin,
              const std::string& pmax, std::ostream& out) {
  PrimeRange w = range_of(pmin, pmax);
  AdeleElement a = evaluate_adele_expression(expr, w);
  std::optional<AdeleComparison> cmp;
  if (!compare.empty()) cmp = adele_eq(a, evaluate_adele_expression(compare, w));
  std::vector<u64> undefined(a.undefined_at.begin(), a.undefined_at.end());
  switch (g.fmt()) {
    case Format::Human:
      out << fmt::format("{} on [{}, {}]\n", expr, w.lo, w.hi);
      for (const auto& [p, r] : a.residues) out << fmt::format("  p={} {}\n", p, r);
      out << "undefined at: " << (undefined.empty() ? "-" : join(undefined)) << "\n";
      if (cmp) {
        out << "compared with " << compare << ": " << cmp->agreement_primes.size() << " agree, "
            << cmp->mismatch_primes.size() << " differ";
        if (!cmp->mismatch_primes.empty()) out << " at " << join(cmp->mismatch_primes);
        out << "\n";
      }
      break;
    case Format::Csv:
      out << "p,residue\n";
      for (u64 p : sieve_primes(w)) out << p << "," << opt(a.at(p)) << "\n";
      break;
    case Format::Json: {
      nlohmann::json j = to_json(a);
      if (cmp) j["comparison"] = to_json(*cmp);
      out << j.dump() << "\n";
      break;
    }
  }
  return (cmp && !cmp->mismatch_primes.empty()) ? kExitMismatch : kExitOk;
}

// ---- factor-ln1 / gcd ----

int cmd_factor(const Globals& g, u64 n_max, const FactorBudget& budget, std::ostream& out) {
  if (n_max < 3) throw DomainError("--nmax must be at least 3");
  auto table = left_factorial_minus_one_table(n_max, budget, g.threads);
  bool complete = true;
  switch (g.fmt()) {
    case Format::Human:
      for (std::size_t i = 0; i < table.size(); ++i) out << fmt::format("{:>3}  {}\n", i + 3, render_factors(table[i]));
      break;
    case Format::Csv:
      out << "n,value,factors\n";
      for (std::size_t i = 0; i < table.size(); ++i)
        out << csv_row({std::to_string(i + 3), to_string(table[i].n), render_factors(table[i])}) << "\n";
      break;
    case Format::Json: {
      nlohmann::json a = nlohmann::json::array();
      for (std::size_t i = 0; i < table.size(); ++i) {
        nlohmann::json j = to_json(table[i]);
        j["index"] = i + 3;
        a.push_back(j);
      }
      out << a.dump() << "\n";
      break;
    }
  }
  for (const auto& f : table) complete = complete && f.complete();
  return complete ? kExitOk : kExitCapacity;
}

int cmd_gcd(const Globals& g, u64 n_max, std::ostream& out) {
  GcdReport r = kurepa_gcd_check(n_max);
  if (g.fmt() == Format::Json)
    out << nlohmann::json{{"n_max", r.n_max}, {"holds", r.holds()}, {"failures", r.failures}}.dump() << "\n";
  else
    out << fmt::format("gcd(!n, n!) = 2 for 2 <= n <= {}: {}{}\n", r.n_max, r.holds() ? "holds" : "fails at ",
                       join(r.failures));
  return r.holds() ? kExitOk : kExitMismatch;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kurepa, Bell and Wilson quotient toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::string bell_cap, bernoulli_cap;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "csv", "json"}));
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware)")->envname("KBW_THREADS");
  app.add_option("--bell-cap", bell_cap, "Largest n for the O(n^2) Bell triangle mod p")->envname("KBW_BELL_CAP");
  app.add_option("--bernoulli-cap", bernoulli_cap, "Largest p for the Bernoulli/Gregory tables mod p")
      ->envname("KBW_BERNOULLI_CAP");

  u64 p = 0;
  unsigned e = 1;
  auto* residues = app.add_subcommand("residues", "Residue profile of one prime: K_p, Bell_{p-1}, quotients, atoms");
  residues->add_option("--p", p, "Odd prime")->required();
  residues->add_option("--pow", e, "Work mod p^e (1..3)");

  auto* quotients = app.add_subcommand("quotients", "Exact Wilson, Lerch, Gertsch, H and Agoh-Giuga quotients");
  quotients->add_option("--p", p, "Odd prime")->required();

  std::string id, from = "3", to = "600", out_path, ids;
  auto* check = app.add_subcommand("check", "Run one congruence check over a prime range");
  check->add_option("--id", id, "Check id (C01..C35)")->required();
  check->add_option("--from", from, "Range start");
  check->add_option("--to", to, "Range end");
  check->add_option("--out", out_path, "Write records to this file");

  auto* catalog = app.add_subcommand("catalog", "Run the congruence catalog and print a per-check summary");
  catalog->add_option("--from", from, "Range start");
  catalog->add_option("--to", to, "Range end");
  catalog->add_option("--ids", ids, "Comma-separated subset");

  std::string table_name;
  TableOptions topt;
  bool long_run = false;
  u64 n_max = kDefaultFactorTableMax;
  auto* table = app.add_subcommand("table", "Recompute a reference table and diff it against the printed values");
  table->add_option("name", table_name, "table1 table2 gertsch agoh_giuga longtable factorizations hodge")->required();
  table->add_option("--nmax", n_max, "Largest n for factorizations");
  table->add_flag("--long", long_run, "Factorizations up to n = 30");
  table->add_option("--hi", topt.longtable_hi, "Largest p for longtable");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Scan a prime range for one congruence, with checkpoints");
  search->add_option("campaign", sa.campaign, "Campaign id")->required();
  search->add_option("--from", sa.from, "Range start");
  search->add_option("--to", sa.to, "Range end")->required();
  search->add_option("--checkpoint", sa.checkpoint, "Checkpoint file");
  search->add_flag("--resume", sa.resume, "Continue from the checkpoint file");
  search->add_option("--stride", sa.stride, "Primes between checkpoint writes")->envname("KBW_CHECKPOINT_STRIDE");
  search->add_option("--stop-after", sa.stop_after, "Stop after this many primes (simulated kill)");
  search->add_option("--m-max", sa.m_max, "Largest m for qpm_zero");
  search->add_flag("--verify", sa.verify, "Exit 1 when the hits contradict the known fixture");

  std::string expr, compare, pmin = "3", pmax = "100";
  auto* adele = app.add_subcommand("adele", "Evaluate an expression in adelic constants over a prime window");
  adele->add_option("expr", expr, "e.g. gamma_W, gamma_AG - gamma_W - 1, log_A(6)")->required();
  adele->add_option("--compare", compare, "Second expression to compare with");
  adele->add_option("--pmin", pmin, "Window start");
  adele->add_option("--pmax", pmax, "Window end");

  FactorBudget budget;
  auto* factor = app.add_subcommand("factor-ln1", "Factor !n - 1 for 3 <= n <= nmax");
  factor->add_option("--nmax", n_max, "Largest n");
  factor->add_flag("--long", long_run, "Use n = 30");
  factor->add_option("--trial-limit", budget.trial_limit, "Trial division bound");
  factor->add_option("--rho-iterations", budget.rho_iterations, "Pollard-Brent iteration budget per cofactor");

  u64 gcd_max = 1000;
  auto* gcd = app.add_subcommand("gcd", "Check gcd(!n, n!) = 2 for n up to nmax");
  gcd->add_option("--nmax", gcd_max, "Largest n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!bell_cap.empty()) set_bell_mod_cap(parse_count(bell_cap));
    if (!bernoulli_cap.empty()) set_bernoulli_mod_cap(parse_count(bernoulli_cap));
    if (*residues) return cmd_residues(g, p, e, out);
    if (*quotients) return cmd_quotients(g, p, out);
    if (*check) return cmd_check(g, id, from, to, out_path, out, err);
    if (*catalog) return cmd_catalog(g, from, to, ids, out, err);
    if (*table) {
      topt.threads = g.threads;
      topt.factor_n_max = long_run ? kLongFactorTableMax : n_max;
      return cmd_table(g, table_name, topt, out);
    }
    if (*search) return cmd_search(g, sa, out, err);
    if (*adele) return cmd_adele(g, expr, compare, pmin, pmax, out);
    if (*factor) return cmd_factor(g, long_run ? kLongFactorTableMax : n_max, budget, out);
    if (*gcd) return cmd_gcd(g, gcd_max, out);
  } catch (const CapacityError& ex) {
    err << "capacity: " << ex.what() << "\n";
    return kExitCapacity;
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const CorruptCheckpoint& ex) {
    err << "checkpoint: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const Error& ex) {
    err << "mismatch: " << ex.what() << "\n";
    return kExitMismatch;
  }
  return kExitUsage;
}

}  // namespace kbw::cli

#include <chrono>
#include <map>

#include <fmt/format.h>

#include "kbw/checks.hpp"
#include "kbw/error.hpp"
#include "kbw/exact.hpp"
#include "kbw/golden.hpp"
#include "kbw/parallel.hpp"
#include "kbw/residues.hpp"

namespace kbw {

namespace {

void cell(TableReport& r, const std::string& key, const std::string& column, const std::string& golden,
          const std::string& computed) {
  if (golden != computed) r.diffs.push_back({key, column, golden, computed});
}

TableReport report(std::string name, std::string title, std::vector<std::string> columns) {
  TableReport r;
  r.name = std::move(name);
  r.title = std::move(title);
  r.columns = std::move(columns);
  return r;
}

// Golden rationals are compared after canonicalization, so "2/4" and "1/2" agree.
std::string canonical(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) return s;
  q.canonicalize();
  return to_string(q);
}

TableReport table1(const TableOptions&) {
  TableReport r = report("table1", "K_p and Bell_{p-1}, exact and mod p", {"p", "K_p", "K_p mod p", "Bell_{p-1}", "Bell_{p-1} mod p"});
  for (const auto& g : golden::table1()) {
    const std::string key = std::to_string(g.p);
    std::string k = to_string(left_factorial(g.p));
    std::string b = to_string(bell_exact(g.p - 1));
    std::string km = std::to_string(kurepa_mod(g.p).value());
    std::string bm = std::to_string(bell_pm1_mod(g.p).value());
    cell(r, key, "K_p", g.kurepa, k);
    cell(r, key, "K_p mod p", std::to_string(g.kurepa_mod_p), km);
    cell(r, key, "Bell_{p-1}", g.bell, b);
    cell(r, key, "Bell_{p-1} mod p", std::to_string(g.bell_mod_p), bm);
    r.rows.push_back({key, k, km, b, bm});
  }
  return r;
}

TableReport table2(const TableOptions&) {
  TableReport r = report("table2", "Wilson, Lerch, Gertsch and H quotients", {"p", "W_p", "L_p", "G_p", "H_p"});
  for (const auto& g : golden::table2()) {
    const std::string key = std::to_string(g.p);
    QuotientRecord q = quotient_record(g.p);
    std::vector<std::string> row = {key, to_string(q.wilson), to_string(q.lerch), to_string(q.gertsch), to_string(q.h)};
    cell(r, key, "W_p", g.wilson, row[1]);
    cell(r, key, "L_p", canonical(g.lerch), row[2]);
    cell(r, key, "G_p", g.gertsch, row[3]);
    cell(r, key, "H_p", canonical(g.h), row[4]);
    r.rows.push_back(std::move(row));
  }
  return r;
}

TableReport gertsch(const TableOptions& o) {
  TableReport r = report("gertsch", "Gertsch quotients G_p", {"p", "G_p"});
  std::vector<golden::PrimeValueRow> rows = golden::gertsch();
  auto values = parallel_map(rows, [](const golden::PrimeValueRow& g) { return to_string(gertsch_quotient_exact(g.p)); },
                             o.threads);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cell(r, std::to_string(rows[i].p), "G_p", rows[i].value, values[i]);
    r.rows.push_back({std::to_string(rows[i].p), values[i]});
  }
  return r;
}

TableReport agoh_giuga(const TableOptions& o) {
  TableReport r = report("agoh_giuga", "Agoh-Giuga quotients (p B_{p-1} + 1)/p", {"p", "AG_p"});
  std::vector<golden::PrimeValueRow> rows = golden::agoh_giuga();
  auto values = parallel_map(rows, [](const golden::PrimeValueRow& g) { return to_string(agoh_giuga_exact(g.p)); },
                             o.threads);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cell(r, std::to_string(rows[i].p), "AG_p", canonical(rows[i].value), values[i]);
    r.rows.push_back({std::to_string(rows[i].p), values[i]});
  }
  return r;
}

TableReport longtable(const TableOptions& o) {
  TableReport r = report("longtable", "Bell_{p-1} mod p, W_p mod p and Bell_{p-1}/p + W_p mod p",
                {"p", "Bell_{p-1} mod p", "W_p mod p", "sum"});
  std::map<u64, golden::LongRow> gold;
  for (const auto& g : golden::longtable()) gold[g.p] = g;
  std::vector<u64> primes;
  for (u64 p : primes_between(3, o.longtable_hi)) primes.push_back(p);
  auto rows = parallel_map(primes, [](u64 p) {
    auto s = kbw_sum_mod(p);
    return std::vector<std::string>{std::to_string(p), std::to_string(bell_pm1_mod(p).value()),
                                    std::to_string(wilson_quotient_mod(p).value()),
                                    s ? std::to_string(s->value()) : "Fractional"};
  }, o.threads);
  std::vector<u64> ungolden;
  for (auto& row : rows) {
    u64 p = std::stoull(row[0]);
    auto it = gold.find(p);
    if (it == gold.end()) {
      ungolden.push_back(p);
    } else {
      cell(r, row[0], "Bell_{p-1} mod p", std::to_string(it->second.bell_mod_p), row[1]);
      cell(r, row[0], "W_p mod p", std::to_string(it->second.wilson_mod_p), row[2]);
      cell(r, row[0], "sum", it->second.sum, row[3]);
      gold.erase(it);
    }
    r.rows.push_back(std::move(row));
  }
  if (!ungolden.empty())
    r.notes.push_back(fmt::format("no golden row for {} prime(s) from {} to {}", ungolden.size(), ungolden.front(),
                                  ungolden.back()));
  for (const auto& [p, g] : gold)
    if (p <= o.longtable_hi) r.diffs.push_back({std::to_string(p), "p", "row present", "not a prime"});
  return r;
}

TableReport factorizations(const TableOptions& o) {
  TableReport r = report("factorizations", "Factorizations of !n - 1", {"n", "!n - 1", "factors"});
  std::map<u64, std::string> gold;
  for (const auto& g : golden::factorizations()) gold[g.n] = g.factors;
  for (const auto& f : left_factorial_minus_one_table(o.factor_n_max, o.budget, o.threads)) {
    const u64 n = 3 + r.rows.size();
    const std::string key = std::to_string(n);
    const std::string rendered = render_factors(f);
    if (!f.complete()) r.notes.push_back(fmt::format("n = {}: budget exhausted", n));
    auto it = gold.find(n);
    if (it == gold.end()) {
      r.notes.push_back(fmt::format("n = {}: no golden row", n));
    } else {
      auto printed = parse_factors(it->second);
      if (!(printed == f.factors) || !f.complete()) cell(r, key, "factors", it->second, rendered);
      if (multiply_out(printed) != f.n)
        r.notes.push_back(fmt::format("n = {}: the printed factors multiply to {}, not !n - 1", n,
                                      to_string(multiply_out(printed))));
    }
    r.rows.push_back({key, to_string(f.n), rendered});
  }
  return r;
}

TableReport hodge(const TableOptions&) {
  TableReport r = report("hodge", "b_g = ((2 - 2^{2g}) / 2^{2g}) B_{2g} / (2g)!", {"g", "b_g"});
  for (const auto& g : golden::hodge()) {
    std::string v = to_string(hodge_bg_exact(g.p));
    cell(r, std::to_string(g.p), "b_g", canonical(g.value), v);
    r.rows.push_back({std::to_string(g.p), v});
  }
  return r;
}

using Builder = TableReport (*)(const TableOptions&);

const std::vector<std::pair<std::string, Builder>>& builders() {
  static const std::vector<std::pair<std::string, Builder>> all = {
      {"table1", table1},         {"table2", table2},       {"gertsch", gertsch},
      {"agoh_giuga", agoh_giuga}, {"longtable", longtable}, {"factorizations", factorizations},
      {"hodge", hodge},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, _] : builders()) v.push_back(name);
    return v;
  }();
  return names;
}

TableReport reproduce_table(const std::string& name, const TableOptions& options) {
  for (const auto& [n, build] : builders()) {
    if (n != name) continue;
    auto t0 = std::chrono::steady_clock::now();
    TableReport r = build(options);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  throw DomainError(fmt::format("unknown table '{}'", name));
}

nlohmann::json to_json(const TableReport& t) {
  nlohmann::json diffs = nlohmann::json::array();
  for (const auto& d : t.diffs)
    diffs.push_back({{"key", d.key}, {"column", d.column}, {"golden", d.golden}, {"computed", d.computed}});
  return {{"table", t.name}, {"title", t.title}, {"columns", t.columns}, {"rows", t.rows},
          {"diffs", diffs},  {"notes", t.notes}};
}

}  // namespace kbw

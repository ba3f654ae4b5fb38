#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kbw/factorizer.hpp"
#include "kbw/modmath.hpp"

namespace kbw {

enum class CheckClass { Assert, Measure };

struct CheckDescriptor {
  std::string id;
  std::string title;
  CheckClass cls = CheckClass::Assert;
  u64 min_p = 3;
  std::string needs;  // kernels or caps the check depends on
};

// holds is true exactly when lhs == rhs. Aggregate checks put the number of
// subcases that held in lhs and the number evaluated in rhs.
struct CheckOutcome {
  std::string id;
  u64 p = 0;
  std::string lhs;
  std::string rhs;
  bool holds = false;
  bool skipped = false;
  bool measurement = false;
  std::string note;
};

// Numeric ids past C32 are extra measurements.
const std::vector<CheckDescriptor>& check_catalog();
const CheckDescriptor& check_descriptor(const std::string& id);  // DomainError when unknown

// Exact-identity checks (C24, C25, C29) build !n and n! for n near p.
inline constexpr u64 kExactIdentityCap = 5000;

// DomainError for unknown ids or when p is not an odd prime; an inapplicable
// p or an exceeded cap gives a skipped outcome.
CheckOutcome run_check(const std::string& id, u64 p);

struct CheckTally {
  u64 evaluated = 0;
  u64 held = 0;
  u64 failed = 0;
  u64 skipped = 0;
  std::vector<u64> agreement_primes;  // measurement checks: primes where the congruence held
};

struct CatalogRun {
  std::vector<CheckOutcome> outcomes;  // sorted by (catalog order of id, p)
  std::map<std::string, CheckTally> tally;
  u64 assertion_failures = 0;
  bool ok() const { return assertion_failures == 0; }
};

// Empty subset runs the whole catalog.
CatalogRun run_catalog(const PrimeRange& range, const std::vector<std::string>& subset = {}, unsigned threads = 0);

nlohmann::json to_json(const CheckOutcome& o);
std::string csv_escape(const std::string& s);

struct TableDiff {
  std::string key;
  std::string column;
  std::string golden;
  std::string computed;
};

struct TableReport {
  std::string name;
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<TableDiff> diffs;
  std::vector<std::string> notes;
  double seconds = 0;
};

struct TableOptions {
  u64 factor_n_max = kDefaultFactorTableMax;
  FactorBudget budget;
  u64 longtable_hi = 600;
  unsigned threads = 0;
};

const std::vector<std::string>& table_names();
// table1, table2, gertsch, agoh_giuga, longtable, factorizations, hodge. DomainError when unknown.
TableReport reproduce_table(const std::string& name, const TableOptions& options = {});

nlohmann::json to_json(const TableReport& t);

}  // namespace kbw

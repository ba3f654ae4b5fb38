#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kbw::golden {

struct Table1Row {
  std::uint64_t p;
  std::string kurepa;
  std::uint64_t kurepa_mod_p;
  std::string bell;
  std::uint64_t bell_mod_p;
};

struct Table2Row {
  std::uint64_t p;
  std::string wilson;
  std::string lerch;
  std::string gertsch;
  std::string h;
};

struct PrimeValueRow {
  std::uint64_t p;
  std::string value;
};

// Bell_{p-1} mod p, W_p mod p, and the sum column ("Fractional" when p does not divide Bell_{p-1}).
struct LongRow {
  std::uint64_t p;
  std::uint64_t bell_mod_p;
  std::uint64_t wilson_mod_p;
  std::string sum;
};

// Factors written "3^2x11x467".
struct FactorRow {
  std::uint64_t n;
  std::string factors;
};

const std::vector<Table1Row>& table1();
const std::vector<Table2Row>& table2();
const std::vector<PrimeValueRow>& gertsch();
const std::vector<PrimeValueRow>& agoh_giuga();
const std::vector<LongRow>& longtable();
const std::vector<FactorRow>& factorizations();
// b_1 .. b_6 as printed.
const std::vector<PrimeValueRow>& hodge();

}  // namespace kbw::golden

#pragma once

#include <optional>
#include <vector>

#include "kbw/modmath.hpp"

namespace kbw {

// Kernel caps. KBW_BELL_CAP / KBW_BERNOULLI_CAP override the defaults; setters win over both.
inline constexpr u64 kDefaultBellModCap = 20000;
inline constexpr u64 kDefaultBernoulliModCap = 5000;
u64 bell_mod_cap();
u64 bernoulli_mod_cap();
void set_bell_mod_cap(u64 cap);
void set_bernoulli_mod_cap(u64 cap);

// p^e, or CapacityError when it does not fit in 63 bits.
u64 prime_power(u64 p, unsigned e);

u64 factorial_mod(u64 n, u64 m);

// sum_{n=0}^{p-1} n! mod p^e, e in {1,2,3}.
Residue kurepa_mod(u64 p, unsigned e = 1);
// sum_{k=0}^{p-1} (-1)^k (k+1)(k+2)...(p-1) mod p. Independent route to K_p mod p.
Residue kurepa_gf_mod(u64 p);

// Bell triangle mod m. CapacityError when n exceeds bell_mod_cap().
Residue bell_mod(u64 n, u64 m);
// Bell_0 .. Bell_n mod m from the same triangle.
std::vector<u64> bell_mod_sequence(u64 n, u64 m);
// Bell_{p-1} mod p^e in O(p) from
//   Bell_n = sum_j (j^n / j!) sum_{i <= n-j} (-1)^i / i!,
// with j^{p-1} mod p^e filled in multiplicatively over a linear sieve. No cap.
Residue bell_pm1_mod(u64 p, unsigned e = 1);

Residue derangement_mod(u64 n, u64 m);

// W_p mod p^e from (p-1)! mod p^{e+1}. InvariantViolation when (p-1)! is not -1 mod p.
Residue wilson_quotient_mod(u64 p, unsigned e = 1);
// ((a^{p-1} mod p^{e+1}) - 1) / p mod p^e. DomainError when p | a.
Residue fermat_quotient_mod(u64 p, u64 a, unsigned e = 1);
Residue fermat_quotient_mod(u64 p, const mpz_class& a, unsigned e = 1);
Residue lerch_quotient_mod(u64 p);
Residue gertsch_quotient_mod(u64 p);

// B_k mod p for 0 <= k <= p-2.
struct BernoulliModTable {
  u64 p = 0;
  std::vector<u64> values;
  u64 at(u64 k) const { return values.at(k); }
};
// G_n mod p for 1 <= n <= p-2, stored at values[n-1].
struct GregoryModTable {
  u64 p = 0;
  std::vector<u64> values;
  u64 at(u64 n) const { return values.at(n - 1); }
};
BernoulliModTable bernoulli_mod_table(u64 p);
GregoryModTable gregory_mod_table(u64 p);

struct AtomTriple {
  u64 v = 0;
  u64 v_star = 0;
  u64 v_prime = 0;
  friend bool operator==(const AtomTriple&, const AtomTriple&) = default;
};
// Factorial-weighted atoms:
//   V = sum_{k=0}^{p-2} (-1)^k B_k/k!,  V* = sum B_k/k!,  V' = sum_{m=1}^{(p-3)/2} B_{2m}/(2m)!.
AtomTriple vladimirov_atoms(u64 p);
AtomTriple vladimirov_atoms(const BernoulliModTable& t);
// Same shape with B_k/k in place of B_k/k! (and 1 for k = 0). These are the atoms
// for which V = W+2, V* = W+1 and V' = W+1/2 mod p.
AtomTriple agoh_atoms(u64 p);
AtomTriple agoh_atoms(const BernoulliModTable& t);
// sum_{m=1}^{(p-3)/2} B_{2m}/(2m)! (K_{2m} - 1) mod p.
Residue vladimirov_rhs(u64 p);
Residue vladimirov_rhs(const BernoulliModTable& t);

struct AgohGiugaPaths {
  u64 p = 0;
  std::optional<u64> exact;  // residue of (p B_{p-1} + 1)/p, when B_{p-1} is within the exact cap
  std::optional<u64> table;  // sum_{k=1}^{p-2} (-1)^k B_k/k over the mod-p table, within the table cap
  u64 wilson_plus_one = 0;   // W_p + 1
};
AgohGiugaPaths agoh_giuga_paths(u64 p);
// AG_p mod p. Every available path is computed; disagreement raises InvariantViolation.
Residue agoh_giuga_mod(u64 p);
// AG_p + q_p(m). DomainError when p | m.
Residue special_quotient_mod(u64 p, u64 m);
// (Bell_{p-1}/p + W_p) mod p when p | Bell_{p-1}; nullopt ("Fractional") otherwise.
std::optional<Residue> kbw_sum_mod(u64 p);

// H_n^{(k)} = sum_{j=1}^n j^{-k} mod p, 1 <= n <= p-1.
Residue harmonic_mod(u64 p, u64 n, u64 k);
// sum_{0<k<p} Bell_k (-m)^{-k} mod p.
Residue sun_zagier_sum(u64 p, u64 m);

struct ResidueProfile {
  u64 p = 0;
  unsigned e = 1;
  u64 k_mod = 0;     // K_p mod p^e
  u64 bell_mod = 0;  // Bell_{p-1} mod p^e
  u64 der_mod = 0;
  u64 wilson_q = 0;
  u64 gertsch_q = 0;
  u64 fermat_q2 = 0;
  std::optional<u64> fermat_q3;  // undefined at p = 3
  u64 lerch_q = 0;
  u64 ag_q = 0;
  std::optional<AtomTriple> v_atoms;        // agoh_atoms, within the Bernoulli table cap
  std::optional<AtomTriple> vladimirov;     // factorial-weighted atoms, same cap
};
ResidueProfile residue_profile(u64 p, unsigned e = 1);
std::vector<ResidueProfile> residue_profiles(const PrimeRange& range, unsigned e = 1, unsigned threads = 0);

}  // namespace kbw

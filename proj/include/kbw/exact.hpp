#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "kbw/modmath.hpp"

namespace kbw {

using Int = mpz_class;
using Rat = mpq_class;

inline constexpr u64 kBellExactCap = 128;
inline constexpr u64 kBernoulliExactCap = 256;
inline constexpr u64 kGregoryExactCap = 256;
// Exact Lerch/H quotients raise every a < p to the (p-1)-th power.
inline constexpr u64 kQuotientExactCap = 101;

Int factorial(u64 n);
Int binomial(u64 n, u64 k);
// !n = 0! + 1! + ... + (n-1)!, so !0 = 0.
Int left_factorial(u64 n);

// Bell triangle, one row at a time. CapacityError above kBellExactCap.
Int bell_exact(u64 n);
// D_n = n D_{n-1} + (-1)^n.
Int derangement_exact(u64 n);
// n! * sum_{k<=n} (-1)^k / k!, kept separate so the two routes can be compared.
Int derangement_closed_form(u64 n);
// Throws DomainError when k > n.
Int stirling2(u64 n, u64 k);

// Memoized under a mutex; CapacityError above the caps.
Rat bernoulli_exact(u64 k);
Rat gregory_exact(u64 n);

Int wilson_quotient_exact(u64 p);
Int fermat_quotient_exact(u64 p, u64 a);
Int gertsch_quotient_exact(u64 p);
Rat lerch_quotient_exact(u64 p);
Rat h_quotient_exact(u64 p);

struct QuotientRecord {
  u64 p = 0;
  Int wilson;
  Rat lerch;
  Int gertsch;
  Rat h;
};
QuotientRecord quotient_record(u64 p);

// (p B_{p-1} + 1) / p.
Rat agoh_giuga_exact(u64 p);
// ((2 - 2^{2g}) / 2^{2g}) * B_{2g} / (2g)!.
Rat hodge_bg_exact(u64 g);

// sum_{k=1}^{n-1} k^{n-1} mod n.
Residue giuga_sum(u64 n);

struct IdentityLine {
  std::string name;
  Int lhs;
  Int rhs;
  bool holds = false;
};

// K_{n+1} = K_n + n!, and for even n = 2g also K_{2g} - K_{2g-1} = (2g-1)!.
std::vector<IdentityLine> successor_identities(u64 n);
// (2g1-1)! + (2g2-1)! against (2(g1+g2)-1)!. Evaluated and reported; it does not hold in general.
IdentityLine genus_split_identity(u64 g1, u64 g2);

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

}  // namespace kbw

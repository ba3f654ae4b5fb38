#include "kbw/exact.hpp"

#include <mutex>

#include <fmt/format.h>

#include "kbw/error.hpp"

namespace kbw {

Int factorial(u64 n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Int binomial(u64 n, u64 k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int left_factorial(u64 n) {
  Int sum = 0, f = 1;
  for (u64 m = 0; m < n; ++m) {
    if (m > 0) f *= m;
    sum += f;
  }
  return sum;
}

Int bell_exact(u64 n) {
  if (n > kBellExactCap)
    throw CapacityError(fmt::format("bell_exact({}) exceeds the exact cap {}", n, kBellExactCap));
  // Row r of the Aitken triangle starts with the last entry of row r-1; its first entry is Bell_r.
  std::vector<Int> row{1};
  for (u64 r = 1; r <= n; ++r) {
    std::vector<Int> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (const Int& x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

Int derangement_exact(u64 n) {
  Int d = 1;
  for (u64 k = 1; k <= n; ++k) {
    d *= k;
    if (k % 2 == 0) d += 1;
    else d -= 1;
  }
  return d;
}

Int derangement_closed_form(u64 n) {
  Rat s = 0;
  Int f = 1;
  for (u64 k = 0; k <= n; ++k) {
    if (k > 0) f *= k;
    Rat term(Int(1), f);
    if (k % 2 == 0) s += term;
    else s -= term;
  }
  s *= Rat(factorial(n));
  s.canonicalize();
  if (s.get_den() != 1) throw InvariantViolation("derangement closed form is not an integer");
  return s.get_num();
}

Int stirling2(u64 n, u64 k) {
  if (k > n) throw DomainError(fmt::format("stirling2({}, {}) needs k <= n", n, k));
  std::vector<Int> row(k + 1, 0);
  row[0] = 1;
  for (u64 i = 1; i <= n; ++i) {
    u64 top = std::min(i, k);
    for (u64 j = top; j >= 1; --j) row[j] = row[j] * j + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

namespace {

struct RatMemo {
  std::mutex mu;
  std::vector<Rat> values;
};

RatMemo& bernoulli_memo() {
  static RatMemo memo;
  return memo;
}

RatMemo& gregory_memo() {
  static RatMemo memo;
  return memo;
}

}  // namespace

Rat bernoulli_exact(u64 k) {
  if (k > kBernoulliExactCap)
    throw CapacityError(fmt::format("bernoulli_exact({}) exceeds the exact cap {}", k, kBernoulliExactCap));
  RatMemo& memo = bernoulli_memo();
  std::lock_guard<std::mutex> lock(memo.mu);
  auto& B = memo.values;
  if (B.empty()) {
    B.push_back(Rat(1));
    B.push_back(Rat(-1, 2));
  }
  while (B.size() <= k) {
    u64 m = B.size();  // computing B_m from n = m + 1
    if (m % 2 == 1) {
      B.push_back(Rat(0));
      continue;
    }
    u64 n = m + 1;
    Rat s = 1;
    Int c = n;  // C(n, 1)
    for (u64 j = 1; j + 1 < n; ++j) {
      if (j > 1) c = c * (n - j + 1) / j;
      if (sgn(B[j]) != 0) s += Rat(c) * B[j];
    }
    Rat b = -s / Rat(Int(n));
    b.canonicalize();
    B.push_back(b);
  }
  return B[k];
}

Rat gregory_exact(u64 n) {
  if (n > kGregoryExactCap)
    throw CapacityError(fmt::format("gregory_exact({}) exceeds the exact cap {}", n, kGregoryExactCap));
  RatMemo& memo = gregory_memo();
  std::lock_guard<std::mutex> lock(memo.mu);
  auto& G = memo.values;
  if (G.empty()) G.push_back(Rat(1));
  while (G.size() <= n) {
    u64 m = G.size();
    Rat s = 0;
    for (u64 k = 1; k <= m; ++k) {
      Rat t = G[m - k] / Rat(Int(k + 1));
      if (k % 2 == 0) s -= t;
      else s += t;
    }
    s.canonicalize();
    G.push_back(s);
  }
  return G[n];
}

static void require_prime(u64 p, const char* what) {
  if (!is_prime_u64(p)) throw DomainError(fmt::format("{} requires a prime (got {})", what, p));
}

static Int exact_div(const Int& num, u64 p, const char* what) {
  if (!mpz_divisible_ui_p(num.get_mpz_t(), p))
    throw InvariantViolation(fmt::format("{}: numerator not divisible by {}", what, p));
  Int q;
  mpz_divexact_ui(q.get_mpz_t(), num.get_mpz_t(), p);
  return q;
}

Int wilson_quotient_exact(u64 p) {
  require_prime(p, "wilson_quotient_exact");
  return exact_div(factorial(p - 1) + 1, p, "wilson_quotient_exact");
}

Int fermat_quotient_exact(u64 p, u64 a) {
  require_prime(p, "fermat_quotient_exact");
  if (a % p == 0) throw DomainError(fmt::format("fermat quotient needs p !| a (p={}, a={})", p, a));
  Int pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), a, p - 1);
  return exact_div(pw - 1, p, "fermat_quotient_exact");
}

Int gertsch_quotient_exact(u64 p) {
  require_odd_prime(p, "gertsch_quotient_exact");
  if (p - 1 > kBellExactCap)
    throw CapacityError(fmt::format("gertsch_quotient_exact({}) needs Bell_{} beyond the exact cap", p, p - 1));
  return exact_div(left_factorial(p) - bell_exact(p - 1) + 1, p, "gertsch_quotient_exact");
}

static Int fermat_quotient_sum(u64 p) {
  if (p > kQuotientExactCap)
    throw CapacityError(fmt::format("exact Lerch/H quotients are capped at p <= {} (got {})", kQuotientExactCap, p));
  Int s = 0;
  for (u64 a = 1; a < p; ++a) s += fermat_quotient_exact(p, a);
  return s;
}

Rat lerch_quotient_exact(u64 p) {
  require_odd_prime(p, "lerch_quotient_exact");
  Rat r(fermat_quotient_sum(p) - wilson_quotient_exact(p), Int(p));
  r.canonicalize();
  return r;
}

Rat h_quotient_exact(u64 p) {
  require_odd_prime(p, "h_quotient_exact");
  Rat r(fermat_quotient_sum(p) - gertsch_quotient_exact(p), Int(p));
  r.canonicalize();
  return r;
}

QuotientRecord quotient_record(u64 p) {
  require_odd_prime(p, "quotient_record");
  QuotientRecord q;
  q.p = p;
  q.wilson = wilson_quotient_exact(p);
  q.gertsch = gertsch_quotient_exact(p);
  Int s = fermat_quotient_sum(p);
  q.lerch = Rat(s - q.wilson, Int(p));
  q.lerch.canonicalize();
  q.h = Rat(s - q.gertsch, Int(p));
  q.h.canonicalize();
  return q;
}

Rat agoh_giuga_exact(u64 p) {
  require_odd_prime(p, "agoh_giuga_exact");
  if (p - 1 > kBernoulliExactCap)
    throw CapacityError(fmt::format("agoh_giuga_exact({}) needs B_{} beyond the exact cap", p, p - 1));
  Rat r = (Rat(Int(p)) * bernoulli_exact(p - 1) + 1) / Rat(Int(p));
  r.canonicalize();
  return r;
}

Rat hodge_bg_exact(u64 g) {
  Int four_g;
  mpz_ui_pow_ui(four_g.get_mpz_t(), 2, 2 * g);
  Rat r = Rat(2 - four_g, four_g) * bernoulli_exact(2 * g) / Rat(factorial(2 * g));
  r.canonicalize();
  return r;
}

Residue giuga_sum(u64 n) {
  if (n < 2) throw DomainError(fmt::format("giuga_sum needs n >= 2 (got {})", n));
  u64 s = 0;
  for (u64 k = 1; k < n; ++k) s = add_mod(s, pow_mod(k, n - 1, n), n);
  return Residue(s, n);
}

std::vector<IdentityLine> successor_identities(u64 n) {
  if (n < 1) throw DomainError("successor_identities needs n >= 1");
  std::vector<IdentityLine> out;
  Int kn = left_factorial(n);
  Int kn1 = left_factorial(n + 1);
  Int fn = factorial(n);
  out.push_back({fmt::format("K_{} - K_{} = {}!", n + 1, n, n), kn1 - kn, fn, kn1 - kn == fn});
  if (n % 2 == 0) {
    Int d = kn - left_factorial(n - 1);
    Int f = factorial(n - 1);
    out.push_back({fmt::format("K_{} - K_{} = (2g-1)! with g={}", n, n - 1, n / 2), d, f, d == f});
  }
  return out;
}

IdentityLine genus_split_identity(u64 g1, u64 g2) {
  if (g1 < 1 || g2 < 1) throw DomainError("genus_split_identity needs g1, g2 >= 1");
  Int lhs = (left_factorial(2 * g1) - left_factorial(2 * g1 - 1)) +
            (left_factorial(2 * g2) - left_factorial(2 * g2 - 1));
  Int rhs = factorial(2 * (g1 + g2) - 1);
  return {fmt::format("(2*{}-1)! + (2*{}-1)! = (2*{}-1)!", g1, g2, g1 + g2), lhs, rhs, lhs == rhs};
}

std::string to_string(const Int& v) { return v.get_str(); }
std::string to_string(const Rat& v) { return v.get_str(); }

}  // namespace kbw

#include "kbw/residues.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include <fmt/format.h>

#include "kbw/error.hpp"
#include "kbw/exact.hpp"
#include "kbw/parallel.hpp"

namespace kbw {

namespace {

std::atomic<u64> g_bell_cap{0};
std::atomic<u64> g_bernoulli_cap{0};

u64 env_or(const char* name, u64 fallback) {
  if (const char* env = std::getenv(name)) {
    try {
      long long v = std::stoll(env);
      if (v > 0) return static_cast<u64>(v);
    } catch (...) {
    }
  }
  return fallback;
}

// inv[i] = i^{-1} mod p for 1 <= i < p.
std::vector<u64> inverse_table(u64 p) {
  std::vector<u64> inv(p, 0);
  if (p > 1) inv[1] = 1;
  for (u64 i = 2; i < p; ++i) inv[i] = mul_mod(p - p / i, inv[p % i], p);
  return inv;
}

void require_within_bernoulli_cap(u64 p) {
  if (p > bernoulli_mod_cap())
    throw CapacityError(fmt::format("p={} exceeds the Bernoulli table cap {}", p, bernoulli_mod_cap()));
}

}  // namespace

u64 bell_mod_cap() {
  u64 v = g_bell_cap.load();
  return v ? v : env_or("KBW_BELL_CAP", kDefaultBellModCap);
}
u64 bernoulli_mod_cap() {
  u64 v = g_bernoulli_cap.load();
  return v ? v : env_or("KBW_BERNOULLI_CAP", kDefaultBernoulliModCap);
}
void set_bell_mod_cap(u64 cap) { g_bell_cap.store(cap); }
void set_bernoulli_mod_cap(u64 cap) { g_bernoulli_cap.store(cap); }

u64 prime_power(u64 p, unsigned e) {
  u128 m = 1;
  for (unsigned i = 0; i < e; ++i) {
    m *= p;
    if (m >> 63) throw CapacityError(fmt::format("{}^{} does not fit in 63 bits", p, e));
  }
  return static_cast<u64>(m);
}

u64 factorial_mod(u64 n, u64 m) {
  u64 f = 1 % m;
  for (u64 k = 2; k <= n && f != 0; ++k) f = mul_mod(f, k % m, m);
  return f;
}

Residue kurepa_mod(u64 p, unsigned e) {
  if (!is_prime_u64(p)) throw DomainError(fmt::format("kurepa_mod requires a prime (got {})", p));
  if (e < 1 || e > 3) throw DomainError(fmt::format("kurepa_mod supports e in {{1,2,3}} (got {})", e));
  const u64 M = prime_power(p, e);
  u64 f = 1 % M, sum = 1 % M;
  for (u64 n = 1; n < p; ++n) {
    f = mul_mod(f, n % M, M);
    sum = add_mod(sum, f, M);
  }
  return Residue(sum, M);
}

Residue kurepa_gf_mod(u64 p) {
  require_odd_prime(p, "kurepa_gf_mod");
  // k runs down from p-1, where the product (k+1)...(p-1) is empty.
  u64 prod = 1, sum = 0;
  for (u64 k = p; k-- > 0;) {
    if (k + 1 < p) prod = mul_mod(prod, k + 1, p);
    sum = (k % 2 == 0) ? add_mod(sum, prod, p) : sub_mod(sum, prod, p);
  }
  return Residue(sum, p);
}

std::vector<u64> bell_mod_sequence(u64 n, u64 m) {
  if (m < 2) throw DomainError(fmt::format("modulus must be at least 2 (got {})", m));
  if (n > bell_mod_cap())
    throw CapacityError(fmt::format("Bell_{} mod {} exceeds the Bell triangle cap {}", n, m, bell_mod_cap()));
  std::vector<u64> out;
  out.reserve(n + 1);
  std::vector<u64> row{1 % m};
  row.reserve(n + 2);
  out.push_back(row.front());
  for (u64 r = 1; r <= n; ++r) {
    // Shift in place: new row = [last, last + row[0], ...].
    u64 carry = row.back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      u64 next = add_mod(carry, row[i], m);
      row[i] = carry;
      carry = next;
    }
    row.push_back(carry);
    out.push_back(row.front());
  }
  return out;
}

Residue bell_mod(u64 n, u64 m) { return Residue(bell_mod_sequence(n, m).back(), m); }

Residue bell_pm1_mod(u64 p, unsigned e) {
  require_odd_prime(p, "bell_pm1_mod");
  const u64 M = prime_power(p, e);
  const u64 n = p - 1;

  std::vector<u64> inv_fact(p);
  u64 f = factorial_mod(n, M);
  inv_fact[n] = inv_mod(f, M);
  for (u64 j = n; j > 0; --j) inv_fact[j - 1] = mul_mod(inv_fact[j], j, M);

  // alt[k] = sum_{i=0}^{k} (-1)^i / i!
  std::vector<u64> alt(p);
  u64 acc = 0;
  for (u64 i = 0; i <= n; ++i) {
    acc = (i % 2 == 0) ? add_mod(acc, inv_fact[i], M) : sub_mod(acc, inv_fact[i], M);
    alt[i] = acc;
  }

  std::vector<u64> pw;
  if (e > 1) {
    pw.assign(p, 0);
    pw[1] = 1;
    std::vector<u64> primes;
    std::vector<char> composite(p, 0);
    for (u64 j = 2; j < p; ++j) {
      if (!composite[j]) {
        primes.push_back(j);
        pw[j] = pow_mod(j, n, M);
      }
      for (u64 q : primes) {
        u64 c = q * j;
        if (c >= p) break;
        composite[c] = 1;
        pw[c] = mul_mod(pw[q], pw[j], M);
        if (j % q == 0) break;
      }
    }
  }

  u64 sum = 0;
  for (u64 j = 1; j <= n; ++j) {
    u64 term = mul_mod(inv_fact[j], alt[n - j], M);
    if (e > 1) term = mul_mod(term, pw[j], M);
    sum = add_mod(sum, term, M);
  }
  return Residue(sum, M);
}

Residue derangement_mod(u64 n, u64 m) {
  if (m < 2) throw DomainError(fmt::format("modulus must be at least 2 (got {})", m));
  u64 d = 1 % m;
  for (u64 k = 1; k <= n; ++k) {
    d = mul_mod(d, k % m, m);
    d = (k % 2 == 0) ? add_mod(d, 1 % m, m) : sub_mod(d, 1 % m, m);
  }
  return Residue(d, m);
}

Residue wilson_quotient_mod(u64 p, unsigned e) {
  if (!is_prime_u64(p)) throw DomainError(fmt::format("wilson_quotient_mod requires a prime (got {})", p));
  const u64 M = prime_power(p, e + 1);
  u64 f = add_mod(factorial_mod(p - 1, M), 1 % M, M);
  if (f % p != 0) throw InvariantViolation(fmt::format("(p-1)! is not -1 mod p at p={}", p));
  return Residue(f / p, prime_power(p, e));
}

Residue fermat_quotient_mod(u64 p, u64 a, unsigned e) {
  if (!is_prime_u64(p)) throw DomainError(fmt::format("fermat_quotient_mod requires a prime (got {})", p));
  if (a % p == 0) throw DomainError(fmt::format("fermat quotient needs p !| a (p={}, a={})", p, a));
  const u64 M = prime_power(p, e + 1);
  u64 x = sub_mod(pow_mod(a % M, p - 1, M), 1 % M, M);
  if (x % p != 0) throw InvariantViolation(fmt::format("a^(p-1) is not 1 mod p at p={}, a={}", p, a));
  return Residue(x / p, prime_power(p, e));
}

Residue fermat_quotient_mod(u64 p, const mpz_class& a, unsigned e) {
  const u64 M = prime_power(p, e + 1);
  Residue r = Residue::from_int(a, M);
  if (r.value() % p == 0) throw DomainError(fmt::format("fermat quotient needs p !| a (p={}, a={})", p, a.get_str()));
  return fermat_quotient_mod(p, r.value(), e);
}

Residue lerch_quotient_mod(u64 p) {
  require_odd_prime(p, "lerch_quotient_mod");
  const u64 p2 = prime_power(p, 2);
  u64 s = 0;
  for (u64 a = 1; a < p; ++a) s = add_mod(s, fermat_quotient_mod(p, a, 2).value(), p2);
  u64 d = sub_mod(s, wilson_quotient_mod(p, 2).value(), p2);
  if (d % p != 0) throw InvariantViolation(fmt::format("Lerch numerator not divisible by p at p={}", p));
  return Residue(d / p, p);
}

Residue gertsch_quotient_mod(u64 p) {
  require_odd_prime(p, "gertsch_quotient_mod");
  const u64 p2 = prime_power(p, 2);
  u64 num = add_mod(sub_mod(kurepa_mod(p, 2).value(), bell_pm1_mod(p, 2).value(), p2), 1, p2);
  if (num % p != 0) throw InvariantViolation(fmt::format("Gertsch numerator not divisible by p at p={}", p));
  return Residue(num / p, p);
}

BernoulliModTable bernoulli_mod_table(u64 p) {
  require_odd_prime(p, "bernoulli_mod_table");
  require_within_bernoulli_cap(p);
  const std::vector<u64> inv = inverse_table(p);
  BernoulliModTable t;
  t.p = p;
  std::vector<u64>& B = t.values;
  B.assign(p - 1, 0);
  B[0] = 1;
  // Pascal row for n, maintained incrementally; starts at n = 1.
  std::vector<u64> row(p + 1, 0);
  row[0] = 1;
  row[1] = 1;
  for (u64 n = 2; n <= p - 1; ++n) {
    for (u64 j = n; j >= 1; --j) row[j] = add_mod(row[j], row[j - 1], p);
    const u64 m = n - 1;
    if (m >= 3 && m % 2 == 1) continue;
    u64 s = 1;
    for (u64 j = 1; j + 1 < n; ++j) {
      if (B[j] != 0) s = add_mod(s, mul_mod(row[j], B[j], p), p);
    }
    B[m] = mul_mod(neg_mod(s, p), inv[n], p);
  }
  return t;
}

GregoryModTable gregory_mod_table(u64 p) {
  require_odd_prime(p, "gregory_mod_table");
  require_within_bernoulli_cap(p);
  const std::vector<u64> inv = inverse_table(p);
  std::vector<u64> G(p - 1, 0);
  G[0] = 1;
  for (u64 m = 1; m + 1 < p; ++m) {
    u64 s = 0;
    for (u64 k = 1; k <= m; ++k) {
      u64 t = mul_mod(G[m - k], inv[k + 1], p);
      s = (k % 2 == 1) ? add_mod(s, t, p) : sub_mod(s, t, p);
    }
    G[m] = s;
  }
  GregoryModTable out;
  out.p = p;
  out.values.assign(G.begin() + 1, G.end());
  return out;
}

AtomTriple vladimirov_atoms(const BernoulliModTable& t) {
  const u64 p = t.p;
  AtomTriple a;
  u64 inv_fact = 1;
  for (u64 k = 0; k + 2 <= p; ++k) {
    if (k > 0) inv_fact = mul_mod(inv_fact, inv_mod(k, p), p);
    u64 term = mul_mod(t.at(k), inv_fact, p);
    a.v_star = add_mod(a.v_star, term, p);
    a.v = (k % 2 == 0) ? add_mod(a.v, term, p) : sub_mod(a.v, term, p);
    if (k >= 2 && k % 2 == 0 && k <= p - 3) a.v_prime = add_mod(a.v_prime, term, p);
  }
  return a;
}

AtomTriple vladimirov_atoms(u64 p) { return vladimirov_atoms(bernoulli_mod_table(p)); }

AtomTriple agoh_atoms(const BernoulliModTable& t) {
  const u64 p = t.p;
  AtomTriple a;
  a.v = 1;
  a.v_star = 1;
  for (u64 k = 1; k + 2 <= p; ++k) {
    u64 term = mul_mod(t.at(k), inv_mod(k, p), p);
    a.v_star = add_mod(a.v_star, term, p);
    a.v = (k % 2 == 0) ? add_mod(a.v, term, p) : sub_mod(a.v, term, p);
    if (k >= 2 && k % 2 == 0 && k <= p - 3) a.v_prime = add_mod(a.v_prime, term, p);
  }
  return a;
}

AtomTriple agoh_atoms(u64 p) { return agoh_atoms(bernoulli_mod_table(p)); }

Residue vladimirov_rhs(const BernoulliModTable& t) {
  const u64 p = t.p;
  u64 sum = 0, inv_fact = 1, k_left = 0, fact = 1;
  // k_left tracks K_j = sum_{i<j} i! mod p as j increases.
  for (u64 j = 0; j + 3 <= p; ++j) {
    if (j > 0) {
      fact = mul_mod(fact, j, p);
      inv_fact = mul_mod(inv_fact, inv_mod(j, p), p);
    }
    // Before the update k_left = K_j; after it, K_{j+1}.
    if (j >= 2 && j % 2 == 0) {
      u64 w = mul_mod(mul_mod(t.at(j), inv_fact, p), sub_mod(k_left, 1, p), p);
      sum = add_mod(sum, w, p);
    }
    k_left = add_mod(k_left, fact, p);
  }
  return Residue(sum, p);
}

Residue vladimirov_rhs(u64 p) { return vladimirov_rhs(bernoulli_mod_table(p)); }

AgohGiugaPaths agoh_giuga_paths(u64 p) {
  require_odd_prime(p, "agoh_giuga_paths");
  AgohGiugaPaths r;
  r.p = p;
  r.wilson_plus_one = add_mod(wilson_quotient_mod(p).value(), 1, p);
  if (p - 1 <= kBernoulliExactCap) {
    auto v = rational_residue(agoh_giuga_exact(p), p);
    if (!v) throw InvariantViolation(fmt::format("AG_{} has p in its denominator", p));
    r.exact = v->value();
  }
  if (p <= bernoulli_mod_cap()) {
    BernoulliModTable t = bernoulli_mod_table(p);
    u64 s = 0;
    for (u64 k = 1; k + 2 <= p; ++k) {
      u64 term = mul_mod(t.at(k), inv_mod(k, p), p);
      s = (k % 2 == 0) ? add_mod(s, term, p) : sub_mod(s, term, p);
    }
    r.table = s;
  }
  return r;
}

Residue agoh_giuga_mod(u64 p) {
  require_odd_prime(p, "agoh_giuga_mod");
  u64 w1 = add_mod(wilson_quotient_mod(p).value(), 1, p);
  if (p - 1 <= kBernoulliExactCap) {
    auto v = rational_residue(agoh_giuga_exact(p), p);
    if (!v || v->value() != w1)
      throw InvariantViolation(fmt::format("AG_p paths disagree at p={}", p));
  }
  return Residue(w1, p);
}

Residue special_quotient_mod(u64 p, u64 m) {
  require_odd_prime(p, "special_quotient_mod");
  if (m % p == 0) throw DomainError(fmt::format("special quotient needs p !| m (p={}, m={})", p, m));
  return agoh_giuga_mod(p) + fermat_quotient_mod(p, m);
}

std::optional<Residue> kbw_sum_mod(u64 p) {
  require_odd_prime(p, "kbw_sum_mod");
  u64 b2 = bell_pm1_mod(p, 2).value();
  if (b2 % p != 0) return std::nullopt;
  return Residue(add_mod(b2 / p, wilson_quotient_mod(p).value(), p), p);
}

Residue harmonic_mod(u64 p, u64 n, u64 k) {
  if (!is_prime_u64(p)) throw DomainError(fmt::format("harmonic_mod requires a prime (got {})", p));
  if (n < 1 || n >= p) throw DomainError(fmt::format("harmonic_mod needs 1 <= n <= p-1 (n={}, p={})", n, p));
  u64 s = 0;
  for (u64 j = 1; j <= n; ++j) s = add_mod(s, pow_mod(inv_mod(j, p), k, p), p);
  return Residue(s, p);
}

Residue sun_zagier_sum(u64 p, u64 m) {
  if (!is_prime_u64(p)) throw DomainError(fmt::format("sun_zagier_sum requires a prime (got {})", p));
  if (m % p == 0) throw DomainError(fmt::format("sun_zagier_sum needs p !| m (p={}, m={})", p, m));
  std::vector<u64> bell = bell_mod_sequence(p - 1, p);
  const u64 step = inv_mod(neg_mod(m % p, p), p);
  u64 w = 1, s = 0;
  for (u64 k = 1; k < p; ++k) {
    w = mul_mod(w, step, p);
    s = add_mod(s, mul_mod(bell[k], w, p), p);
  }
  return Residue(s, p);
}

ResidueProfile residue_profile(u64 p, unsigned e) {
  require_odd_prime(p, "residue_profile");
  ResidueProfile r;
  r.p = p;
  r.e = e;
  r.k_mod = kurepa_mod(p, e).value();
  r.bell_mod = bell_pm1_mod(p, e).value();
  r.der_mod = derangement_mod(p - 1, p).value();
  r.wilson_q = wilson_quotient_mod(p).value();
  r.gertsch_q = gertsch_quotient_mod(p).value();
  r.fermat_q2 = fermat_quotient_mod(p, 2).value();
  if (p != 3) r.fermat_q3 = fermat_quotient_mod(p, 3).value();
  r.lerch_q = lerch_quotient_mod(p).value();
  r.ag_q = agoh_giuga_mod(p).value();
  if (p <= bernoulli_mod_cap()) {
    BernoulliModTable t = bernoulli_mod_table(p);
    r.v_atoms = agoh_atoms(t);
    r.vladimirov = vladimirov_atoms(t);
  }
  return r;
}

std::vector<ResidueProfile> residue_profiles(const PrimeRange& range, unsigned e, unsigned threads) {
  std::vector<u64> primes;
  for (u64 p : sieve_primes(range))
    if (p > 2) primes.push_back(p);
  return parallel_map(primes, [e](u64 p) { return residue_profile(p, e); }, threads);
}

}  // namespace kbw

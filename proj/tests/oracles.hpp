#pragma once

// Reference computations that share no code path with the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> primes(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

// Set partitions of {1..n} into exactly k blocks, by restricted growth strings.
inline u64 set_partitions(unsigned n, unsigned k) {
  if (n == 0) return k == 0 ? 1 : 0;
  std::vector<unsigned> a(n, 0);
  u64 count = 0;
  while (true) {
    unsigned blocks = *std::max_element(a.begin(), a.end()) + 1;
    if (blocks == k) ++count;
    // next restricted growth string
    int i = static_cast<int>(n) - 1;
    while (i > 0) {
      unsigned m = *std::max_element(a.begin(), a.begin() + i) + 1;
      if (a[i] < m) break;
      --i;
    }
    if (i == 0) return count;
    ++a[i];
    std::fill(a.begin() + i + 1, a.end(), 0);
  }
}

inline u64 bell(unsigned n) {
  u64 s = 0;
  for (unsigned k = 0; k <= n; ++k) s += set_partitions(n, k);
  return s;
}

inline u64 derangements(unsigned n) {
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  u64 count = 0;
  do {
    bool fixed = false;
    for (unsigned i = 0; i < n; ++i) fixed = fixed || perm[i] == i;
    count += !fixed;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Akiyama-Tanigawa yields B_n with B_1 = +1/2; flipped to the B_1 = -1/2 convention.
inline mpq_class bernoulli(unsigned n) {
  std::vector<mpq_class> a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (unsigned j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
  }
  return n == 1 ? mpq_class(-a[0]) : a[0];
}

// Inverse of a power series with constant term 1, to `terms` coefficients.
inline std::vector<mpq_class> invert_series(const std::vector<mpq_class>& f, unsigned terms) {
  std::vector<mpq_class> g(terms);
  g[0] = 1 / f[0];
  for (unsigned n = 1; n < terms; ++n) {
    mpq_class s = 0;
    for (unsigned k = 1; k <= n && k < f.size(); ++k) s += f[k] * g[n - k];
    g[n] = -s / f[0];
    g[n].canonicalize();
  }
  return g;
}

// Gregory coefficients: x / log(1+x) = sum G_n x^n.
inline mpq_class gregory(unsigned n) {
  std::vector<mpq_class> f(n + 1);
  for (unsigned k = 0; k <= n; ++k) f[k] = mpq_class(k % 2 ? -1 : 1, k + 1);
  return invert_series(f, n + 1)[n];
}

// b_g as the t^{2g} coefficient of (t/2)/sinh(t/2), i.e. (t/2)/sin(t/2) with t -> it.
inline mpq_class hodge_b(unsigned g) {
  // sinh(t/2)/(t/2) = sum u^k / (4^k (2k+1)!) in u = t^2
  std::vector<mpq_class> f(g + 1);
  mpz_class fact = 1, four = 1;
  for (unsigned k = 0; k <= g; ++k) {
    if (k > 0) fact *= (2 * k) * (2 * k + 1), four *= 4;
    f[k] = mpq_class(1, 1) / mpq_class(four * fact);
  }
  return invert_series(f, g + 1)[g];
}

inline mpz_class factorial(unsigned n) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline mpz_class left_factorial(unsigned n) {
  mpz_class s = 0;
  for (unsigned k = 0; k < n; ++k) s += factorial(k);
  return s;
}

inline mpz_class power(u64 a, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), a, e);
  return r;
}

inline u64 mod(const mpz_class& a, u64 m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
  return r.get_ui();
}

// Residue of a rational modulo m, or -1 when the denominator is not invertible.
inline long long residue(const mpq_class& q, u64 m) {
  mpz_class den = q.get_den(), inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(m).get_mpz_t()) == 0) return -1;
  return static_cast<long long>(mod(q.get_num() * inv, m));
}

inline mpz_class wilson_quotient(unsigned p) { return (factorial(p - 1) + 1) / p; }
inline mpz_class fermat_quotient(unsigned p, u64 a) { return (power(a, p - 1) - 1) / p; }

}  // namespace oracle

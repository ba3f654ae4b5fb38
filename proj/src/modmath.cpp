#include "kbw/modmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "kbw/error.hpp"

namespace kbw {

PrimeRange PrimeRange::checked(u64 lo, u64 hi) {
  if (lo < 2) throw DomainError(fmt::format("prime range must start at 2 or above (got lo={})", lo));
  if (hi < lo) throw EmptyRangeError(fmt::format("empty prime range [{}, {}]", lo, hi));
  return PrimeRange{lo, hi};
}

Residue::Residue(u64 value, u64 modulus) : value_(0), modulus_(modulus) {
  if (modulus < 2) throw DomainError(fmt::format("modulus must be at least 2 (got {})", modulus));
  value_ = value % modulus;
}

Residue Residue::from_signed(std::int64_t value, u64 modulus) {
  if (modulus < 2) throw DomainError(fmt::format("modulus must be at least 2 (got {})", modulus));
  return Residue(reduce_signed(value, modulus), modulus);
}

Residue Residue::from_int(const mpz_class& value, u64 modulus) {
  if (modulus < 2) throw DomainError(fmt::format("modulus must be at least 2 (got {})", modulus));
  mpz_class m;
  mpz_import(m.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &modulus);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
  u64 v = 0;
  std::size_t count = 0;
  mpz_export(&v, &count, -1, sizeof(u64), 0, 0, r.get_mpz_t());
  return Residue(count == 0 ? 0 : v, modulus);
}

static void require_same_modulus(const Residue& a, const Residue& b) {
  if (a.modulus() != b.modulus())
    throw DomainError(fmt::format("residue modulus mismatch ({} vs {})", a.modulus(), b.modulus()));
}

Residue Residue::operator+(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(add_mod(value_, o.value_, modulus_), modulus_);
}

Residue Residue::operator-(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(sub_mod(value_, o.value_, modulus_), modulus_);
}

Residue Residue::operator*(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(mul_mod(value_, o.value_, modulus_), modulus_);
}

Residue Residue::operator-() const { return Residue(neg_mod(value_, modulus_), modulus_); }

u64 reduce_signed(std::int64_t a, u64 m) {
  if (a >= 0) return static_cast<u64>(a) % m;
  // -(a+1) avoids overflow at INT64_MIN.
  u64 mag = static_cast<u64>(-(a + 1)) + 1;
  u64 r = mag % m;
  return r == 0 ? 0 : m - r;
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

Residue mod_pow(std::int64_t base, u64 exp, u64 m) {
  if (m < 2) throw DomainError(fmt::format("modulus must be at least 2 (got {})", m));
  return Residue(pow_mod(reduce_signed(base, m), exp, m), m);
}

u64 inv_mod(u64 a, u64 m) {
  if (m < 2) throw DomainError(fmt::format("modulus must be at least 2 (got {})", m));
  // Extended Euclid on signed 128-bit to keep intermediate coefficients exact.
  __int128 old_r = a % m, r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    u64 g = static_cast<u64>(old_r);
    throw NotInvertibleError(fmt::format("{} is not invertible modulo {} (gcd {})", a, m, g), g);
  }
  __int128 x = old_s % static_cast<__int128>(m);
  if (x < 0) x += m;
  return static_cast<u64>(x);
}

Residue mod_inv(std::int64_t a, u64 m) {
  return Residue(inv_mod(reduce_signed(a, m), m), m);
}

std::optional<Residue> rational_residue(const mpz_class& num, const mpz_class& den, u64 m) {
  if (den == 0) throw DomainError("rational residue with zero denominator");
  if (m < 2) throw DomainError(fmt::format("modulus must be at least 2 (got {})", m));
  Residue d = Residue::from_int(den, m);
  if (std::gcd(d.value(), m) != 1) return std::nullopt;
  Residue n = Residue::from_int(num, m);
  return Residue(mul_mod(n.value(), inv_mod(d.value(), m), m), m);
}

std::optional<Residue> rational_residue(const mpq_class& q, u64 m) {
  return rational_residue(q.get_num(), q.get_den(), m);
}

namespace {

bool miller_rabin_witness(u64 n, u64 d, int s, u64 a) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

constexpr u64 kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Jim Sinclair's bases: a complete witness set below 2^64.
  for (u64 a : {u64{2}, u64{325}, u64{9375}, u64{28178}, u64{450775}, u64{9780504}, u64{1795265022}}) {
    if (!miller_rabin_witness(n, d, s, a)) return false;
  }
  return true;
}

namespace {

bool strong_probable_prime_base2(const mpz_class& n) {
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  mpz_class x;
  mpz_class two = 2;
  mpz_powm(x.get_mpz_t(), two.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  mpz_class nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

void half_mod(mpz_class& x, const mpz_class& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
}

void reduce(mpz_class& x, const mpz_class& n) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()); }

bool strong_lucas_probable_prime(const mpz_class& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  // Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
  long D = 5;
  for (;;) {
    mpz_class dz = D;
    int j = mpz_jacobi(dz.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && mpz_cmpabs_ui(n.get_mpz_t(), static_cast<unsigned long>(std::labs(D))) != 0) return false;
    D = D > 0 ? -(D + 2) : -(D - 2);
  }
  const long P = 1;
  const long Q = (1 - D) / 4;

  mpz_class d = n + 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  mpz_class U = 1, V = P, Qk = Q;
  reduce(Qk, n);
  mpz_class Dz = D, Pz = P, Qz = Q;
  reduce(Qz, n);
  std::size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    U = U * V;
    reduce(U, n);
    V = V * V - 2 * Qk;
    reduce(V, n);
    Qk = Qk * Qk;
    reduce(Qk, n);
    if (mpz_tstbit(d.get_mpz_t(), i)) {
      mpz_class u2 = Pz * U + V;
      mpz_class v2 = Dz * U + Pz * V;
      reduce(u2, n);
      reduce(v2, n);
      half_mod(u2, n);
      half_mod(v2, n);
      U = u2;
      V = v2;
      Qk = Qk * Qz;
      reduce(Qk, n);
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    V = V * V - 2 * Qk;
    reduce(V, n);
    if (V == 0) return true;
    Qk = Qk * Qk;
    reduce(Qk, n);
  }
  return false;
}

}  // namespace

bool is_probable_prime_bpsw(const mpz_class& n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  return strong_probable_prime_base2(n) && strong_lucas_probable_prime(n);
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    u64 v = 0;
    std::size_t count = 0;
    mpz_export(&v, &count, -1, sizeof(u64), 0, 0, n.get_mpz_t());
    return is_prime_u64(v);
  }
  return is_probable_prime_bpsw(n);
}

namespace {

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<u64> simple_sieve(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace

void for_each_prime(const PrimeRange& range, const std::function<void(u64)>& fn, u64 segment_size) {
  PrimeRange r = PrimeRange::checked(range.lo, range.hi);
  if (segment_size == 0) throw DomainError("segment size must be positive");
  const std::vector<u64> base = simple_sieve(isqrt(r.hi));
  std::vector<char> composite;
  for (u64 low = r.lo;; low += segment_size) {
    const u64 high = (r.hi - low < segment_size - 1) ? r.hi : low + segment_size - 1;
    composite.assign(high - low + 1, 0);
    for (u64 p : base) {
      if (static_cast<u128>(p) * p > high) break;
      u64 start = std::max(p * p, (low + p - 1) / p * p);
      for (u64 j = start; j <= high; j += p) {
        composite[j - low] = 1;
        if (j > high - p) break;
      }
    }
    for (u64 n = low; n <= high; ++n) {
      if (!composite[n - low]) fn(n);
      if (n == high) break;
    }
    if (high == r.hi) break;
  }
}

std::vector<u64> sieve_primes(const PrimeRange& range, u64 segment_size) {
  std::vector<u64> out;
  for_each_prime(range, [&](u64 p) { out.push_back(p); }, segment_size);
  return out;
}

std::vector<u64> primes_between(u64 lo, u64 hi) { return sieve_primes(PrimeRange::checked(lo, hi)); }

void require_odd_prime(u64 p, const char* what) {
  if (p < 3 || !is_prime_u64(p))
    throw DomainError(fmt::format("{} requires an odd prime (got {})", what, p));
}

}  // namespace kbw

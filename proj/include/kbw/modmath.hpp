#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace kbw {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Closed interval [lo, hi] of integers whose primes are iterated in order.
struct PrimeRange {
  u64 lo = 2;
  u64 hi = 2;

  /// Throws DomainError when lo < 2 and EmptyRangeError when hi < lo.
  static PrimeRange checked(u64 lo, u64 hi);
  bool contains(u64 n) const noexcept { return lo <= n && n <= hi; }
  friend bool operator==(const PrimeRange&, const PrimeRange&) = default;
};

/// A value in [0, modulus). Signed inputs are reduced on construction.
class Residue {
 public:
  Residue(u64 value, u64 modulus);
  static Residue from_signed(std::int64_t value, u64 modulus);
  static Residue from_int(const mpz_class& value, u64 modulus);

  u64 value() const noexcept { return value_; }
  u64 modulus() const noexcept { return modulus_; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  u64 value_;
  u64 modulus_;
};

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  // Operands are already reduced, so below 2^32 the product fits in 64 bits.
  if (m <= 0xFFFFFFFFu) return a * b % m;
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }
inline u64 neg_mod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }
/// Reduce a signed value into [0, m).
u64 reduce_signed(std::int64_t a, u64 m);

/// base^exp mod m by square-and-multiply. Requires m >= 1; returns 0 when m == 1.
u64 pow_mod(u64 base, u64 exp, u64 m);
Residue mod_pow(std::int64_t base, u64 exp, u64 m);

/// Inverse of a modulo m; throws NotInvertibleError carrying gcd(a, m) when none exists.
u64 inv_mod(u64 a, u64 m);
Residue mod_inv(std::int64_t a, u64 m);

/// num/den reduced mod m, or nullopt when gcd(den, m) != 1. Throws DomainError when den == 0.
std::optional<Residue> rational_residue(const mpz_class& num, const mpz_class& den, u64 m);
std::optional<Residue> rational_residue(const mpq_class& q, u64 m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(u64 n);
/// Baillie-PSW: strong base-2 Miller-Rabin followed by a strong Lucas test (Selfridge parameters).
bool is_probable_prime_bpsw(const mpz_class& n);
/// Dispatches to is_prime_u64 when n fits, else BPSW.
bool is_prime(const mpz_class& n);

inline constexpr u64 kDefaultSegmentSize = u64{1} << 20;

/// Segmented Eratosthenes sieve; memory is O(sqrt(hi) + segment_size).
void for_each_prime(const PrimeRange& range, const std::function<void(u64)>& fn,
                    u64 segment_size = kDefaultSegmentSize);
std::vector<u64> sieve_primes(const PrimeRange& range, u64 segment_size = kDefaultSegmentSize);
/// Convenience: sieve_primes(PrimeRange::checked(lo, hi)).
std::vector<u64> primes_between(u64 lo, u64 hi);

/// Throws DomainError unless p is an odd prime.
void require_odd_prime(u64 p, const char* what);

}  // namespace kbw

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kbw/exact.hpp"
#include "kbw/modmath.hpp"

namespace kbw {

// A residue family (r_p mod p) over the primes of a finite window. Every window
// prime is either in residues or in undefined_at.
struct AdeleElement {
  PrimeRange window;
  std::map<u64, u64> residues;
  std::set<u64> undefined_at;

  std::optional<u64> at(u64 p) const;
  friend bool operator==(const AdeleElement&, const AdeleElement&) = default;
};

struct AdeleComparison {
  std::vector<u64> mismatch_primes;
  std::vector<u64> agreement_primes;
  // Smallest window prime q such that every compared prime >= q agrees; nullopt
  // when the last compared prime mismatches.
  std::optional<u64> agree_from;
};

// Builds an element by evaluating f at each window prime (in parallel); nullopt marks the prime undefined.
AdeleElement adele_from(const PrimeRange& window, const std::function<std::optional<u64>(u64)>& f,
                        unsigned threads = 0);

AdeleElement embed_rational(const Rat& q, const PrimeRange& window);
AdeleElement add(const AdeleElement& a, const AdeleElement& b);
AdeleElement sub(const AdeleElement& a, const AdeleElement& b);
AdeleElement mul(const AdeleElement& a, const AdeleElement& b);
AdeleElement neg(const AdeleElement& a);
AdeleComparison adele_eq(const AdeleElement& a, const AdeleElement& b);

// (q_p(x) mod p)_p; primes dividing x's numerator or denominator are undefined. DomainError for x = 0.
AdeleElement log_A(const Rat& x, const PrimeRange& window);
AdeleElement ell_A(const Rat& x, const PrimeRange& window);

AdeleElement gamma_W(const PrimeRange& window);
AdeleElement gamma_G(const PrimeRange& window);
AdeleElement gamma_L(const PrimeRange& window);
AdeleElement gamma_AG(const PrimeRange& window);
// sum_{n=1}^{p-2} |G_n| / n mod p.
AdeleElement gamma_M(const PrimeRange& window);
AdeleElement gamma_Kp(const PrimeRange& window);
// (Bell_{p-1} mod p)_p.
AdeleElement bell_residues(const PrimeRange& window);
AdeleElement gamma_Q(u64 m, const PrimeRange& window);
// (G_{p-k} mod p)_p and (B_{p-k}/k mod p)_p; primes p <= k are undefined.
AdeleElement G_A(u64 k, const PrimeRange& window);
AdeleElement Z_A(u64 k, const PrimeRange& window);

// Expression over constants: + - * and parentheses, rational literals (3, -1/2),
// and the names gamma_W gamma_G gamma_L gamma_AG gamma_M gamma_Kp bell,
// gamma_Q(m) log_A(x) ell_A(x) G_A(k) Z_A(k) embed(x).
AdeleElement evaluate_adele_expression(const std::string& expr, const PrimeRange& window);

nlohmann::json to_json(const AdeleElement& a);
nlohmann::json to_json(const AdeleComparison& c);

}  // namespace kbw

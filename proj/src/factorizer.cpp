#include "kbw/factorizer.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

#include <fmt/format.h>

#include "kbw/error.hpp"
#include "kbw/parallel.hpp"

namespace kbw {

namespace {

const std::vector<u64>& trial_primes(u64 limit) {
  static std::mutex mu;
  static std::map<u64, std::vector<u64>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(limit);
  if (it == cache.end()) it = cache.emplace(limit, limit >= 2 ? primes_between(2, limit) : std::vector<u64>{}).first;
  return it->second;
}

Int abs_diff(const Int& a, const Int& b) { return a > b ? Int(a - b) : Int(b - a); }

// One non-trivial factor of composite n, or nullopt when the budget is spent.
std::optional<Int> pollard_brent(const Int& n, u64 budget) {
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  constexpr u64 kBatch = 128;
  u64 spent = 0;
  for (unsigned long c = 1; spent < budget; c += 2) {
    auto f = [&](const Int& x) {
      Int y = x * x + c;
      mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
      return y;
    };
    Int y = 2, x, ys, q = 1, g = 1;
    u64 r = 1;
    while (g == 1 && spent < budget) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      spent += r;
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        u64 steps = std::min(kBatch, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = f(y);
          q = q * abs_diff(x, y) % n;
        }
        spent += steps;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    }
    if (g == n) {
      // The batch overshot; replay it one step at a time.
      do {
        ys = f(ys);
        Int d = abs_diff(x, ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        ++spent;
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return std::nullopt;
}

}  // namespace

Factorization factorize(const Int& n, const FactorBudget& budget) {
  if (n < 2) throw DomainError(fmt::format("factorize needs n >= 2 (got {})", n.get_str()));
  std::map<Int, unsigned> found;
  Int rest = n;
  for (u64 p : trial_primes(budget.trial_limit)) {
    if (Int(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++found[Int(p)];
    }
  }
  Factorization out;
  out.n = n;
  std::vector<Int> stack;
  if (rest > 1) stack.push_back(rest);
  while (!stack.empty()) {
    Int m = stack.back();
    stack.pop_back();
    if (is_prime(m)) {
      ++found[m];
      continue;
    }
    Int root;
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
      stack.push_back(root);
      stack.push_back(root);
      continue;
    }
    std::optional<Int> d = pollard_brent(m, budget.rho_iterations);
    if (!d) {
      out.composite_cofactors.push_back(m);
      continue;
    }
    stack.push_back(*d);
    stack.push_back(m / *d);
  }
  for (const auto& [p, e] : found) out.factors.push_back({p, e});
  std::sort(out.composite_cofactors.begin(), out.composite_cofactors.end());
  Int product = multiply_out(out.factors);
  for (const Int& c : out.composite_cofactors) product *= c;
  if (product != n)
    throw InvariantViolation(fmt::format("factorization of {} does not multiply back", n.get_str()));
  return out;
}

std::vector<Factorization> left_factorial_minus_one_table(u64 n_max, const FactorBudget& budget, unsigned threads) {
  if (n_max < 3) throw DomainError(fmt::format("factor table needs n_max >= 3 (got {})", n_max));
  std::vector<u64> ns;
  for (u64 n = 3; n <= n_max; ++n) ns.push_back(n);
  return parallel_map(ns, [&](u64 n) { return factorize(left_factorial(n) - 1, budget); }, threads);
}

GcdReport kurepa_gcd_check(u64 n_max) {
  if (n_max < 3) throw DomainError(fmt::format("kurepa_gcd_check needs n_max >= 3 (got {})", n_max));
  GcdReport r;
  r.n_max = n_max;
  Int left = 4, fact = 6;  // !3 and 3!
  for (u64 n = 3; n <= n_max; ++n) {
    if (n > 3) {
      left += fact;
      fact *= n;
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), left.get_mpz_t(), fact.get_mpz_t());
    if (g != 2) r.failures.push_back(n);
  }
  return r;
}

std::string render_factors(const Factorization& f) {
  std::string s;
  for (const auto& pp : f.factors) {
    if (!s.empty()) s += " × ";
    s += pp.prime.get_str();
    if (pp.exponent > 1) s += fmt::format("^{}", pp.exponent);
  }
  for (const Int& c : f.composite_cofactors) {
    if (!s.empty()) s += " × ";
    s += fmt::format("[composite {}]", c.get_str());
  }
  return s;
}

std::vector<PrimePower> parse_factors(const std::string& text) {
  std::vector<PrimePower> out;
  std::string digits, exp;
  bool in_exp = false;
  auto flush = [&] {
    if (in_exp && (digits.empty() || exp.empty()))
      throw DomainError(fmt::format("cannot parse factor list '{}'", text));
    if (digits.empty()) return;
    out.push_back({Int(digits), exp.empty() ? 1u : static_cast<unsigned>(std::stoul(exp))});
    digits.clear();
    exp.clear();
    in_exp = false;
  };
  for (char ch : text) {
    if (ch >= '0' && ch <= '9') (in_exp ? exp : digits) += ch;
    else if (ch == '^') in_exp = true;
    else if (ch == 'x' || ch == '*') flush();
    else if (ch == ' ' || static_cast<unsigned char>(ch) >= 0x80) flush();  // includes the bytes of "×"
    else {
      throw DomainError(fmt::format("cannot parse factor list '{}'", text));
    }
  }
  flush();
  return out;
}

Int multiply_out(const std::vector<PrimePower>& factors) {
  Int r = 1;
  for (const auto& pp : factors) {
    Int t;
    mpz_pow_ui(t.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    r *= t;
  }
  return r;
}

nlohmann::json to_json(const Factorization& f) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& pp : f.factors) factors.push_back({{"prime", pp.prime.get_str()}, {"exponent", pp.exponent}});
  std::vector<std::string> comps;
  for (const Int& c : f.composite_cofactors) comps.push_back(c.get_str());
  return {{"n", f.n.get_str()}, {"factors", factors}, {"composite_cofactors", comps}, {"complete", f.complete()}};
}

}  // namespace kbw

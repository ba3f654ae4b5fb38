#include "kbw/adele.hpp"

#include <cctype>

#include <fmt/format.h>

#include "kbw/error.hpp"
#include "kbw/parallel.hpp"
#include "kbw/residues.hpp"

namespace kbw {

std::optional<u64> AdeleElement::at(u64 p) const {
  auto it = residues.find(p);
  if (it == residues.end()) return std::nullopt;
  return it->second;
}

AdeleElement adele_from(const PrimeRange& window, const std::function<std::optional<u64>(u64)>& f,
                        unsigned threads) {
  PrimeRange w = PrimeRange::checked(window.lo, window.hi);
  std::vector<u64> primes = sieve_primes(w);
  std::vector<std::optional<u64>> values = parallel_map(primes, f, threads);
  AdeleElement a;
  a.window = w;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (values[i]) a.residues.emplace(primes[i], *values[i] % primes[i]);
    else a.undefined_at.insert(primes[i]);
  }
  return a;
}

AdeleElement embed_rational(const Rat& q, const PrimeRange& window) {
  return adele_from(window, [&](u64 p) -> std::optional<u64> {
    auto r = rational_residue(q, p);
    if (!r) return std::nullopt;
    return r->value();
  }, 1);
}

namespace {

void require_same_window(const AdeleElement& a, const AdeleElement& b) {
  if (!(a.window == b.window))
    throw DomainError(fmt::format("adele window mismatch ([{}, {}] vs [{}, {}])", a.window.lo, a.window.hi,
                                  b.window.lo, b.window.hi));
}

template <class Op>
AdeleElement pointwise(const AdeleElement& a, const AdeleElement& b, Op op) {
  require_same_window(a, b);
  AdeleElement out;
  out.window = a.window;
  out.undefined_at = a.undefined_at;
  out.undefined_at.insert(b.undefined_at.begin(), b.undefined_at.end());
  for (const auto& [p, x] : a.residues) {
    if (out.undefined_at.count(p)) continue;
    out.residues.emplace(p, op(x, b.residues.at(p), p));
  }
  return out;
}

void require_odd_window(const PrimeRange& w, u64 cap, const char* what) {
  if (w.hi > cap) throw CapacityError(fmt::format("{} window [{}, {}] exceeds the cap {}", what, w.lo, w.hi, cap));
}

}  // namespace

AdeleElement add(const AdeleElement& a, const AdeleElement& b) {
  return pointwise(a, b, [](u64 x, u64 y, u64 p) { return add_mod(x, y, p); });
}
AdeleElement sub(const AdeleElement& a, const AdeleElement& b) {
  return pointwise(a, b, [](u64 x, u64 y, u64 p) { return sub_mod(x, y, p); });
}
AdeleElement mul(const AdeleElement& a, const AdeleElement& b) {
  return pointwise(a, b, [](u64 x, u64 y, u64 p) { return mul_mod(x, y, p); });
}
AdeleElement neg(const AdeleElement& a) {
  AdeleElement out = a;
  for (auto& [p, x] : out.residues) x = neg_mod(x, p);
  return out;
}

AdeleComparison adele_eq(const AdeleElement& a, const AdeleElement& b) {
  require_same_window(a, b);
  AdeleComparison c;
  for (const auto& [p, x] : a.residues) {
    auto it = b.residues.find(p);
    if (it == b.residues.end()) continue;
    if (x == it->second) {
      c.agreement_primes.push_back(p);
      if (!c.agree_from) c.agree_from = p;
    } else {
      c.mismatch_primes.push_back(p);
      c.agree_from.reset();
    }
  }
  return c;
}

AdeleElement log_A(const Rat& x, const PrimeRange& window) {
  if (sgn(x) == 0) throw DomainError("log_A(0) is undefined");
  return adele_from(window, [&](u64 p) -> std::optional<u64> {
    if (mpz_divisible_ui_p(x.get_num().get_mpz_t(), p) || mpz_divisible_ui_p(x.get_den().get_mpz_t(), p))
      return std::nullopt;
    u64 p2 = prime_power(p, 2);
    auto r = rational_residue(x, p2);
    return fermat_quotient_mod(p, r->value()).value();
  });
}

AdeleElement ell_A(const Rat& x, const PrimeRange& window) {
  return mul(embed_rational(x, window), log_A(x, window));
}

AdeleElement gamma_W(const PrimeRange& window) {
  return adele_from(window, [](u64 p) -> std::optional<u64> {
    if (p == 2) return std::nullopt;
    return wilson_quotient_mod(p).value();
  });
}

AdeleElement gamma_G(const PrimeRange& window) {
  return adele_from(window, [](u64 p) -> std::optional<u64> {
    if (p == 2) return std::nullopt;
    return gertsch_quotient_mod(p).value();
  });
}

AdeleElement gamma_L(const PrimeRange& window) {
  return adele_from(window, [](u64 p) -> std::optional<u64> {
    if (p == 2) return std::nullopt;
    return lerch_quotient_mod(p).value();
  });
}

AdeleElement gamma_AG(const PrimeRange& window) {
  return adele_from(window, [](u64 p) -> std::optional<u64> {
    if (p == 2) return std::nullopt;
    return agoh_giuga_mod(p).value();
  });
}

AdeleElement gamma_M(const PrimeRange& window) {
  require_odd_window(window, bernoulli_mod_cap(), "gamma_M");
  return adele_from(window, [](u64 p) -> std::optional<u64> {
    if (p == 2) return std::nullopt;
    GregoryModTable g = gregory_mod_table(p);
    u64 s = 0;
    for (u64 n = 1; n + 2 <= p; ++n) {
      u64 abs_g = (n % 2 == 1) ? g.at(n) : neg_mod(g.at(n), p);
      s = add_mod(s, mul_mod(abs_g, inv_mod(n, p), p), p);
    }
    return s;
  });
}

AdeleElement gamma_Kp(const PrimeRange& window) {
  return adele_from(window, [](u64 p) -> std::optional<u64> {
    if (p == 2) return std::nullopt;
    return kurepa_mod(p).value();
  });
}

AdeleElement bell_residues(const PrimeRange& window) {
  return adele_from(window, [](u64 p) -> std::optional<u64> {
    if (p == 2) return std::nullopt;
    return bell_pm1_mod(p).value();
  });
}

AdeleElement gamma_Q(u64 m, const PrimeRange& window) {
  if (m < 1) throw DomainError("gamma_Q needs m >= 1");
  return adele_from(window, [m](u64 p) -> std::optional<u64> {
    if (p == 2 || m % p == 0) return std::nullopt;
    return special_quotient_mod(p, m).value();
  });
}

AdeleElement G_A(u64 k, const PrimeRange& window) {
  if (k < 2) throw DomainError(fmt::format("G_A needs k >= 2 (got {})", k));
  require_odd_window(window, bernoulli_mod_cap(), "G_A");
  return adele_from(window, [k](u64 p) -> std::optional<u64> {
    if (p == 2 || p <= k) return std::nullopt;
    return gregory_mod_table(p).at(p - k);
  });
}

AdeleElement Z_A(u64 k, const PrimeRange& window) {
  if (k < 2) throw DomainError(fmt::format("Z_A needs k >= 2 (got {})", k));
  require_odd_window(window, bernoulli_mod_cap(), "Z_A");
  return adele_from(window, [k](u64 p) -> std::optional<u64> {
    if (p == 2 || p <= k) return std::nullopt;
    return mul_mod(bernoulli_mod_table(p).at(p - k), inv_mod(k % p, p), p);
  });
}

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& s, const PrimeRange& w) : s_(s), w_(w) {}

  AdeleElement parse() {
    AdeleElement v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError(fmt::format("adele expression: {} at offset {} in '{}'", why, pos_, s_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  AdeleElement expr() {
    AdeleElement v = term();
    for (;;) {
      if (eat('+')) v = add(v, term());
      else if (eat('-')) v = sub(v, term());
      else return v;
    }
  }
  AdeleElement term() {
    AdeleElement v = factor();
    while (eat('*')) v = mul(v, factor());
    return v;
  }
  AdeleElement factor() {
    skip();
    if (eat('-')) return neg(factor());
    if (eat('(')) {
      AdeleElement v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) return embed_rational(rational(), w_);
    std::string name = identifier();
    if (name.empty()) fail("expected a number, a name or '('");
    return named(name);
  }

  Rat rational() {
    skip();
    bool negative = eat('-');
    Int num = integer();
    Int den = 1;
    if (eat('/')) den = integer();
    if (den == 0) fail("zero denominator");
    Rat q(negative ? Int(-num) : num, den);
    q.canonicalize();
    return q;
  }
  Int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Int(s_.substr(start, pos_ - start));
  }
  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  Rat argument() {
    if (!eat('(')) fail("expected '('");
    Rat q = rational();
    if (!eat(')')) fail("expected ')'");
    return q;
  }
  u64 small_argument() {
    Rat q = argument();
    if (q.get_den() != 1 || q < 1 || !q.get_num().fits_ulong_p()) fail("expected a positive integer argument");
    return q.get_num().get_ui();
  }

  AdeleElement named(const std::string& name) {
    if (name == "gamma_W") return gamma_W(w_);
    if (name == "gamma_G") return gamma_G(w_);
    if (name == "gamma_L") return gamma_L(w_);
    if (name == "gamma_AG") return gamma_AG(w_);
    if (name == "gamma_M") return gamma_M(w_);
    if (name == "gamma_Kp") return gamma_Kp(w_);
    if (name == "bell") return bell_residues(w_);
    if (name == "gamma_Q") return gamma_Q(small_argument(), w_);
    if (name == "G_A") return G_A(small_argument(), w_);
    if (name == "Z_A") return Z_A(small_argument(), w_);
    if (name == "log_A") return log_A(argument(), w_);
    if (name == "ell_A") return ell_A(argument(), w_);
    if (name == "embed") return embed_rational(argument(), w_);
    fail(fmt::format("unknown name '{}'", name));
  }

  const std::string& s_;
  PrimeRange w_;
  std::size_t pos_ = 0;
};

}  // namespace

AdeleElement evaluate_adele_expression(const std::string& expr, const PrimeRange& window) {
  PrimeRange w = PrimeRange::checked(window.lo, window.hi);
  return ExprParser(expr, w).parse();
}

nlohmann::json to_json(const AdeleElement& a) {
  nlohmann::json residues = nlohmann::json::array();
  for (const auto& [p, r] : a.residues) residues.push_back({p, r});
  return {{"window", {a.window.lo, a.window.hi}},
          {"residues", residues},
          {"undefined_at", std::vector<u64>(a.undefined_at.begin(), a.undefined_at.end())}};
}

nlohmann::json to_json(const AdeleComparison& c) {
  nlohmann::json j = {{"mismatch_primes", c.mismatch_primes}, {"agreement_primes", c.agreement_primes}};
  j["agree_from"] = c.agree_from ? nlohmann::json(*c.agree_from) : nlohmann::json(nullptr);
  return j;
}

}  // namespace kbw

#include "bgconj/harness.hpp"

#include "bgconj/errors.hpp"
#include "bgconj/gersten.hpp"
#include "bgconj/gm.hpp"
#include "bgconj/oracle.hpp"

namespace bgconj {

namespace {

const Gen kS0 = Gen::s(0);
const Gen kS1 = Gen::s(1);

std::string rational(const BigInt& num, const BigInt& den) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g == 0) return "0";
  BigInt a = num / g, b = den / g;
  if (b == 1) return a.get_str();
  return a.get_str() + "/" + b.get_str();
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void fill_naf_bounds(WitnessReport& r, const BigInt& p) {
  r.naf_terms = p;
  r.naf_word_lower = p > 0 ? ceil_div(p - 1, 2) : BigInt(0);
  r.naf_lower = p > 0 ? ceil_div(p - 1, 4) : BigInt(0);
}

PowerWord conjugator_word(const BigInt& alpha, const BigInt& beta) {
  PowerWord g(kS1, alpha);
  g.append(kS0, beta);
  return g;
}

std::string conjugator_desc(const BigInt& alpha, const std::string& beta) {
  std::string s;
  if (alpha != 0) s = "s1^" + alpha.get_str() + " ";
  return s + "s0^" + beta;
}

}  // namespace

std::optional<std::pair<BigInt, BigInt>> solve_conjugator(const BigInt& target, int A) {
  if (target == 0) return std::make_pair(BigInt(0), BigInt(0));
  const long v2 = static_cast<long>(mpz_scan1(target.get_mpz_t(), 0));
  std::optional<std::pair<BigInt, BigInt>> best;
  BigInt best_cost;
  for (long a = -A; a <= v2; ++a) {
    // -3 beta 2^a = target
    BigInt num = -target;
    if (a < 0)
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(-a));
    else
      mpz_tdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(a));
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 3)) continue;
    BigInt beta = num / 3;
    BigInt cost = BigInt(std::labs(a)) + min_term_count(PowerSum::from_integer(beta));
    if (!best || cost < best_cost) {
      best = std::make_pair(BigInt(a), beta);
      best_cost = cost;
    }
  }
  return best;
}

WitnessReport make_witness_gm(int m, const BigInt& n) {
  if (m < 2) throw DomainError("make_witness_gm needs m >= 2");
  if (n < 1) throw DomainError("make_witness_gm needs n >= 1");
  WitnessReport r;
  r.group = "G_" + std::to_string(m);
  r.m = m;
  r.n = n;
  const Tower g(m);
  r.u = PowerWord(kS1, 2);

  BigInt h;  // E(m-1, n)
  try {
    h = tower_value(m - 1, n);
  } catch (const TooLarge&) {
    r.symbolic = true;
    r.note = "E(m-1,n) exceeds the bit guard; nothing is materialized";
    return r;
  }
  r.formula_lower = floor_div(h - 1, 8);
  r.formula_lower_exact = rational(h - 1, 8);
  PowerSum third = third_of_tower_minus_one(m, n);  // (E(m,n)-1)/3
  fill_naf_bounds(r, min_term_count(third));

  // v = s0^(E-1) s1^2 with E - 1 = 2^h - 1 kept as a power sum.
  PowerSum e_minus_1 = add(PowerSum::single(1, h), PowerSum::from_integer(-1));
  r.v = synth_power(0, e_minus_1, g) * PowerWord(kS1, 2);
  r.length_upper = r.u.letter_count() + r.v.letter_count();

  BigInt E;
  try {
    E = tower_value(m, n);
  } catch (const TooLarge&) {
    r.symbolic = true;
    r.alpha = 0;
    r.beta_desc = "-(" + third.str() + ")";
    r.gamma_desc = conjugator_desc(0, r.beta_desc);
    r.note = "E(m,n) exceeds the bit guard; conjugator given symbolically";
    return r;
  }
  auto sol = solve_conjugator(E - 1);
  if (!sol) throw DomainError("no (alpha, beta) solves -3 beta 2^alpha = E(m,n) - 1");
  r.alpha = sol->first;
  r.beta = sol->second;
  r.beta_desc = r.beta.get_str();
  r.gamma = conjugator_word(r.alpha, r.beta);
  r.gamma_desc = conjugator_desc(r.alpha, r.beta_desc);
  fill_naf_bounds(r, min_term_count(PowerSum::from_integer(r.beta)));
  try {
    r.verified = is_identity(r.gamma * r.u * r.gamma.inverse() * r.v.inverse(), g);
  } catch (const TooLarge&) {
    r.symbolic = true;
    r.note = "verification exceeded the bit guard";
  }
  return r;
}

WitnessReport make_witness_bg(const BigInt& n) {
  if (n < 8) throw DomainError("make_witness_bg needs n >= 8 (eps = 1 is degenerate)");
  WitnessReport r;
  r.group = "G";
  r.n = n;
  // j = floor(log2(n) / 3): largest j with 2^(3j) <= n
  long j = 0;
  while (BigInt(1) << static_cast<unsigned>(3 * (j + 1)) <= n) ++j;
  r.m = static_cast<int>(j);
  BigInt eps;
  try {
    eps = tower_value(static_cast<int>(j), 1);
  } catch (const TooLarge&) {
    r.symbolic = true;
    r.note = "eps exceeds the bit guard";
    return r;
  }
  BigInt prev = tower_value(static_cast<int>(j) - 1, 1);  // E(j-1, 1)
  r.formula_lower = floor_div(prev - 1, 4);
  r.formula_lower_exact = rational(prev - 1, 4);
  r.u = PowerWord(kS1, 2);
  r.v = PowerWord(kS1, 2) * bg_power_word(PowerSum::from_integer(eps - 1));
  r.length_upper = r.u.letter_count() + r.v.letter_count();
  // s0^beta s1^2 s0^-beta = s1^2 s0^(-3 beta / 4), so the target is 4 (eps - 1).
  auto sol = solve_conjugator(4 * (eps - 1));
  if (!sol)
    throw DomainError("u and v are not conjugate for this n: 3 does not divide 4(eps-1) = " +
                      BigInt(4 * (eps - 1)).get_str());
  r.alpha = sol->first;
  r.beta = sol->second;
  r.beta_desc = r.beta.get_str();
  r.gamma = conjugator_word(r.alpha, r.beta);
  r.gamma_desc = conjugator_desc(r.alpha, r.beta_desc);
  fill_naf_bounds(r, min_term_count(PowerSum::from_integer(r.beta)));
  try {
    r.verified = word_problem_bg(r.gamma * r.u * r.gamma.inverse() * r.v.inverse());
  } catch (const TooLarge&) {
    r.symbolic = true;
    r.note = "verification exceeded the bit guard";
  }
  return r;
}

std::vector<WitnessReport> cl_table(int max_m, int max_n, const TableOptions& opt) {
  std::vector<WitnessReport> out;
  for (int m = 2; m <= max_m; ++m) {
    for (int n = 1; n <= max_n; ++n) {
      WitnessReport r;
      try {
        r = make_witness_gm(m, n);
      } catch (const std::exception& e) {
        r.group = "G_" + std::to_string(m);
        r.m = m;
        r.n = n;
        r.symbolic = true;
        r.note = e.what();
        out.push_back(r);
        continue;
      }
      if (opt.oracle) {
        if (r.symbolic || r.v.letter_count() > opt.oracle_max_v) {
          r.oracle_status = "skipped";
        } else {
          SearchBudget b;
          b.max_conjugator_length = opt.oracle_depth;
          b.node_cap = opt.oracle_node_cap;
          SearchResult sr = bounded_conjugator_search(r.u.expand(), r.v.expand(), Group::tower(m), b);
          if (sr.status == SearchStatus::Found) {
            r.oracle_cl = static_cast<int>(sr.word.size());
            r.oracle_status = "exact";
          } else {
            r.oracle_status = sr.status == SearchStatus::NotFound ? "none within depth" : "budget";
          }
        }
      }
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace bgconj

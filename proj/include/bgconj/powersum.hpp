#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bgconj/words.hpp"

namespace bgconj {

/// coeff * 2^exp
struct Term {
  BigInt coeff;
  BigInt exp;
  bool operator==(const Term& o) const { return coeff == o.coeff && exp == o.exp; }
};

/// sum_{j < count} sign * 2^(start + j*step), step > 0, count > 0.
struct Run {
  int sign = 1;
  BigInt start;
  BigInt step;
  BigInt count;
  bool operator==(const Run& o) const {
    return sign == o.sign && start == o.start && step == o.step && count == o.count;
  }
  BigInt last() const { return start + step * (count - 1); }
  bool contains(const BigInt& e) const;
};

/// A compressed integer sum_j n_j 2^{m_j} plus geometric runs. Exponents
/// are arbitrary-precision, so values like 2^(2^100) or (E(4,2)-1)/3 are
/// representable even though they can never be expanded.
///
/// The default-constructed value is zero. Construction does not normalize;
/// call normalized() for the canonical form (odd coefficients, strictly
/// increasing distinct exponents, runs disjoint from terms and each other).
class PowerSum {
 public:
  PowerSum() = default;
  PowerSum(std::vector<Term> terms, std::vector<Run> runs = {})
      : terms_(std::move(terms)), runs_(std::move(runs)) {}

  static PowerSum from_integer(const BigInt& k);
  static PowerSum single(const BigInt& coeff, const BigInt& exp) { return PowerSum({{coeff, exp}}); }
  static PowerSum run(int sign, const BigInt& start, const BigInt& step, const BigInt& count);
  /// Parses `term(c,e)+run(s,a,d,n)+...`, or a plain decimal integer.
  static PowerSum parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<Run>& runs() const { return runs_; }
  bool is_zero() const { return terms_.empty() && runs_.empty(); }

  PowerSum normalized() const;

  /// Exact integer value; throws DomainError for non-integral values and
  /// TooLarge when the value has more than `bit_guard` bits.
  BigInt to_integer(std::size_t bit_guard = kBitGuard) const;
  /// Value as mantissa * 2^shift, shift = smallest exponent present.
  std::pair<BigInt, BigInt> to_scaled(std::size_t bit_guard = kBitGuard) const;

  /// Number of signed terms the stored form expresses (run counts included).
  BigInt stored_term_count() const;

  std::string str() const;
  bool operator==(const PowerSum& o) const { return terms_ == o.terms_ && runs_ == o.runs_; }

 private:
  std::vector<Term> terms_;
  std::vector<Run> runs_;
};

PowerSum add(const PowerSum& x, const PowerSum& y);
PowerSum negate(const PowerSum& x);
/// Multiplies by 2^e.
PowerSum shift(const PowerSum& x, const BigInt& e);

/// Rewrites every coefficient into +-1 terms by repeatedly splitting
/// n = eps + 2^k n' with eps = +-1. Output has at most 2*sum|n_j| + 1 terms.
PowerSum to_signed_units(const PowerSum& x);

/// Non-adjacent form: +-1 coefficients, no two exponents differing by one.
/// Runs of step >= 2 that are isolated from the rest are kept symbolic.
PowerSum naf(const PowerSum& k);
/// Integer convenience: NAF digits as (sign, exponent) terms, ascending.
PowerSum naf(const BigInt& k);

bool is_non_adjacent(const PowerSum& x);

BigInt min_term_count(const PowerSum& k);

/// ceil((p-1)/2) with p = min_term_count(k); a lower bound for |s_i^k|.
BigInt length_lower_bound(const PowerSum& k);

/// E(m, n): E(0,n) = n, E(m,n) = 2^E(m-1,n). Throws TooLarge past the bit guard.
BigInt tower_value(int m, const BigInt& n);
/// E(m, n) as a single-term power sum (its exponent E(m-1,n) must fit).
PowerSum tower(int m, const BigInt& n);
/// (E(m,n) - 1)/3 = run(+, 0, 2, E(m-1,n)/2), for m >= 2.
PowerSum third_of_tower_minus_one(int m, const BigInt& n);

}  // namespace bgconj

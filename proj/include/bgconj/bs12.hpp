#pragma once

#include <optional>
#include <string>

#include "bgconj/words.hpp"

namespace bgconj {

/// num / 2^den_exp with num odd whenever den_exp > 0, and den_exp = 0 for zero.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(const BigInt& n) : num_(n) {}  // NOLINT: integers convert implicitly
  Dyadic(long n) : num_(n) {}  // NOLINT
  Dyadic(const BigInt& n, const BigInt& den_exp);

  const BigInt& num() const { return num_; }
  const BigInt& den_exp() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 0; }

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator-() const { return Dyadic(-num_, den_); }
  /// Multiplies by 2^e (e may be negative).
  Dyadic times_pow2(const BigInt& e) const;

  /// 2-adic valuation of a nonzero value (den_exp is subtracted).
  BigInt valuation() const;
  /// Odd part of the numerator; the value equals odd_part * 2^valuation.
  BigInt odd_part() const;

  /// "num" for integers, "num/2^e" otherwise.
  std::string str() const;
  bool operator==(const Dyadic& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  BigInt num_ = 0;
  BigInt den_ = 0;
};

/// (r, m) in Z[1/2] x| Z with (r,m)(s,q) = (r + 2^m s, m + q).
struct BSElem {
  Dyadic r;
  BigInt m = 0;

  bool is_identity() const { return r.is_zero() && m == 0; }
  std::string str() const { return "(" + r.str() + ", " + m.get_str() + ")"; }
  bool operator==(const BSElem& o) const { return r == o.r && m == o.m; }
};

BSElem mul(const BSElem& x, const BSElem& y);
BSElem inv(const BSElem& x);
/// g x g^-1
BSElem conjugate_by(const BSElem& g, const BSElem& x);

/// s0 -> (1,0), s1 -> (0,1). Throws DomainError on any other letter.
BSElem eval_word(const Word& w);
BSElem eval_word(const PowerWord& w);

/// s1^-p s0^a s1^q with p, q >= 0 minimal.
PowerWord normal_form(const BSElem& x);

/// gamma with gamma u gamma^-1 = v, or nothing when u and v are not conjugate.
std::optional<BSElem> conj_bs12(const BSElem& u, const BSElem& v);

}  // namespace bgconj

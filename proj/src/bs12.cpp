#include "bgconj/bs12.hpp"

#include "bgconj/errors.hpp"

namespace bgconj {

namespace {

unsigned long guarded_bits(const BigInt& e) {
  if (e < 0 || e > BigInt(static_cast<unsigned long>(kBitGuard)))
    throw TooLarge("dyadic shift of " + e.get_str() + " bits exceeds the bit guard");
  return e.get_ui();
}

}  // namespace

Dyadic::Dyadic(const BigInt& n, const BigInt& den_exp) : num_(n), den_(den_exp) {
  if (num_ == 0) {
    den_ = 0;
    return;
  }
  if (den_ < 0) {
    mpz_mul_2exp(num_.get_mpz_t(), num_.get_mpz_t(), guarded_bits(-den_));
    den_ = 0;
    return;
  }
  if (den_ == 0) return;
  BigInt v = static_cast<unsigned long>(mpz_scan1(num_.get_mpz_t(), 0));
  BigInt k = v < den_ ? v : den_;
  mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), k.get_ui());
  den_ -= k;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const Dyadic& hi = den_ >= o.den_ ? *this : o;
  const Dyadic& lo = den_ >= o.den_ ? o : *this;
  BigInt a = lo.num_;
  mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), guarded_bits(hi.den_ - lo.den_));
  return Dyadic(hi.num_ + a, hi.den_);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::times_pow2(const BigInt& e) const {
  if (is_zero()) return *this;
  return Dyadic(num_, den_ - e);
}

BigInt Dyadic::valuation() const {
  if (is_zero()) throw DomainError("valuation of zero");
  return BigInt(static_cast<unsigned long>(mpz_scan1(num_.get_mpz_t(), 0))) - den_;
}

BigInt Dyadic::odd_part() const {
  if (is_zero()) return 0;
  BigInt o;
  mpz_tdiv_q_2exp(o.get_mpz_t(), num_.get_mpz_t(), mpz_scan1(num_.get_mpz_t(), 0));
  return o;
}

std::string Dyadic::str() const {
  if (den_ == 0) return num_.get_str();
  return num_.get_str() + "/2^" + den_.get_str();
}

BSElem mul(const BSElem& x, const BSElem& y) { return {x.r + y.r.times_pow2(x.m), x.m + y.m}; }

BSElem inv(const BSElem& x) { return {-x.r.times_pow2(-x.m), -x.m}; }

BSElem conjugate_by(const BSElem& g, const BSElem& x) { return mul(mul(g, x), inv(g)); }

namespace {

BSElem gen_image(const Gen& g, const BigInt& e) {
  if (g.is_t || g.index > 1) throw DomainError("letter " + g.name() + " is not in BS(1,2) = <s0, s1>");
  if (g.index == 0) return {Dyadic(e), 0};
  return {Dyadic(), e};
}

}  // namespace

BSElem eval_word(const Word& w) { return eval_word(PowerWord(w)); }

BSElem eval_word(const PowerWord& w) {
  BSElem acc;
  for (const Syllable& s : w.syllables()) acc = mul(acc, gen_image(s.gen, s.exp));
  return acc;
}

PowerWord normal_form(const BSElem& x) {
  BigInt p = x.r.den_exp();
  if (-x.m > p) p = -x.m;
  if (p < 0) p = 0;
  BigInt q = x.m + p;
  BigInt a = x.r.times_pow2(p).num();
  PowerWord w(Gen::s(1), -p);
  w.append(Gen::s(0), a);
  w.append(Gen::s(1), q);
  return w;
}

namespace {

// Image of a dyadic in Z/N for odd N.
BigInt residue(const Dyadic& d, const BigInt& n) {
  if (n == 1) return 0;
  BigInt two = 2, inv2, r;
  mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), n.get_mpz_t());
  mpz_powm(r.get_mpz_t(), inv2.get_mpz_t(), d.den_exp().get_mpz_t(), n.get_mpz_t());
  r = r * d.num();
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<BSElem> verified(const BSElem& g, const BSElem& u, const BSElem& v) {
  if (conjugate_by(g, u) == v) return g;
  return std::nullopt;
}

}  // namespace

std::optional<BSElem> conj_bs12(const BSElem& u, const BSElem& v) {
  if (u.m != v.m) return std::nullopt;
  const Dyadic& r = u.r;
  const Dyadic& s = v.r;
  if (u.m == 0) {
    // The kernel Z[1/2] is abelian; only (0,k) acts, by scaling with 2^k.
    if (r.is_zero() || s.is_zero()) return r == s ? std::optional<BSElem>(BSElem{}) : std::nullopt;
    if (r.odd_part() != s.odd_part()) return std::nullopt;
    return verified(BSElem{Dyadic(), s.valuation() - r.valuation()}, u, v);
  }
  // (x,k)(r,m)(x,k)^-1 = (x(1 - 2^m) + 2^k r, m). Solvable in x iff
  // s - 2^k r lies in (2^|m| - 1) Z[1/2], and 2 has order |m| modulo 2^|m| - 1.
  BigInt am = abs(u.m);
  unsigned long bits = guarded_bits(am);
  BigInt n = 1;
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
  n -= 1;
  BigInt rb = residue(r, n), sb = residue(s, n);
  for (unsigned long k = 0; k < bits; ++k) {
    BigInt diff = sb - rb;
    if (mpz_divisible_p(diff.get_mpz_t(), n.get_mpz_t())) {
      Dyadic d = s - r.times_pow2(k);
      BigInt q;
      mpz_divexact(q.get_mpz_t(), d.num().get_mpz_t(), n.get_mpz_t());
      Dyadic x = u.m > 0 ? Dyadic(-q, d.den_exp()) : Dyadic(q, d.den_exp() - am);
      return verified(BSElem{x, k}, u, v);
    }
    rb = (rb * 2) % n;
  }
  return std::nullopt;
}

}  // namespace bgconj

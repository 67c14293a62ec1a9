#include "bgconj/gm.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "bgconj/bs12.hpp"
#include "bgconj/errors.hpp"
#include "bgconj/oracle.hpp"

namespace bgconj {

const char* method_name(Method m) {
  switch (m) {
    case Method::BS12: return "BS12";
    case Method::POWER_SHIFT: return "POWER_SHIFT";
    case Method::RING_SHIFT: return "RING_SHIFT";
    case Method::BOUNDED_SEARCH: return "BOUNDED_SEARCH";
    case Method::DMW: return "DMW";
    case Method::T_RING: return "T_RING";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::CONJUGATE: return "CONJUGATE";
    case Verdict::NOT_CONJUGATE: return "NOT_CONJUGATE";
    case Verdict::UNDECIDED_WITHIN_BUDGET: return "UNDECIDED_WITHIN_BUDGET";
  }
  return "?";
}

Tower::Tower(int height) : m(height) {
  if (height < 0) throw DomainError("tower height must be nonnegative");
}

void check_tower_word(const PowerWord& w, const Tower& g) {
  for (const Syllable& s : w.syllables())
    if (s.gen.is_t || s.gen.index < 0 || s.gen.index > g.m)
      throw DomainError("letter " + s.gen.name() + " is not a generator of G_" + std::to_string(g.m));
}

namespace {

BigInt shl_guarded(const BigInt& j, const BigInt& c) {
  if (c > BigInt(static_cast<unsigned long>(kBitGuard)) ||
      BigInt(static_cast<unsigned long>(mpz_sizeinbase(j.get_mpz_t(), 2))) + c >
          BigInt(static_cast<unsigned long>(kBitGuard)))
    throw TooLarge("pinch collapse produces an exponent beyond the bit guard");
  BigInt r;
  mpz_mul_2exp(r.get_mpz_t(), j.get_mpz_t(), c.get_ui());
  return r;
}

BigInt v2(const BigInt& j) { return static_cast<unsigned long>(mpz_scan1(j.get_mpz_t(), 0)); }

// y is already reduced at `level`.
std::optional<BigInt> power_of_reduced(const PowerWord& y, int level) {
  if (y.empty()) return BigInt(0);
  const Gen g = Gen::s(level);
  if (y.syllable_count() == 1) {
    if (y[0].gen == g) return y[0].exp;
    return std::nullopt;
  }
  if (level == 0 || y.top_index() < level) return std::nullopt;
  BigInt j = y.exponent_sum(g);
  if (j == 0) return std::nullopt;
  if (reduce_level(y * PowerWord(g, -j), level).empty()) return j;
  return std::nullopt;
}

// Stack reduction at level k: segments between s_k syllables are kept
// reduced at level k-1, and each incoming s_k syllable is collapsed against
// the stack top while the segment between them is a suitable power.
class LevelReducer {
 public:
  explicit LevelReducer(int k) : k_(k), segs_(1) {}

  void feed(const Syllable& s) {
    if (s.gen.is_t || s.gen.index < 0 || s.gen.index > k_)
      throw DomainError("letter " + s.gen.name() + " above reduction level " + std::to_string(k_));
    if (s.gen.index < k_) {
      pending_.append(s.gen, s.exp);
      return;
    }
    flush();
    push_top(s.exp);
  }

  PowerWord finish() {
    flush();
    PowerWord out = segs_[0];
    for (std::size_t i = 0; i < tops_.size(); ++i) {
      out.append(Gen::s(k_), tops_[i]);
      out.append(segs_[i + 1]);
    }
    return out;
  }

 private:
  void flush() {
    if (pending_.empty()) return;
    segs_.back() = reduce_level(segs_.back() * pending_, k_ - 1);
    pending_ = PowerWord();
  }

  void push_top(BigInt e) {
    const Gen low = Gen::s(k_ - 1);
    while (e != 0 && !tops_.empty()) {
      if (segs_.back().empty()) {
        // merge with the top syllable and retry against the level below
        e += tops_.back();
        tops_.pop_back();
        segs_.pop_back();
        continue;
      }
      BigInt& f = tops_.back();
      if (sgn(f) == sgn(e)) break;
      auto j = power_of_reduced(segs_.back(), k_ - 1);
      if (!j || *j == 0) break;
      BigInt c, jn;
      if (f > 0) {
        // s_k y s_k^-1 = s_{k-1}^{2j}
        c = f < -e ? f : BigInt(-e);
        jn = shl_guarded(*j, c);
        f -= c;
        e += c;
      } else {
        // s_k^-1 s_{k-1}^{2j} s_k = s_{k-1}^j
        c = -f < e ? BigInt(-f) : e;
        BigInt v = v2(*j);
        if (v < c) c = v;
        if (c == 0) break;
        mpz_fdiv_q_2exp(jn.get_mpz_t(), j->get_mpz_t(), c.get_ui());
        f += c;
        e -= c;
      }
      PowerWord yn(low, jn);
      if (f == 0) {
        tops_.pop_back();
        segs_.pop_back();
        segs_.back() = reduce_level(segs_.back() * yn, k_ - 1);
      } else {
        segs_.back() = yn;
      }
    }
    if (e != 0) {
      tops_.push_back(e);
      segs_.emplace_back();
    }
  }

  int k_;
  std::vector<PowerWord> segs_;
  std::vector<BigInt> tops_;
  PowerWord pending_;
};

}  // namespace

PowerWord reduce_level(const PowerWord& w, int k) {
  if (k <= 0) {
    BigInt e = 0;
    for (const Syllable& s : w.syllables()) {
      if (s.gen.is_t || s.gen.index != 0) throw DomainError("letter " + s.gen.name() + " above level 0");
      e += s.exp;
    }
    return PowerWord(Gen::s(0), e);
  }
  LevelReducer red(k);
  for (const Syllable& s : w.syllables()) red.feed(s);
  return red.finish();
}

PowerWord britton_reduce(const PowerWord& w, const Tower& g) {
  check_tower_word(w, g);
  return reduce_level(w, std::max(0, w.top_index()));
}

bool is_identity(const PowerWord& w, const Tower& g) { return britton_reduce(w, g).empty(); }

std::optional<BigInt> power_of(const PowerWord& y, int level) {
  if (y.has_t() || y.top_index() > level) return std::nullopt;
  return power_of_reduced(reduce_level(y, level), level);
}

bool has_pinch(const PowerWord& w) {
  const auto& sy = w.syllables();
  for (std::size_t a = 0; a < sy.size(); ++a) {
    if (sy[a].gen.is_t || sy[a].gen.index < 1) continue;
    const int i = sy[a].gen.index;
    std::size_t b = a + 1;
    while (b < sy.size() && !sy[b].gen.is_t && sy[b].gen.index < i) ++b;
    if (b == sy.size() || sy[b].gen != sy[a].gen) continue;
    if (sgn(sy[a].exp) == sgn(sy[b].exp)) continue;
    PowerWord content = w.slice(a + 1, b);
    // syllables merge on append, so b == a+1 cannot happen for a reduced PowerWord
    if (content.empty()) return true;
    const Gen low = Gen::s(i - 1);
    BigInt j = content.exponent_sum(low);
    if (!reduce_level(content * PowerWord(low, -j), i - 1).empty()) continue;
    if (sy[a].exp > 0 || mpz_even_p(j.get_mpz_t())) return true;
  }
  return false;
}

bool has_cyclic_pinch(const PowerWord& w) {
  const std::size_t n = w.syllable_count();
  const BigInt len = w.letter_count();
  for (std::size_t r = 0; r < std::max<std::size_t>(n, 1); ++r) {
    PowerWord rot = w.slice(r, n) * w.slice(0, r);
    if (rot.letter_count() < len) return true;
    if (has_pinch(rot)) return true;
  }
  return false;
}

PowerWord retract(const PowerWord& w) {
  PowerWord out;
  for (const Syllable& s : w.syllables()) {
    if (s.gen.is_t) throw DomainError("retract: t is not a tower generator");
    if (s.gen.index == 0) continue;
    out.append(Gen::s(s.gen.index - 1), s.exp);
  }
  return out;
}

PowerWord lift(const PowerWord& w) {
  PowerWord out;
  for (const Syllable& s : w.syllables()) {
    if (s.gen.is_t) throw DomainError("lift: t is not a tower generator");
    out.append(Gen::s(s.gen.index + 1), s.exp);
  }
  return out;
}

std::optional<PowerSum> eval_power(const PowerWord& w, int i, const Tower& g) {
  PowerWord red = britton_reduce(w, g);
  if (red.empty()) return PowerSum();
  if (red.top_index() != i) return std::nullopt;
  auto j = power_of_reduced(red, i);
  if (!j) return std::nullopt;
  return PowerSum::from_integer(*j);
}

namespace {

BigInt top_letters(const PowerWord& w, int k) {
  BigInt n = 0;
  for (const Syllable& s : w.syllables())
    if (s.gen == Gen::s(k)) n += abs(s.exp);
  return n;
}

std::size_t first_syllable_of(const PowerWord& w, int k) {
  for (std::size_t i = 0; i < w.syllable_count(); ++i)
    if (w[i].gen == Gen::s(k)) return i;
  return w.syllable_count();
}

}  // namespace

RankResult rank(const PowerWord& w, const Tower& g) {
  RankResult res;
  PowerWord cur = britton_reduce(w, g);
  PowerWord gamma;
  int k = std::max(0, cur.top_index());
  while (k >= 1) {
    BigInt before = top_letters(cur, k);
    if (before == 0) {
      k = std::max(0, cur.top_index());
      continue;
    }
    // Rotate past the first s_k syllable; the only new adjacency is the
    // wrap-around pair, so the s_k letter count drops iff it was a pinch.
    PowerWord p = cur.slice(0, first_syllable_of(cur, k) + 1);
    PowerWord cand = reduce_level(p.inverse() * cur * p, k);
    if (top_letters(cand, k) < before) {
      cur = cand;
      gamma *= p;
      continue;
    }
    break;
  }
  if (k >= 1) {
    std::size_t f = first_syllable_of(cur, k);
    if (f > 0 && !(cur.back().gen == Gen::s(k))) {
      PowerWord p = cur.slice(0, f);
      cur = reduce_level(p.inverse() * cur * p, k);
      gamma *= p;
    }
  }
  res.rank = k;
  res.conjugator = gamma;
  res.reduced = cur;
  res.verified = is_identity(gamma.inverse() * w * gamma * cur.inverse(), g);
  return res;
}

namespace {

std::vector<std::pair<int, BigInt>> naf_digits(const PowerSum& k) {
  PowerSum n = naf(k);
  std::vector<std::pair<int, BigInt>> d;
  for (const Term& t : n.terms()) d.push_back({t.coeff > 0 ? 1 : -1, t.exp});
  for (const Run& r : n.runs()) {
    if (r.count > BigInt(static_cast<unsigned long>(kLetterGuard)))
      throw TooLarge("NAF run of " + r.count.get_str() + " terms is too long to synthesize");
    BigInt e = r.start;
    for (unsigned long j = 0; j < r.count.get_ui(); ++j, e += r.step) d.push_back({r.sign, e});
  }
  std::sort(d.begin(), d.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return d;
}

PowerWord synth(int i, const PowerSum& k, int m) {
  if (k.is_zero()) return {};
  if (i == m) return PowerWord(Gen::s(m), k.to_integer());
  auto digits = naf_digits(k);
  if (!digits.empty() && digits.front().second < 0)
    throw DomainError("synth_power needs an integer exponent");
  // s_{i+1}^{e1} s_i^{d1} s_{i+1}^{e2-e1} ... s_i^{dp} s_{i+1}^{-ep}
  PowerWord out;
  BigInt prev = 0;
  for (const auto& [sign, e] : digits) {
    out *= synth(i + 1, PowerSum::from_integer(e - prev), m);
    out.append(Gen::s(i), sign);
    prev = e;
  }
  out *= synth(i + 1, PowerSum::from_integer(-prev), m);
  return out;
}

}  // namespace

PowerWord synth_power(int i, const PowerSum& k, const Tower& g) {
  if (i < 0 || i > g.m) throw DomainError("synth_power: index outside the tower");
  return synth(i, k, g.m);
}

std::pair<BigInt, BigInt> length_bounds_power(int i, const PowerSum& k, const Tower& g) {
  return {length_lower_bound(k), synth_power(i, k, g).letter_count()};
}

namespace {

ConjResult positive(const PowerWord& u, const PowerWord& v, const PowerWord& gamma, Method how,
                    const Tower& g) {
  ConjResult res;
  ConjCertificate c{u, v, britton_reduce(gamma, g), how, false};
  c.verified = is_identity(c.gamma * u * c.gamma.inverse() * v.inverse(), g);
  if (!c.verified) {
    res.verdict = Verdict::UNDECIDED_WITHIN_BUDGET;
    res.note = "candidate conjugator failed verification";
    return res;
  }
  res.verdict = Verdict::CONJUGATE;
  res.cert = c;
  return res;
}

ConjResult negative(std::string why) {
  ConjResult r;
  r.verdict = Verdict::NOT_CONJUGATE;
  r.note = std::move(why);
  return r;
}

ConjResult undecided(std::string why) {
  ConjResult r;
  r.verdict = Verdict::UNDECIDED_WITHIN_BUDGET;
  r.note = std::move(why);
  return r;
}

PowerWord bs_word(const BSElem& x) { return normal_form(x); }

std::optional<BigInt> exact_log2(const BigInt& num, const BigInt& den) {
  // num/den = 2^T ?
  if (num == 0 || den == 0 || sgn(num) != sgn(den)) return std::nullopt;
  BigInt a = abs(num), b = abs(den);
  long va = mpz_scan1(a.get_mpz_t(), 0), vb = mpz_scan1(b.get_mpz_t(), 0);
  BigInt oa, ob;
  mpz_tdiv_q_2exp(oa.get_mpz_t(), a.get_mpz_t(), va);
  mpz_tdiv_q_2exp(ob.get_mpz_t(), b.get_mpz_t(), vb);
  if (oa != ob) return std::nullopt;
  return BigInt(va - vb);
}

// Rotations p^-1 U p at syllable boundaries, with their p.
std::vector<std::pair<PowerWord, PowerWord>> rotations(const PowerWord& w, int k) {
  std::vector<std::pair<PowerWord, PowerWord>> out;
  const std::size_t n = w.syllable_count();
  for (std::size_t r = 0; r < std::max<std::size_t>(n, 1); ++r) {
    PowerWord p = w.slice(0, r);
    out.push_back({reduce_level(p.inverse() * w * p, k), p});
  }
  return out;
}

ConjResult conj_low_rank(const PowerWord& U, const PowerWord& V, const Tower& g, int r,
                         const std::function<ConjResult(const PowerWord&, Method)>& finish) {
  if (g.m == 0) return U == V ? finish(PowerWord(), Method::BS12) : negative("distinct elements of Z");
  BSElem a = eval_word(U), b = eval_word(V);
  if (auto c = conj_bs12(a, b)) return finish(bs_word(*c), Method::BS12);
  if (r == 1 && g.m >= 2) {
    // Both conjugate into <s1> inside BS(1,2), with exponents related by s2^T.
    auto ga = conj_bs12(a, BSElem{Dyadic(), a.m});
    auto gb = conj_bs12(b, BSElem{Dyadic(), b.m});
    if (ga && gb) {
      if (auto T = exact_log2(b.m, a.m)) {
        PowerWord gamma = bs_word(*gb).inverse() * PowerWord(Gen::s(2), *T) * bs_word(*ga);
        return finish(gamma, Method::RING_SHIFT);
      }
    }
  }
  return negative("not conjugate in BS(1,2) and no s2-ring relates them");
}

}  // namespace

ConjResult conj_gm(const PowerWord& u, const PowerWord& v, const Tower& g, const SearchBudget& budget) {
  check_tower_word(u, g);
  check_tower_word(v, g);
  if (g.m >= 1 && u.exponent_sum(Gen::s(g.m)) != v.exponent_sum(Gen::s(g.m)))
    return negative("abelianization (s" + std::to_string(g.m) + " exponent sum) differs");
  RankResult ru = rank(u, g), rv = rank(v, g);
  if (ru.rank != rv.rank)
    return negative("ranks differ: " + std::to_string(ru.rank) + " vs " + std::to_string(rv.rank));
  const PowerWord& U = ru.reduced;
  const PowerWord& V = rv.reduced;
  const int r = ru.rank;
  // gamma' U gamma'^-1 = V  =>  gamma = cv gamma' cu^-1 conjugates u to v.
  auto finish = [&](const PowerWord& gp, Method how) {
    return positive(u, v, rv.conjugator * gp * ru.conjugator.inverse(), how, g);
  };
  if (U == V) return finish(PowerWord(), r <= 1 ? Method::BS12 : Method::POWER_SHIFT);
  if (r <= 1) return conj_low_rank(U, V, g, r, finish);

  const Gen top = Gen::s(r);
  if (U.syllable_count() == 1 && V.syllable_count() == 1 && U[0].gen == top && V[0].gen == top &&
      r < g.m) {
    if (auto T = exact_log2(V[0].exp, U[0].exp)) return finish(PowerWord(Gen::s(r + 1), *T), Method::RING_SHIFT);
  }

  auto ru_rot = rotations(U, r);
  auto rv_rot = rotations(V, r);
  const Gen below = Gen::s(r - 1);
  for (int mag = 0; mag <= budget.max_power_shift; ++mag) {
    for (int sgn_e : {1, -1}) {
      if (mag == 0 && sgn_e < 0) continue;
      PowerWord se(below, sgn_e * mag);
      for (const auto& [ur, p] : ru_rot) {
        PowerWord shifted = reduce_level(se * ur * se.inverse(), r);
        for (const auto& [vr, q] : rv_rot) {
          if (shifted == vr || reduce_level(shifted * vr.inverse(), r).empty())
            return finish(q * se * p.inverse(), Method::POWER_SHIFT);
        }
      }
    }
  }

  // pi: s0 -> 1, s_i -> s_{i-1} is a homomorphism onto G_{m-1}.
  if (g.m >= 1) {
    Tower lower(g.m - 1);
    ConjResult img = conj_gm(retract(U), retract(V), lower, budget);
    if (img.verdict == Verdict::NOT_CONJUGATE)
      return negative("retraction images are not conjugate: " + img.note);
  }

  try {
    SearchResult sr = bounded_conjugator_search(U.expand(), V.expand(), Group::tower(g.m), budget);
    if (sr.status == SearchStatus::Found) return finish(PowerWord(sr.word), Method::BOUNDED_SEARCH);
    return undecided(sr.status == SearchStatus::BudgetExceeded ? "search node cap exceeded"
                                                               : "no conjugator within the search depth");
  } catch (const TooLarge&) {
    return undecided("reduced words too long for bounded search");
  }
}

}  // namespace bgconj

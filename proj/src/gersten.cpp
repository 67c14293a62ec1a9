#include "bgconj/gersten.hpp"

#include <algorithm>
#include <sstream>

#include "bgconj/bs12.hpp"
#include "bgconj/errors.hpp"
#include "bgconj/oracle.hpp"

namespace bgconj {

namespace {

const Gen kT = Gen::t();
const Gen kS0 = Gen::s(0);
const Gen kS1 = Gen::s(1);

}  // namespace

PowerWord from_original(const PowerWord& w) {
  for (const Syllable& s : w.syllables())
    if (!s.gen.is_t && s.gen.index != 0)
      throw DomainError("original presentation uses only a and t, got " + s.gen.name());
  return w;
}

PowerWord to_original(const PowerWord& w) {
  PowerWord out;
  for (const Syllable& s : w.syllables()) {
    if (s.gen.is_t || s.gen.index == 0) {
      out.append(s.gen, s.exp);
      continue;
    }
    const int i = s.gen.index;
    out.append(kT, i);
    out.append(kS0, s.exp);
    out.append(kT, -i);
  }
  return out;
}

std::string original_str(const PowerWord& w) {
  std::ostringstream os;
  bool first = true;
  PowerWord orig = to_original(w);
  for (const Syllable& s : orig.syllables()) {
    if (!first) os << ' ';
    first = false;
    os << (s.gen.is_t ? "t" : "a");
    if (s.exp != 1) os << '^' << s.exp.get_str();
  }
  return os.str();
}

PowerWord to_presentation(const PowerWord& w) {
  PowerWord out;
  for (const Syllable& s : w.syllables()) {
    if (s.gen.is_t || s.gen.index == 0 || s.gen.index == 1) {
      out.append(s.gen, s.exp);
      continue;
    }
    out.append(kT, s.gen.index);
    out.append(kS0, s.exp);
    out.append(kT, -s.gen.index);
  }
  return out;
}

ShiftedWord shift_to_subgroup(const PowerWord& w) {
  ShiftedWord out;
  BigInt sigma = 0;
  for (const Syllable& s : w.syllables()) {
    if (s.gen.is_t) {
      sigma += s.exp;
      continue;
    }
    BigInt j = sigma + s.gen.index;
    if (!j.fits_sint_p() || abs(j) > BigInt(1 << 20)) throw TooLarge("subgroup index out of range");
    const int ji = static_cast<int>(j.get_si());
    out.word.append(Gen::s(ji), s.exp);
    out.M = std::max(out.M, std::abs(ji));
  }
  if (sigma != 0) throw DomainError("shift_to_subgroup needs zero t-exponent sum");
  return out;
}

std::pair<PowerWord, Tower> embed_in_G2M(const PowerWord& w, int M) {
  PowerWord out;
  for (const Syllable& s : w.syllables()) {
    if (s.gen.is_t) throw DomainError("embed_in_G2M: t letters must be shifted away first");
    if (std::abs(s.gen.index) > M) throw DomainError("embed_in_G2M: index outside [-M, M]");
    out.append(Gen::s(s.gen.index + M), s.exp);
  }
  return {out, Tower(2 * M)};
}

namespace {

// Stack reduction over t with BS(1,2) segments, mirroring the tower reducer.
class TReducer {
 public:
  TReducer() : segs_(1) {}

  void feed(const Syllable& s) {
    if (!s.gen.is_t) {
      if (s.gen.index != 0 && s.gen.index != 1)
        throw DomainError("letter " + s.gen.name() + " is not in the presentation of G");
      segs_.back() = mul(segs_.back(), s.gen.index == 0 ? BSElem{Dyadic(s.exp), 0} : BSElem{Dyadic(), s.exp});
      return;
    }
    BigInt e = s.exp;
    while (e != 0 && !tops_.empty()) {
      if (segs_.back().is_identity()) {
        // merge with the top t-syllable and retry against the level below
        e += tops_.back();
        tops_.pop_back();
        segs_.pop_back();
        continue;
      }
      BigInt& f = tops_.back();
      if (sgn(f) == sgn(e)) break;
      const BSElem& y = segs_.back();
      BSElem yn;
      if (f > 0) {
        // t s0^r t^-1 = s1^r
        if (y.m != 0 || !y.r.is_integer()) break;
        yn = BSElem{Dyadic(), y.r.num()};
        f -= 1;
        e += 1;
      } else {
        // t^-1 s1^q t = s0^q
        if (!y.r.is_zero()) break;
        yn = BSElem{Dyadic(y.m), 0};
        f += 1;
        e -= 1;
      }
      if (f == 0) {
        tops_.pop_back();
        segs_.pop_back();
        segs_.back() = mul(segs_.back(), yn);
      } else {
        segs_.back() = yn;
      }
    }
    if (e != 0) {
      tops_.push_back(e);
      segs_.emplace_back();
    }
  }

  PowerWord finish() const {
    PowerWord out = normal_form(segs_[0]);
    for (std::size_t i = 0; i < tops_.size(); ++i) {
      out.append(kT, tops_[i]);
      out.append(normal_form(segs_[i + 1]));
    }
    return out;
  }

 private:
  std::vector<BSElem> segs_;
  std::vector<BigInt> tops_;
};

BigInt t_letters(const PowerWord& w) {
  BigInt n = 0;
  for (const Syllable& s : w.syllables())
    if (s.gen.is_t) n += abs(s.exp);
  return n;
}

std::size_t first_t(const PowerWord& w) {
  for (std::size_t i = 0; i < w.syllable_count(); ++i)
    if (w[i].gen.is_t) return i;
  return w.syllable_count();
}

}  // namespace

PowerWord britton_reduce_bg(const PowerWord& w) {
  TReducer red;
  PowerWord p = to_presentation(w);
  for (const Syllable& s : p.syllables()) red.feed(s);
  return red.finish();
}

bool word_problem_bg(const PowerWord& w) {
  PowerWord p = to_presentation(w);
  if (p.exponent_sum(kT) != 0) return false;
  return britton_reduce_bg(p).empty();
}

bool has_t_pinch(const PowerWord& w) {
  const auto& sy = w.syllables();
  for (std::size_t a = 0; a < sy.size(); ++a) {
    if (!sy[a].gen.is_t) continue;
    std::size_t b = a + 1;
    while (b < sy.size() && !sy[b].gen.is_t) ++b;
    if (b == sy.size() || sgn(sy[a].exp) == sgn(sy[b].exp)) continue;
    BSElem c = eval_word(w.slice(a + 1, b));
    if (sy[a].exp > 0 && c.m == 0 && c.r.is_integer()) return true;
    if (sy[a].exp < 0 && c.r.is_zero()) return true;
  }
  return false;
}

bool has_cyclic_t_pinch(const PowerWord& w) {
  const std::size_t n = w.syllable_count();
  const BigInt len = w.letter_count();
  for (std::size_t r = 0; r < std::max<std::size_t>(n, 1); ++r) {
    PowerWord rot = w.slice(r, n) * w.slice(0, r);
    if (rot.letter_count() < len && t_letters(rot) < t_letters(w)) return true;
    if (has_t_pinch(rot)) return true;
  }
  return false;
}

CyclicBG cyclic_britton_reduce(const PowerWord& w) {
  PowerWord cur = britton_reduce_bg(w);
  PowerWord gamma;
  while (t_letters(cur) > 0) {
    PowerWord p = cur.slice(0, first_t(cur) + 1);
    PowerWord cand = britton_reduce_bg(p.inverse() * cur * p);
    if (t_letters(cand) >= t_letters(cur)) break;
    cur = cand;
    gamma *= p;
  }
  if (t_letters(cur) > 0) {
    std::size_t f = first_t(cur);
    if (f > 0 && !cur.back().gen.is_t) {
      PowerWord p = cur.slice(0, f);
      cur = britton_reduce_bg(p.inverse() * cur * p);
      gamma *= p;
    }
  }
  return {cur, gamma};
}

namespace {

ConjResult verdict_only(Verdict v, std::string why) {
  ConjResult r;
  r.verdict = v;
  r.note = std::move(why);
  return r;
}

ConjResult certify(const PowerWord& u, const PowerWord& v, const PowerWord& gamma, Method how) {
  ConjCertificate c{u, v, gamma, how, false};
  c.verified = word_problem_bg(gamma * u * gamma.inverse() * v.inverse());
  if (!c.verified) return verdict_only(Verdict::UNDECIDED_WITHIN_BUDGET, "candidate conjugator failed verification");
  ConjResult r;
  r.verdict = Verdict::CONJUGATE;
  r.cert = c;
  return r;
}

// Signs of the t letters in order.
std::vector<int> t_pattern(const PowerWord& w) {
  std::vector<int> p;
  for (const Syllable& s : w.syllables())
    if (s.gen.is_t)
      for (BigInt i = 0; i < abs(s.exp); ++i) p.push_back(sgn(s.exp));
  return p;
}

bool cyclically_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < a.size(); ++r)
    if (std::equal(a.begin() + static_cast<long>(r), a.end(), b.begin()) &&
        std::equal(a.begin(), a.begin() + static_cast<long>(r), b.begin() + static_cast<long>(a.size() - r)))
      return true;
  return false;
}

// Cyclic rotations p^-1 w p that start with a t^-1 letter.
std::vector<std::pair<PowerWord, PowerWord>> rotations_at_inverse_t(const PowerWord& w) {
  std::vector<std::pair<PowerWord, PowerWord>> out;
  for (std::size_t r = 0; r < w.syllable_count(); ++r) {
    if (!w[r].gen.is_t || w[r].exp > 0) continue;
    for (BigInt d = 0; d < -w[r].exp; ++d) {
      PowerWord p = w.slice(0, r) * PowerWord(kT, -d);
      PowerWord rot = p.inverse() * w * p;
      out.push_back({rot, p});
    }
  }
  return out;
}

// phi of the t-free segment following a leading t^-1 letter.
BSElem first_segment(const PowerWord& w) {
  PowerWord seg;
  std::size_t i = 0;
  if (i < w.syllable_count() && w[i].gen.is_t) {
    if (abs(w[i].exp) > 1) return BSElem{};
    ++i;
  }
  for (; i < w.syllable_count() && !w[i].gen.is_t; ++i) seg.append(w[i].gen, w[i].exp);
  return eval_word(seg);
}

std::vector<BigInt> dmw_candidates(const BSElem& g1, const BSElem& g1p, int scan) {
  const BigInt& m = g1.m;
  const BigInt& q = g1p.m;
  std::vector<BigInt> ks{0, -m, q - m};
  for (int k = 1; k <= scan; ++k) {
    ks.push_back(k);
    ks.push_back(-k);
  }
  std::vector<BigInt> out;
  for (const BigInt& k : ks)
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  return out;
}

struct DmwHit {
  BigInt k, m, q;
  PowerWord c;
};

// s0^k X s0^-k = Y for X, Y both starting with t^-1.
std::optional<DmwHit> dmw_align(const PowerWord& X, const PowerWord& Y, int scan) {
  BSElem a = first_segment(X), b = first_segment(Y);
  for (const BigInt& k : dmw_candidates(a, b, scan)) {
    PowerWord c(kS0, k);
    if (word_problem_bg(c * X * c.inverse() * Y.inverse())) return DmwHit{k, a.m, b.m, c};
  }
  return std::nullopt;
}

bool starts_with_inverse_t(const PowerWord& w) { return !w.empty() && w.front().gen.is_t && w.front().exp < 0; }

// s0^a t^-1 = t^-1 s1^a, so a leading s0 power moves past a leading t^-1
// without changing the element.
PowerWord to_normal_position(const PowerWord& w) {
  if (w.syllable_count() < 2 || w[0].gen != kS0 || !w[1].gen.is_t || w[1].exp > 0) return w;
  PowerWord out(kT, -1);
  out.append(kS1, w[0].exp);
  out.append(kT, w[1].exp + 1);
  out.append(w.slice(2, w.syllable_count()));
  return out;
}

PowerWord elem_word(const BSElem& x) { return normal_form(x); }

}  // namespace

ConjResult conj_bg(const PowerWord& u0, const PowerWord& v0, const SearchBudget& budget) {
  const PowerWord u = to_presentation(u0), v = to_presentation(v0);
  if (u.exponent_sum(kT) != v.exponent_sum(kT))
    return verdict_only(Verdict::NOT_CONJUGATE, "t-exponent sums differ");
  CyclicBG cu = cyclic_britton_reduce(u), cv = cyclic_britton_reduce(v);
  const PowerWord& U = cu.reduced;
  const PowerWord& V = cv.reduced;
  auto finish = [&](const PowerWord& gp, Method how) {
    return certify(u, v, cv.gamma * gp * cu.gamma.inverse(), how);
  };
  const bool tu = t_letters(U) > 0, tv = t_letters(V) > 0;
  if (tu != tv) return verdict_only(Verdict::NOT_CONJUGATE, "one side is conjugate into <s0,s1>, the other is not");
  if (!tu && U == V) return finish(PowerWord(), Method::BS12);

  if (tu) {
    if (!cyclically_equal(t_pattern(U), t_pattern(V)))
      return verdict_only(Verdict::NOT_CONJUGATE, "cyclic t-patterns differ");
    const int scan = 32;
    auto record = [](ConjResult r, const DmwHit& h) {
      r.dmw_k = h.k;
      r.dmw_m = h.m;
      r.dmw_q = h.q;
      return r;
    };
    // Direct alignment of the given words, then their inverses.
    PowerWord lu = britton_reduce_bg(u), lv = britton_reduce_bg(v);
    lu = to_normal_position(lu);
    lv = to_normal_position(lv);
    for (int inv_pass = 0; inv_pass < 2; ++inv_pass) {
      PowerWord X = inv_pass ? lu.inverse() : lu, Y = inv_pass ? lv.inverse() : lv;
      if (!starts_with_inverse_t(X) || !starts_with_inverse_t(Y)) continue;
      if (auto h = dmw_align(X, Y, scan)) {
        ConjResult r = certify(u, v, h->c, Method::DMW);
        if (r.verdict == Verdict::CONJUGATE) return record(r, *h);
      }
    }
    if (U == V) return finish(PowerWord(), Method::DMW);
    // Cyclic rotations of the reduced forms.
    for (int inv_pass = 0; inv_pass < 2; ++inv_pass) {
      PowerWord X = inv_pass ? U.inverse() : U, Y = inv_pass ? V.inverse() : V;
      auto rx = rotations_at_inverse_t(X);
      auto ry = rotations_at_inverse_t(Y);
      if (ry.empty()) continue;
      const auto& [y0, q] = ry.front();
      for (const auto& [xi, p] : rx) {
        PowerWord xr = britton_reduce_bg(xi), yr = britton_reduce_bg(y0);
        if (auto h = dmw_align(xr, yr, scan)) {
          // c p^-1 X p c^-1 = q^-1 Y q, and inverting both sides keeps the conjugator.
          ConjResult r = finish(q * h->c * p.inverse(), Method::DMW);
          if (r.verdict == Verdict::CONJUGATE) return record(r, *h);
        }
      }
    }
  } else {
    BSElem a = eval_word(U), b = eval_word(V);
    if (auto g = conj_bs12(a, b)) return finish(elem_word(*g), Method::BS12);
    // Conjugate into <s0> or <s1> in BS(1,2), then cross with t rings.
    auto into_s0 = [](const BSElem& x) -> std::optional<std::pair<BSElem, BigInt>> {
      if (x.m != 0 || x.r.is_zero()) return std::nullopt;
      BigInt q = x.r.odd_part();
      if (auto g = conj_bs12(x, BSElem{Dyadic(q), 0})) return std::make_pair(*g, q);
      return std::nullopt;
    };
    auto into_s1 = [](const BSElem& x) -> std::optional<std::pair<BSElem, BigInt>> {
      if (x.m == 0) return std::nullopt;
      if (auto g = conj_bs12(x, BSElem{Dyadic(), x.m})) return std::make_pair(*g, x.m);
      return std::nullopt;
    };
    auto odd = [](const BigInt& x) {
      BigInt o;
      mpz_tdiv_q_2exp(o.get_mpz_t(), x.get_mpz_t(), mpz_scan1(x.get_mpz_t(), 0));
      return o;
    };
    auto a0 = into_s0(a), a1 = into_s1(a), b0 = into_s0(b), b1 = into_s1(b);
    // g0 U g0^-1 = s0^x, scale to s0^y inside BS(1,2), then t s0^y t^-1 = s1^y.
    if (a0 && b1 && odd(b1->second) == a0->second) {
      BigInt j = static_cast<unsigned long>(mpz_scan1(b1->second.get_mpz_t(), 0));
      // s1^j scales s0^odd up to s0^{odd*2^j}
      PowerWord gp = elem_word(b1->first).inverse() * PowerWord(kT, 1) * PowerWord(kS1, j) *
                     elem_word(a0->first);
      return finish(gp, Method::T_RING);
    }
    if (a1 && b0 && odd(a1->second) == b0->second) {
      BigInt j = static_cast<unsigned long>(mpz_scan1(a1->second.get_mpz_t(), 0));
      // t^-1 s1^x t = s0^x, then scale s0^x down to its odd part s0^{x/2^j}.
      PowerWord gp = elem_word(b0->first).inverse() * elem_word(BSElem{Dyadic(), -j}) * PowerWord(kT, -1) *
                     elem_word(a1->first);
      return finish(gp, Method::T_RING);
    }
    if (a1 && b1 && odd(a1->second) == odd(b1->second)) {
      BigInt ja = static_cast<unsigned long>(mpz_scan1(a1->second.get_mpz_t(), 0));
      BigInt jb = static_cast<unsigned long>(mpz_scan1(b1->second.get_mpz_t(), 0));
      PowerWord gp = elem_word(b1->first).inverse() * PowerWord(kT, 1) * elem_word(BSElem{Dyadic(), jb - ja}) *
                     PowerWord(kT, -1) * elem_word(a1->first);
      return finish(gp, Method::T_RING);
    }
  }

  try {
    SearchResult sr = bounded_conjugator_search(U.expand(), V.expand(), Group::gersten(), budget);
    if (sr.status == SearchStatus::Found) return finish(PowerWord(sr.word), Method::BOUNDED_SEARCH);
    return verdict_only(Verdict::UNDECIDED_WITHIN_BUDGET, sr.status == SearchStatus::BudgetExceeded
                                                              ? "search node cap exceeded"
                                                              : "no conjugator within the search depth");
  } catch (const TooLarge&) {
    return verdict_only(Verdict::UNDECIDED_WITHIN_BUDGET, "reduced words too long for bounded search");
  }
}

PowerWord bg_power_word(const PowerSum& k) {
  PowerWord best;
  bool have = false;
  auto consider = [&](PowerWord w) {
    if (!have || w.letter_count() < best.letter_count()) {
      best = std::move(w);
      have = true;
    }
  };
  try {
    consider(PowerWord(kS0, k.to_integer()));
  } catch (const TooLarge&) {
  }
  for (int m = 1; m <= 6; ++m) {
    try {
      PowerWord s = synth_power(0, k, Tower(m));
      PowerWord out;
      for (const Syllable& y : s.syllables()) {
        if (y.gen.index <= 1) {
          out.append(y.gen, y.exp);
        } else {
          out.append(kT, y.gen.index - 1);
          out.append(kS1, y.exp);
          out.append(kT, 1 - y.gen.index);
        }
      }
      consider(std::move(out));
    } catch (const TooLarge&) {
    }
  }
  if (!have) throw TooLarge("no materializable word for s0^k");
  return best;
}

std::pair<BigInt, BigInt> length_bounds_bg(const PowerSum& k) {
  return {length_lower_bound(k), bg_power_word(k).letter_count()};
}

}  // namespace bgconj

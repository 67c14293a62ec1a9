// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "bgconj/bs12.hpp"
#include "bgconj/errors.hpp"
#include "bgconj/gersten.hpp"
#include "bgconj/gm.hpp"
#include "bgconj/harness.hpp"
#include "bgconj/oracle.hpp"
#include "bgconj/powersum.hpp"
#include "gen.hpp"

using namespace bgconj;

namespace {

// Pinned thresholds.
constexpr double kWitnessSeconds = 5.0;    // AC1 per case
constexpr long kBruteRange = 4096;         // AC2
constexpr long kThirdCap = 1L << 20;       // AC3: E(m,n) <= 2^20
constexpr int kPowerWordLength = 10;       // AC4
constexpr int kBsWordLength = 6;           // AC5
constexpr int kBsConjDepth = 8;            // AC5
constexpr int kDmwPairs = 100;             // AC6
constexpr int kDmwWordLength = 8;          // AC6
constexpr int kDmwMaxShift = 16;           // AC6
constexpr int kWpSamples = 10000;          // AC8, per group and kind
constexpr int kWpMaxLength = 24;           // AC8
constexpr long kConfirmNodeCap = 20000;    // AC8
constexpr int kTableMaxM = 3, kTableMaxN = 3;  // AC9
constexpr int kTableOracleDepth = 6;       // AC9

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Outcome ac1() {
  Outcome o;
  std::ostringstream d;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}}) {
    auto t0 = std::chrono::steady_clock::now();
    WitnessReport r = make_witness_gm(m, n);
    bool ok = r.verified && is_identity(r.gamma * r.u * r.gamma.inverse() * r.v.inverse(), Tower(m));
    double s = seconds_since(t0);
    if (!ok || s >= kWitnessSeconds) o.pass = false;
    d << "(" << m << "," << n << "):" << (ok ? "ok" : "bad") << "/" << s << "s ";
  }
  o.detail = d.str();
  return o;
}

Outcome ac2() {
  Outcome o;
  long bad = 0;
  for (long k = -kBruteRange; k <= kBruteRange; ++k)
    if (min_term_count(PowerSum::from_integer(k)) != brute_min_signed_terms(k, 13)) ++bad;
  o.pass = bad == 0;
  o.detail = std::to_string(2 * kBruteRange + 1) + " values, " + std::to_string(bad) + " mismatches";
  return o;
}

Outcome ac3() {
  Outcome o;
  std::ostringstream d;
  int cases = 0;
  for (int m = 2; m <= 3; ++m)
    for (int n = 1; n <= 4; ++n) {
      BigInt E;
      try {
        E = tower_value(m, n);
      } catch (const TooLarge&) {
        continue;
      }
      if (E > kThirdCap) continue;
      ++cases;
      PowerSum third = third_of_tower_minus_one(m, n);
      BigInt h = tower_value(m - 1, n);
      bool ok = 3 * third.to_integer() + 1 == E && min_term_count(third) == h / 2 &&
                min_term_count(PowerSum::from_integer(third.to_integer())) == h / 2;
      if (!ok) o.pass = false;
      d << "(" << m << "," << n << "):" << (ok ? "ok " : "bad ");
    }
  o.detail = std::to_string(cases) + " cases " + d.str();
  return o;
}

// All words (not only reduced) over {s_i^{+-1}, s_{i+1}^{+-1}} up to the pinned
// length, evaluated incrementally in BS(1,2) = <s_i, s_{i+1}>.
Outcome ac4() {
  Outcome o;
  long words = 0, powers = 0, violations = 0;
  const BSElem step[4] = {BSElem{Dyadic(1), 0}, BSElem{Dyadic(-1), 0}, BSElem{Dyadic(), 1}, BSElem{Dyadic(), -1}};
  std::function<void(const BSElem&, int, int)> dfs = [&](const BSElem& x, int n, int p) {
    ++words;
    if (x.m == 0 && x.r.is_integer()) {
      ++powers;
      BigInt bound = BigInt(n - p) * pow2(p);
      if (abs(x.r.num()) > bound) ++violations;
    }
    if (n == kPowerWordLength) return;
    for (int c = 0; c < 4; ++c) dfs(mul(x, step[c]), n + 1, p + (c >= 2));
  };
  dfs(BSElem{}, 0, 0);

  // The gm engine in G_2 at i = 1 agrees with the affine model on reduced words up to length 7.
  long cross = 0, disagree = 0;
  auto alpha = testgen::letters(1, 2, false);
  std::function<void(Word&)> walk = [&](Word& w) {
    if (w.size() > 0) {
      ++cross;
      PowerWord pw(w);
      auto l = eval_power(pw, 1, Tower(2));
      Word lowered;
      for (std::size_t k = 0; k < w.size(); ++k) lowered.push_back({Gen::s(w[k].gen.index - 1), w[k].sign});
      BSElem x = eval_word(lowered);
      bool is_pow = x.m == 0 && x.r.is_integer();
      if (bool(l) != is_pow || (l && l->to_integer() != x.r.num())) ++disagree;
    }
    if (w.size() == 7) return;
    for (const Letter& a : alpha) {
      if (w.size() && w[w.size() - 1] == a.inverse()) continue;
      Word next = w;
      next.push_back(a);
      walk(next);
    }
  };
  Word start;
  walk(start);
  o.pass = violations == 0 && disagree == 0;
  o.detail = std::to_string(words) + " words, " + std::to_string(powers) + " powers, " +
             std::to_string(violations) + " violations; gm cross-check " + std::to_string(cross) + " words, " +
             std::to_string(disagree) + " disagreements";
  return o;
}

Outcome ac5() {
  Outcome o;
  // all reduced words of length <= 6 over s0, s1, grouped by element
  std::map<AffineBS, Word> reps;
  long word_count = 0;
  auto alpha = testgen::letters(0, 1, false);
  std::function<void(Word&)> walk = [&](Word& w) {
    ++word_count;
    reps.emplace(affine_eval(w), w);
    if (static_cast<int>(w.size()) == kBsWordLength) return;
    for (const Letter& a : alpha) {
      if (w.size() && w[w.size() - 1] == a.inverse()) continue;
      w.push_back(a);
      walk(w);
      Word shorter;
      for (std::size_t k = 0; k + 1 < w.size(); ++k) shorter.push_back(w[k]);
      w = shorter;
    }
  };
  Word start;
  walk(start);

  std::vector<std::pair<AffineBS, Word>> elems(reps.begin(), reps.end());
  std::vector<std::vector<AffineBS>> balls;
  balls.reserve(elems.size());
  for (const auto& [e, w] : elems) balls.push_back(conjugacy_ball_bs12(w, kBsConjDepth));

  long pairs = 0, disagree = 0, unverified = 0, positives = 0;
  long combined_disagree = 0, found_at_9 = 0;
  std::string first_bad;
  for (std::size_t a = 0; a < elems.size(); ++a) {
    BSElem ua = eval_word(elems[a].second);
    for (std::size_t b = 0; b < elems.size(); ++b) {
      ++pairs;
      bool oracle = std::binary_search(balls[a].begin(), balls[a].end(), elems[b].first);
      BSElem vb = eval_word(elems[b].second);
      auto g = conj_bs12(ua, vb);
      if (g) {
        ++positives;
        if (!(conjugate_by(*g, ua) == vb) || !(eval_word(normal_form(*g) * PowerWord(elems[a].second) *
                                                         normal_form(*g).inverse()) == vb))
          ++unverified;
      }
      if (bool(g) != oracle) {
        if (elems[a].second.size() + elems[b].second.size() <= static_cast<std::size_t>(kBsWordLength))
          ++combined_disagree;
        // how far past the pinned depth the conjugator actually is
        auto deeper = conjugacy_ball_bs12(elems[a].second, kBsConjDepth + 1);
        if (std::binary_search(deeper.begin(), deeper.end(), elems[b].first)) ++found_at_9;
        if (disagree == 0)
          first_bad = elems[a].second.str() + " vs " + elems[b].second.str() + " (conj_bs12 " +
                      (g ? "yes" : "no") + ", oracle " + (oracle ? "yes" : "no") + ")";
        ++disagree;
      }
    }
  }

  // Spot-check the ball oracle against the literal shortlex search.
  long spot_bad = 0;
  SearchBudget b;
  b.max_conjugator_length = kBsConjDepth;
  b.node_cap = 50000000;
  for (int k = 0; k < 60; ++k) {
    std::size_t a = testgen::uniform(0, elems.size() - 1), c = testgen::uniform(0, elems.size() - 1);
    if (k % 2) {
      // force a conjugate pair from the ball
      const auto& ball = balls[a];
      auto it = std::find_if(elems.begin(), elems.end(), [&](const auto& e) {
        return std::binary_search(ball.begin(), ball.end(), e.first) && !(e.first == elems[a].first);
      });
      if (it != elems.end()) c = it - elems.begin();
    }
    bool in_ball = std::binary_search(balls[a].begin(), balls[a].end(), elems[c].first);
    SearchResult sr = bounded_conjugator_search(elems[a].second, elems[c].second, Group::tower(1), b);
    if ((sr.status == SearchStatus::Found) != in_ball || sr.status == SearchStatus::BudgetExceeded) ++spot_bad;
  }

  o.pass = disagree == 0 && unverified == 0 && spot_bad == 0;
  o.detail = std::to_string(word_count) + " words, " + std::to_string(elems.size()) + " elements, " +
             std::to_string(pairs) + " element pairs, " + std::to_string(positives) + " conjugate, " +
             std::to_string(disagree) + " disagreements, " + std::to_string(unverified) + " unverified, " +
             std::to_string(spot_bad) + " search spot-check mismatches; " + std::to_string(found_at_9) +
             " disagreeing pairs have a conjugator at depth " + std::to_string(kBsConjDepth + 1) + "; " +
             std::to_string(combined_disagree) + " disagreements with |u|+|v| <= " +
             std::to_string(kBsWordLength) +
             (first_bad.empty() ? "" : "; first: " + first_bad);
  return o;
}

// Random word over s0, s1, t that starts with t^-1, contains t, and is
// cyclically Britton-reduced as written.
PowerWord random_dmw_word() {
  auto alpha = testgen::letters(0, 1, true);
  while (true) {
    Word w;
    w.push_back({Gen::t(), -1});
    Word rest = testgen::random_reduced(alpha, testgen::uniform(1, kDmwWordLength - 1));
    if (rest[0] == Letter{Gen::t(), 1}) continue;
    for (std::size_t k = 0; k < rest.size(); ++k) w.push_back(rest[k]);
    PowerWord p(w);
    if (p.letter_count() != BigInt(w.size()) || !(p.expand() == w)) continue;
    if (p.exponent_sum(Gen::t()) != 0 && testgen::uniform(0, 3)) continue;  // favor zero t-sum
    if (has_cyclic_t_pinch(p)) continue;
    // cyclically reduced: first and last letters do not cancel
    if (w[w.size() - 1] == w[0].inverse()) continue;
    return p;
  }
}

Outcome ac6() {
  Outcome o;
  int ok = 0, not_s0 = 0, too_long = 0, failed = 0;
  std::string first_bad;
  for (int trial = 0; trial < kDmwPairs; ++trial) {
    PowerWord w = random_dmw_word();
    long k = testgen::uniform(-kDmwMaxShift, kDmwMaxShift);
    PowerWord c(Gen::s(0), k);
    PowerWord v = c * w * c.inverse();
    ConjResult r = conj_bg(w, v);
    auto note_bad = [&](const std::string& why) {
      if (first_bad.empty()) first_bad = w.str() + " k=" + std::to_string(k) + ": " + why;
    };
    if (r.verdict != Verdict::CONJUGATE || !r.cert || !r.cert->verified ||
        !word_problem_bg(r.cert->gamma * w * r.cert->gamma.inverse() * v.inverse())) {
      ++failed;
      note_bad(std::string(verdict_name(r.verdict)) + " " + r.note);
      continue;
    }
    const PowerWord& g = r.cert->gamma;
    bool pure = g.empty() || (g.syllable_count() == 1 && g[0].gen == Gen::s(0));
    if (!pure || !r.dmw_k) {
      ++not_s0;
      note_bad("conjugator " + g.str() + " is not a power of s0");
      continue;
    }
    BigInt kp = g.empty() ? BigInt(0) : g[0].exp;
    if (abs(kp) > abs(*r.dmw_m) + abs(*r.dmw_q)) {
      ++too_long;
      note_bad("|k'| = " + BigInt(abs(kp)).get_str() + " exceeds |m|+|q|");
      continue;
    }
    ++ok;
  }
  o.pass = ok == kDmwPairs;
  o.detail = std::to_string(ok) + "/" + std::to_string(kDmwPairs) + " ok, " + std::to_string(failed) +
             " undecided or unverified, " + std::to_string(not_s0) + " non-s0 conjugators, " +
             std::to_string(too_long) + " over the |m|+|q| bound" +
             (first_bad.empty() ? "" : "; first: " + first_bad);
  return o;
}

Outcome ac7() {
  Outcome o;
  long checked = 0, violations = 0, roundtrips = 0, rt_bad = 0, skipped = 0;
  std::string first_bad;
  for (int m = 1; m <= 6; ++m)
    for (int i = 0; i < m; ++i)
      for (int n = 1; n <= 8; ++n) {
        PowerSum k;
        try {
          k = tower(m - i, n);
        } catch (const TooLarge&) {
          ++skipped;
          continue;
        }
        PowerWord w;
        try {
          w = synth_power(i, k, Tower(m));
        } catch (const TooLarge&) {
          ++skipped;
          continue;
        }
        ++checked;
        BigInt bound = pow2(m - i) * (n + m - i);
        if (w.letter_count() > bound) {
          ++violations;
          if (first_bad.empty())
            first_bad = "m=" + std::to_string(m) + " i=" + std::to_string(i) + " n=" + std::to_string(n) +
                        " length " + w.letter_count().get_str() + " > " + bound.get_str();
        }
        BigInt E;
        try {
          E = tower_value(m - i, n);
        } catch (const TooLarge&) {
          continue;
        }
        try {
          auto l = eval_power(w, i, Tower(m));
          ++roundtrips;
          if (!l || l->to_integer() != E) ++rt_bad;
        } catch (const TooLarge&) {
        }
      }
  o.pass = violations == 0 && rt_bad == 0;
  o.detail = std::to_string(checked) + " length checks, " + std::to_string(violations) + " violations, " +
             std::to_string(roundtrips) + " round trips, " + std::to_string(rt_bad) + " round-trip failures, " +
             std::to_string(skipped) + " beyond the guard" + (first_bad.empty() ? "" : "; first: " + first_bad);
  return o;
}

Word conjugated_relator_product(const Group& g) {
  auto rels = relators(g);
  auto alpha = alphabet(g);
  while (true) {
    Word w;
    for (long f = testgen::uniform(1, 3); f > 0; --f) {
      Word r = rels[testgen::uniform(0, rels.size() - 1)];
      if (testgen::uniform(0, 1)) r = r.inverse();
      Word c = testgen::random_reduced(alpha, testgen::uniform(0, 3));
      w = w * c * r * c.inverse();
    }
    w = free_reduce(w);
    if (w.size() > 0 && static_cast<int>(w.size()) <= kWpMaxLength) return w;
  }
}

Outcome ac8() {
  Outcome o;
  std::ostringstream d;
  // G_2
  {
    Group g = Group::tower(2);
    Tower t(2);
    long wp_bad = 0, unconfirmed = 0;
    for (int k = 0; k < kWpSamples; ++k) {
      Word w = conjugated_relator_product(g);
      if (!is_identity(PowerWord(w), t)) ++wp_bad;
      if (!relator_confirm_trivial(w, g, kConfirmNodeCap)) ++unconfirmed;
    }
    long ab_bad = 0;
    auto alpha = alphabet(g);
    for (int k = 0; k < kWpSamples;) {
      Word w = testgen::random_word(alpha, testgen::uniform(1, kWpMaxLength));
      PowerWord p(w);
      if (p.exponent_sum(Gen::s(2)) == 0) continue;
      ++k;
      if (is_identity(p, t)) ++ab_bad;
    }
    if (wp_bad || unconfirmed || ab_bad) o.pass = false;
    d << "G2: trivial " << wp_bad << " rejected, " << unconfirmed << " unconfirmed; nontrivial " << ab_bad
      << " accepted. ";
  }
  // G, through the embedding of zero-t-sum words into G_{2M}
  {
    Group g = Group::gersten();
    long wp_bad = 0, unconfirmed = 0, embed_bad = 0;
    for (int k = 0; k < kWpSamples; ++k) {
      Word w = conjugated_relator_product(g);
      PowerWord p(w);
      if (!word_problem_bg(p)) ++wp_bad;
      ShiftedWord s = shift_to_subgroup(p);
      auto [e, tw] = embed_in_G2M(s.word, std::max(1, s.M));
      if (!is_identity(e, tw)) ++embed_bad;
      if (!relator_confirm_trivial(w, g, kConfirmNodeCap)) ++unconfirmed;
    }
    long ab_bad = 0;
    auto alpha = alphabet(g);
    for (int k = 0; k < kWpSamples;) {
      Word w = testgen::random_word(alpha, testgen::uniform(1, kWpMaxLength));
      if (t_exponent_sum(w) != 0) continue;
      PowerWord p(w);
      ShiftedWord s = shift_to_subgroup(p);
      int M = std::max(1, s.M);
      auto [e, tw] = embed_in_G2M(s.word, M);
      if (e.exponent_sum(Gen::s(2 * M)) == 0) continue;
      ++k;
      if (word_problem_bg(p) || is_identity(e, tw)) ++ab_bad;
    }
    if (wp_bad || unconfirmed || ab_bad || embed_bad) o.pass = false;
    d << "G: trivial " << wp_bad << " rejected by word_problem_bg, " << embed_bad << " rejected in G_2M, "
      << unconfirmed << " unconfirmed; nontrivial " << ab_bad << " accepted.";
  }
  o.detail = d.str();
  return o;
}

Outcome ac9() {
  Outcome o;
  TableOptions opt;
  opt.oracle = true;
  opt.oracle_depth = kTableOracleDepth;
  auto table = cl_table(kTableMaxM, kTableMaxN, opt);
  long completed = 0, violations = 0, below_word_bound = 0;
  std::ostringstream d;
  for (const auto& r : table) {
    if (!r.oracle_cl) continue;
    ++completed;
    if (BigInt(*r.oracle_cl) < r.naf_lower) ++violations;
    if (BigInt(*r.oracle_cl) < r.naf_word_lower) ++below_word_bound;
    d << " (" << r.m << "," << r.n << "):cl=" << *r.oracle_cl << ">=" << r.naf_lower.get_str();
  }
  o.pass = completed > 0 && violations == 0;
  o.detail = std::to_string(table.size()) + " cells, " + std::to_string(completed) + " with oracle CL, " +
             std::to_string(violations) + " violations; cells below ceil((p-1)/2) itself: " +
             std::to_string(below_word_bound) + ";" + d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << name << " " << (o.pass ? "PASS" : "FAIL") << " [" << seconds_since(t0) << "s] " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

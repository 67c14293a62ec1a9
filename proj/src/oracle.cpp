#include "bgconj/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>
#include <string>
#include <unordered_set>

#include "bgconj/errors.hpp"
#include "bgconj/gersten.hpp"
#include "bgconj/gm.hpp"

namespace bgconj {

std::vector<Letter> alphabet(const Group& g) {
  std::vector<Letter> a;
  if (g.kind == Group::Kind::Tower) {
    for (int i = 0; i <= g.m; ++i) {
      a.push_back({Gen::s(i), 1});
      a.push_back({Gen::s(i), -1});
    }
  } else {
    for (int i = 0; i <= 1; ++i) {
      a.push_back({Gen::s(i), 1});
      a.push_back({Gen::s(i), -1});
    }
    a.push_back({Gen::t(), 1});
    a.push_back({Gen::t(), -1});
  }
  return a;
}

namespace {

Word relator(Gen hi, Gen lo, int power) {
  // hi lo hi^-1 lo^-power
  Word w({{hi, 1}, {lo, 1}, {hi, -1}});
  for (int i = 0; i < power; ++i) w.push_back({lo, -1});
  return w;
}

}  // namespace

std::vector<Word> relators(const Group& g) {
  std::vector<Word> r;
  if (g.kind == Group::Kind::Tower) {
    for (int i = 1; i <= g.m; ++i) r.push_back(relator(Gen::s(i), Gen::s(i - 1), 2));
  } else {
    r.push_back(relator(Gen::s(1), Gen::s(0), 2));
    // t s0 t^-1 s1^-1
    r.push_back(Word({{Gen::t(), 1}, {Gen::s(0), 1}, {Gen::t(), -1}, {Gen::s(1), -1}}));
  }
  return r;
}

// ---- BS(1,2) affine model ----------------------------------------------
//
// An element acts on Q by x -> 2^m x + r. We keep R = r * 2^64 in 128 bits
// and refuse anything that would lose bits or overflow.

namespace {

constexpr int kFrac = 64;
constexpr __int128 kRLimit = static_cast<__int128>(1) << 124;

__int128 scale_pow2(__int128 x, std::int64_t e) {
  if (x == 0) return 0;
  if (e >= 0) {
    if (e > 60) throw TooLarge("affine model exponent out of range");
    __int128 y = x * (static_cast<__int128>(1) << e);
    if (y / (static_cast<__int128>(1) << e) != x || y > kRLimit || y < -kRLimit)
      throw TooLarge("affine model overflow");
    return y;
  }
  if (-e > 120) throw TooLarge("affine model exponent out of range");
  __int128 d = static_cast<__int128>(1) << (-e);
  if (x % d != 0) throw TooLarge("affine model lost precision");
  return x / d;
}

AffineBS amul(const AffineBS& a, const AffineBS& b) {
  __int128 r = a.r + scale_pow2(b.r, a.m);
  if (r > kRLimit || r < -kRLimit) throw TooLarge("affine model overflow");
  return {r, a.m + b.m};
}

AffineBS ainv(const AffineBS& a) { return {-scale_pow2(a.r, -a.m), -a.m}; }

AffineBS agen(const Letter& l) {
  if (l.gen.is_t || l.gen.index > 1 || l.gen.index < 0) throw DomainError("letter outside BS(1,2)");
  if (l.gen.index == 0) return {static_cast<__int128>(l.sign) << kFrac, 0};
  return {0, l.sign};
}

}  // namespace

AffineBS affine_eval(const Word& w) {
  AffineBS acc;
  for (const Letter& l : w.letters()) acc = amul(acc, agen(l));
  return acc;
}

bool oracle_is_identity(const Word& w, const Group& g) {
  if (g.kind == Group::Kind::Gersten) return word_problem_bg(PowerWord(w));
  if (g.m == 0) {
    long s = 0;
    for (const Letter& l : w.letters()) s += l.sign;
    return s == 0;
  }
  if (g.m == 1) {
    try {
      AffineBS a = affine_eval(w);
      return a.r == 0 && a.m == 0;
    } catch (const TooLarge&) {
    }
  }
  return is_identity(PowerWord(w), Tower(g.m));
}

// ---- shortlex enumeration ----------------------------------------------

namespace {

// Visits freely reduced words over `alpha` of exactly length `len` in
// lexicographic order; `visit` returns true to stop.
template <class Visit>
bool enumerate_length(const std::vector<Letter>& alpha, int len, std::vector<int>& cur, Visit& visit) {
  if (static_cast<int>(cur.size()) == len) return visit(cur);
  for (int c = 0; c < static_cast<int>(alpha.size()); ++c) {
    if (!cur.empty() && (cur.back() ^ 1) == c) continue;  // alpha pairs x, x^-1 at 2i, 2i+1
    cur.push_back(c);
    bool stop = enumerate_length(alpha, len, cur, visit);
    cur.pop_back();
    if (stop) return true;
  }
  return false;
}

Word to_word(const std::vector<Letter>& alpha, const std::vector<int>& codes) {
  Word w;
  for (int c : codes) w.push_back(alpha[c]);
  return w;
}

}  // namespace

SearchResult bounded_conjugator_search(const Word& u, const Word& v, const Group& g, const SearchBudget& b) {
  const auto alpha = alphabet(g);
  SearchResult res;
  const bool affine = g.kind == Group::Kind::Tower && g.m == 1;
  AffineBS au, av;
  bool use_affine = affine;
  if (use_affine) {
    try {
      au = affine_eval(u);
      av = affine_eval(v);
    } catch (const TooLarge&) {
      use_affine = false;
    }
  }
  const Word vinv = v.inverse();
  for (int len = 0; len <= b.max_conjugator_length; ++len) {
    std::vector<int> cur;
    bool over = false;
    auto visit = [&](const std::vector<int>& codes) {
      if (++res.nodes > b.node_cap) {
        over = true;
        return true;
      }
      Word gam = to_word(alpha, codes);
      bool hit;
      if (use_affine) {
        try {
          AffineBS ag = affine_eval(gam);
          hit = amul(amul(ag, au), ainv(ag)) == av;
        } catch (const TooLarge&) {
          hit = oracle_is_identity(gam * u * gam.inverse() * vinv, g);
        }
      } else {
        hit = oracle_is_identity(gam * u * gam.inverse() * vinv, g);
      }
      if (hit) {
        res.word = gam;
        return true;
      }
      return false;
    };
    if (enumerate_length(alpha, len, cur, visit)) {
      res.status = over ? SearchStatus::BudgetExceeded : SearchStatus::Found;
      return res;
    }
  }
  res.status = SearchStatus::NotFound;
  return res;
}

std::optional<int> min_word_length(const Word& w, const Group& g, const SearchBudget& b) {
  const auto alpha = alphabet(g);
  const Word winv = w.inverse();
  long nodes = 0;
  for (int len = 0; len <= b.max_conjugator_length; ++len) {
    std::vector<int> cur;
    bool over = false;
    auto visit = [&](const std::vector<int>& codes) {
      if (++nodes > b.node_cap) {
        over = true;
        return true;
      }
      return oracle_is_identity(to_word(alpha, codes) * winv, g);
    };
    if (enumerate_length(alpha, len, cur, visit)) {
      if (over) throw TooLarge("min_word_length: node cap exceeded");
      return len;
    }
  }
  return std::nullopt;
}

std::vector<AffineBS> conjugacy_ball_bs12(const Word& u, int depth) {
  const auto alpha = alphabet(Group::tower(1));
  const AffineBS au = affine_eval(u);
  std::vector<AffineBS> out;
  // DFS carrying the affine value of the prefix; gamma u gamma^-1 for every reduced gamma.
  std::vector<std::pair<AffineBS, int>> stack{{AffineBS{}, -1}};
  std::vector<int> lens{0};
  while (!stack.empty()) {
    auto [g, last] = stack.back();
    int len = lens.back();
    stack.pop_back();
    lens.pop_back();
    out.push_back(amul(amul(g, au), ainv(g)));
    if (len == depth) continue;
    for (int c = 0; c < 4; ++c) {
      if (last >= 0 && (last ^ 1) == c) continue;
      stack.push_back({amul(g, agen(alpha[c])), c});
      lens.push_back(len + 1);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- signed-digit minimization -----------------------------------------

namespace {

// Distances from 0 over Z with steps +-2^j, j <= max_exp + 2, restricted to
// |x| <= 2^(max_exp+3).
std::vector<int> signed_term_distances(int max_exp) {
  const long half = 1L << (max_exp + 3);
  const long size = 2 * half + 1;
  std::vector<int> dist(static_cast<std::size_t>(size), -1);
  std::vector<long> frontier{0}, next;
  dist[static_cast<std::size_t>(half)] = 0;
  for (int d = 1; !frontier.empty(); ++d) {
    next.clear();
    for (long x : frontier) {
      for (int j = 0; j <= max_exp + 2; ++j) {
        for (long step : {1L << j, -(1L << j)}) {
          long y = x + step;
          if (y < -half || y > half) continue;
          auto& slot = dist[static_cast<std::size_t>(y + half)];
          if (slot < 0) {
            slot = d;
            next.push_back(y);
          }
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

}  // namespace

int brute_min_signed_terms(const BigInt& k, int max_exp) {
  if (max_exp < 0 || max_exp > 20) throw DomainError("brute_min_signed_terms: max_exp must be in [0, 20]");
  BigInt bound = 1;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(max_exp));
  if (abs(k) >= bound) throw DomainError("brute_min_signed_terms: |k| must be below 2^max_exp");
  static std::mutex mu;
  static std::map<int, std::vector<int>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(max_exp);
  if (it == cache.end()) it = cache.emplace(max_exp, signed_term_distances(max_exp)).first;
  const long half = 1L << (max_exp + 3);
  return it->second[static_cast<std::size_t>(k.get_si() + half)];
}

// ---- relator confirmation ----------------------------------------------

namespace {

using Code = std::string;  // letters as alphabet indices; inverse is c ^ 1

Code free_reduce_codes(const Code& w) {
  Code out;
  for (char c : w) {
    if (!out.empty() && (out.back() ^ 1) == c)
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

Code inverse_codes(const Code& w) {
  Code out(w.rbegin(), w.rend());
  for (char& c : out) c ^= 1;
  return out;
}

}  // namespace

bool relator_confirm_trivial(const Word& w, const Group& g, long node_cap) {
  const auto alpha = alphabet(g);
  auto code_of = [&](const Letter& l) {
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] == l) return static_cast<char>(i);
    throw DomainError("letter " + l.gen.name() + " outside the group alphabet");
  };
  // All cyclic rotations of each relator and its inverse.
  std::vector<Code> rels;
  for (const Word& r : relators(g)) {
    Code c;
    for (const Letter& l : r.letters()) c.push_back(code_of(l));
    for (const Code& base : {c, inverse_codes(c)})
      for (std::size_t s = 0; s < base.size(); ++s) rels.push_back(base.substr(s) + base.substr(0, s));
  }
  std::sort(rels.begin(), rels.end());
  rels.erase(std::unique(rels.begin(), rels.end()), rels.end());

  Code start;
  for (const Letter& l : w.letters()) start.push_back(code_of(l));
  start = free_reduce_codes(start);
  using Item = std::pair<std::size_t, long>;  // (length, order)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  std::vector<Code> store;
  std::unordered_set<Code> seen;
  auto push = [&](Code c) {
    if (!seen.insert(c).second) return;
    store.push_back(std::move(c));
    pq.push({store.back().size(), static_cast<long>(store.size() - 1)});
  };
  push(start);
  long expanded = 0;
  while (!pq.empty()) {
    auto [len, id] = pq.top();
    pq.pop();
    const Code cur = store[static_cast<std::size_t>(id)];
    if (cur.empty()) return true;
    if (++expanded > node_cap) return false;
    // Replace a prefix R[0..j) of a relator rotation by R[j..)^-1.
    for (const Code& r : rels) {
      const std::size_t L = r.size();
      for (std::size_t pos = 0; pos < cur.size(); ++pos) {
        std::size_t j = 0;
        while (j < L && pos + j < cur.size() && cur[pos + j] == r[j]) ++j;
        for (std::size_t jj = std::max<std::size_t>(1, (L + 1) / 2); jj <= j; ++jj) {
          Code next = cur.substr(0, pos) + inverse_codes(r.substr(jj)) + cur.substr(pos + jj);
          push(free_reduce_codes(next));
        }
      }
      // Insertions of a whole relator at every gap let the search escape
      // local minima.
      if (cur.size() + L <= start.size() + 8)
        for (std::size_t pos = 0; pos <= cur.size(); ++pos)
          push(free_reduce_codes(cur.substr(0, pos) + r + cur.substr(pos)));
    }
  }
  return false;
}

}  // namespace bgconj

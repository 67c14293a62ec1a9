#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bgconj/certificate.hpp"
#include "bgconj/words.hpp"

namespace bgconj {

/// Which group a brute-force search runs in: G_m, or the Baumslag-Gersten group.
struct Group {
  enum class Kind { Tower, Gersten };
  Kind kind = Kind::Tower;
  int m = 0;

  static Group tower(int m) { return {Kind::Tower, m}; }
  static Group gersten() { return {Kind::Gersten, 0}; }
};

/// Letters in shortlex order: s0, s0^-1, s1, s1^-1, ..., t, t^-1.
std::vector<Letter> alphabet(const Group& g);
/// Defining relators (cyclic words).
std::vector<Word> relators(const Group& g);

/// Word problem used by the brute-force searches. BS(1,2) = G_1 words are
/// evaluated in a separate fixed-point affine model; everything else goes
/// through the reduction engines.
bool oracle_is_identity(const Word& w, const Group& g);

enum class SearchStatus { Found, NotFound, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::NotFound;
  Word word;
  long nodes = 0;
};

/// First gamma in shortlex order with gamma u gamma^-1 v^-1 trivial.
SearchResult bounded_conjugator_search(const Word& u, const Word& v, const Group& g,
                                       const SearchBudget& b = {});

/// Exact word length of g when it is at most b.max_conjugator_length.
std::optional<int> min_word_length(const Word& w, const Group& g, const SearchBudget& b = {});

/// Exact minimum number of +-2^j terms summing to k, |k| < 2^max_exp <= 2^20.
int brute_min_signed_terms(const BigInt& k, int max_exp);

/// Best-first search by relator insertion and deletion (plus free reduction)
/// down to the empty word. True only when a derivation is found within
/// node_cap; false means "not confirmed", not "nontrivial".
bool relator_confirm_trivial(const Word& w, const Group& g, long node_cap = 20000);

/// Affine model of BS(1,2): (r * 2^64 as a 128-bit integer, m). Only valid
/// for short words; throws TooLarge when the fixed-point range is exceeded.
struct AffineBS {
  __int128 r = 0;
  std::int64_t m = 0;
  bool operator==(const AffineBS& o) const { return r == o.r && m == o.m; }
  bool operator<(const AffineBS& o) const { return m != o.m ? m < o.m : r < o.r; }
};
AffineBS affine_eval(const Word& w);

/// Set of elements gamma u gamma^-1 over all reduced gamma with |gamma| <= depth,
/// in BS(1,2).
std::vector<AffineBS> conjugacy_ball_bs12(const Word& u, int depth);

}  // namespace bgconj

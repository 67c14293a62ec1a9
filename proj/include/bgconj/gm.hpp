#pragma once

#include <optional>
#include <utility>

#include "bgconj/certificate.hpp"
#include "bgconj/powersum.hpp"
#include "bgconj/words.hpp"

namespace bgconj {

/// G_m = <s0..sm | s_i s_{i-1} s_i^-1 = s_{i-1}^2>.
struct Tower {
  int m = 0;
  explicit Tower(int height);
};

/// Throws DomainError unless w only uses s0..sm.
void check_tower_word(const PowerWord& w, const Tower& g);

/// Reduces a word over s0..sk so that no i-pinch remains for any i <= k.
/// Exponents of lower generators grow by pinch collapse; they are exact
/// integers guarded by kBitGuard.
PowerWord reduce_level(const PowerWord& w, int k);

PowerWord britton_reduce(const PowerWord& w, const Tower& g);
bool is_identity(const PowerWord& w, const Tower& g);

/// If y (over s0..s_level) equals s_level^j, returns j.
std::optional<BigInt> power_of(const PowerWord& y, int level);

/// Independent scan for an i-pinch s_i^d w' s_i^-d anywhere in w.
bool has_pinch(const PowerWord& w);
/// Same, over all cyclic conjugates.
bool has_cyclic_pinch(const PowerWord& w);

/// s0 -> 1, s_i -> s_{i-1}.
PowerWord retract(const PowerWord& w);
/// s_i -> s_{i+1}.
PowerWord lift(const PowerWord& w);

/// l with w = s_i^l, if any.
std::optional<PowerSum> eval_power(const PowerWord& w, int i, const Tower& g);

struct RankResult {
  int rank = 0;
  PowerWord conjugator;
  PowerWord reduced;  // conjugator^-1 * w * conjugator
  bool verified = false;
};

RankResult rank(const PowerWord& w, const Tower& g);

/// A word over s_i..s_m equal to s_i^k, built from the NAF of k.
PowerWord synth_power(int i, const PowerSum& k, const Tower& g);
std::pair<BigInt, BigInt> length_bounds_power(int i, const PowerSum& k, const Tower& g);

ConjResult conj_gm(const PowerWord& u, const PowerWord& v, const Tower& g,
                   const SearchBudget& budget = {});

}  // namespace bgconj

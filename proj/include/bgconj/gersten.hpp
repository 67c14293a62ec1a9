#pragma once

#include <utility>

#include "bgconj/certificate.hpp"
#include "bgconj/gm.hpp"
#include "bgconj/powersum.hpp"
#include "bgconj/words.hpp"

namespace bgconj {

// The Baumslag-Gersten group G = <s0, s1, t | s1 s0 s1^-1 = s0^2, t s0 t^-1 = s1>,
// viewed as an HNN extension of BS(1,2) = <s0, s1> with stable letter t.

/// Words over {a, t}: a is s0 and t is t, so this only validates letters.
PowerWord from_original(const PowerWord& w);
/// s_i -> t^i a t^-i; the result uses only s0 (printed as a by original_str) and t.
PowerWord to_original(const PowerWord& w);
std::string original_str(const PowerWord& w);

/// Rewrites general-index letters s_j (j other than 0, 1) as t^j s0 t^-j.
PowerWord to_presentation(const PowerWord& w);

struct ShiftedWord {
  PowerWord word;  // letters s_j with j in [-M, M], no t
  int M = 0;       // largest |index| present
};
/// Deletes t letters, sending s_j to s_{j+sigma} with sigma the t-exponent
/// sum of the prefix. Needs zero t-exponent sum.
ShiftedWord shift_to_subgroup(const PowerWord& w);
/// Adds M to every index, landing in G_{2M}.
std::pair<PowerWord, Tower> embed_in_G2M(const PowerWord& w, int M);

/// Britton reduction over t; t-free segments are rewritten in BS(1,2) normal form.
PowerWord britton_reduce_bg(const PowerWord& w);
bool word_problem_bg(const PowerWord& w);

bool has_t_pinch(const PowerWord& w);
bool has_cyclic_t_pinch(const PowerWord& w);

struct CyclicBG {
  PowerWord reduced;
  PowerWord gamma;  // gamma^-1 w gamma = reduced
};
CyclicBG cyclic_britton_reduce(const PowerWord& w);

ConjResult conj_bg(const PowerWord& u, const PowerWord& v, const SearchBudget& budget = {});

/// A word over {s0, s1, t} equal to s0^k: the shortest of the literal power
/// and the tower syntheses for G_1..G_6 translated by s_j = t^(j-1) s1 t^(1-j).
PowerWord bg_power_word(const PowerSum& k);
std::pair<BigInt, BigInt> length_bounds_bg(const PowerSum& k);

}  // namespace bgconj

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace bgconj {

using BigInt = mpz_class;

/// Largest literal word the library will expand from compressed form.
inline constexpr std::size_t kLetterGuard = std::size_t{1} << 20;
/// Largest bit length of any materialized integer.
inline constexpr std::size_t kBitGuard = std::size_t{1} << 26;

/// A generator symbol: either s_i (any integer index) or the stable letter t.
struct Gen {
  bool is_t = false;
  int index = 0;

  static constexpr Gen s(int i) { return Gen{false, i}; }
  static constexpr Gen t() { return Gen{true, 0}; }

  // Shortlex generator order: s-letters by index, then t.
  constexpr auto operator<=>(const Gen& o) const {
    if (is_t != o.is_t) return is_t <=> o.is_t;
    if (is_t) return std::strong_ordering::equal;
    return index <=> o.index;
  }
  constexpr bool operator==(const Gen& o) const {
    return is_t == o.is_t && (is_t || index == o.index);
  }

  std::string name() const;
};

struct Letter {
  Gen gen;
  int sign = 1;  // +1 or -1

  Letter inverse() const { return {gen, -sign}; }
  bool operator==(const Letter&) const = default;
};

/// A literal word: a finite sequence of signed letters. No reduction is
/// ever performed implicitly.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  void push_back(Letter l) { letters_.push_back(l); }
  Word inverse() const;
  Word operator*(const Word& o) const;
  bool operator==(const Word&) const = default;

  /// Canonical run-coalesced text, e.g. "s0^3 t^-1".
  std::string str() const;

 private:
  std::vector<Letter> letters_;
};

/// Parses whitespace-separated tokens `s<int>`, `t`, `a` with optional
/// `^<int>` exponents. `a` is an alias for `s0`. Throws ParseError.
Word parse_word(std::string_view text);

Word free_reduce(const Word& w);

struct CyclicReduction {
  Word core;
  Word prefix;  // w = prefix * core * prefix^-1 as free words
};
CyclicReduction cyclic_reduce(const Word& w);

std::int64_t t_exponent_sum(const Word& w);

/// A power of a single generator inside a compressed word.
struct Syllable {
  Gen gen;
  BigInt exp;  // never zero inside a PowerWord

  bool operator==(const Syllable& o) const { return gen == o.gen && exp == o.exp; }
};

/// A freely reduced word stored as syllables g^e with arbitrary-precision
/// exponents. Appending merges adjacent syllables on the same generator, so
/// the stored form is always freely reduced. This is the working currency
/// of the reduction engines; exponents may be far too large to expand.
class PowerWord {
 public:
  PowerWord() = default;
  PowerWord(Gen g, const BigInt& e) { append(g, e); }
  explicit PowerWord(const Word& w);

  const std::vector<Syllable>& syllables() const { return syl_; }
  std::size_t syllable_count() const { return syl_.size(); }
  bool empty() const { return syl_.empty(); }
  const Syllable& operator[](std::size_t i) const { return syl_[i]; }
  const Syllable& front() const { return syl_.front(); }
  const Syllable& back() const { return syl_.back(); }

  void append(Gen g, const BigInt& e);
  void append(const PowerWord& w);
  PowerWord& operator*=(const PowerWord& w) {
    append(w);
    return *this;
  }
  PowerWord operator*(const PowerWord& w) const {
    PowerWord r = *this;
    r.append(w);
    return r;
  }
  PowerWord inverse() const;
  /// Syllables [begin, end).
  PowerWord slice(std::size_t begin, std::size_t end) const;

  BigInt letter_count() const;
  /// Signed exponent sum of all syllables on `g`.
  BigInt exponent_sum(Gen g) const;
  /// Largest s-index present, or -1 when there is none. Ignores t.
  int top_index() const;
  int min_index() const;
  bool has_t() const;

  /// Expands to a literal word; throws TooLarge beyond `guard` letters.
  Word expand(std::size_t guard = kLetterGuard) const;
  std::string str() const;

  bool operator==(const PowerWord& o) const { return syl_ == o.syl_; }

 private:
  std::vector<Syllable> syl_;
};

/// Parses the word text format into compressed form; exponents may be
/// arbitrary-precision integers here.
PowerWord parse_power_word(std::string_view text);

PowerWord power(Gen g, const BigInt& e);

}  // namespace bgconj

#include "bgconj/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "bgconj/errors.hpp"

namespace bgconj {

std::string Gen::name() const {
  return is_t ? std::string("t") : "s" + std::to_string(index);
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

Word Word::operator*(const Word& o) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return Word(std::move(out));
}

namespace {

void emit_run(std::ostringstream& os, bool& first, Gen g, const BigInt& e) {
  if (!first) os << ' ';
  first = false;
  os << g.name();
  if (e != 1) os << '^' << e.get_str();
}

// Splits `tok` into generator and exponent text. Returns false on syntax error.
bool split_token(std::string_view tok, Gen& g, std::string_view& exp_text) {
  std::size_t caret = tok.find('^');
  std::string_view head = tok.substr(0, caret);
  exp_text = caret == std::string_view::npos ? std::string_view{} : tok.substr(caret + 1);
  if (caret != std::string_view::npos && exp_text.empty()) return false;
  if (head == "t") {
    g = Gen::t();
    return true;
  }
  if (head == "a") {
    g = Gen::s(0);
    return true;
  }
  if (head.size() < 2 || head[0] != 's') return false;
  int idx = 0;
  auto body = head.substr(1);
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), idx);
  if (ec != std::errc() || ptr != body.data() + body.size()) return false;
  g = Gen::s(idx);
  return true;
}

template <typename F>
void for_each_token(std::string_view text, F&& f) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) f(text.substr(i, j - i));
    i = j;
  }
}

}  // namespace

std::string Word::str() const {
  // Only same-sign runs coalesce, so unreduced words print faithfully.
  std::ostringstream os;
  bool first = true;
  std::size_t i = 0;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    emit_run(os, first, letters_[i].gen, BigInt(static_cast<long>(j - i) * letters_[i].sign));
    i = j;
  }
  return os.str();
}

Word parse_word(std::string_view text) {
  std::vector<Letter> out;
  for_each_token(text, [&](std::string_view tok) {
    Gen g;
    std::string_view et;
    if (!split_token(tok, g, et)) throw ParseError("malformed token '" + std::string(tok) + "'");
    std::int64_t e = 1;
    if (!et.empty()) {
      auto [ptr, ec] = std::from_chars(et.data(), et.data() + et.size(), e);
      if (ec != std::errc() || ptr != et.data() + et.size())
        throw ParseError("malformed exponent in '" + std::string(tok) + "'");
      if (e == 0) throw ParseError("zero exponent in '" + std::string(tok) + "'");
    }
    if (static_cast<std::uint64_t>(e < 0 ? -e : e) > kLetterGuard)
      throw TooLarge("literal exponent in '" + std::string(tok) + "' exceeds letter guard");
    int sign = e > 0 ? 1 : -1;
    for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) out.push_back({g, sign});
  });
  return Word(std::move(out));
}

PowerWord parse_power_word(std::string_view text) {
  PowerWord out;
  for_each_token(text, [&](std::string_view tok) {
    Gen g;
    std::string_view et;
    if (!split_token(tok, g, et)) throw ParseError("malformed token '" + std::string(tok) + "'");
    BigInt e = 1;
    if (!et.empty()) {
      std::string s(et);
      if (!s.empty() && s[0] == '+') s.erase(0, 1);
      if (e.set_str(s, 10) != 0) throw ParseError("malformed exponent in '" + std::string(tok) + "'");
      if (e == 0) throw ParseError("zero exponent in '" + std::string(tok) + "'");
    }
    out.append(g, e);
  });
  return out;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> st;
  st.reserve(w.size());
  for (const Letter& l : w.letters()) {
    if (!st.empty() && st.back().gen == l.gen && st.back().sign == -l.sign)
      st.pop_back();
    else
      st.push_back(l);
  }
  return Word(std::move(st));
}

CyclicReduction cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  const auto& ls = r.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo].gen == ls[hi - 1].gen && ls[lo].sign == -ls[hi - 1].sign) {
    ++lo;
    --hi;
  }
  CyclicReduction out;
  out.core = Word(std::vector<Letter>(ls.begin() + lo, ls.begin() + hi));
  out.prefix = Word(std::vector<Letter>(ls.begin(), ls.begin() + lo));
  return out;
}

std::int64_t t_exponent_sum(const Word& w) {
  std::int64_t s = 0;
  for (const Letter& l : w.letters())
    if (l.gen.is_t) s += l.sign;
  return s;
}

// -- PowerWord ---------------------------------------------------------------

PowerWord::PowerWord(const Word& w) {
  for (const Letter& l : w.letters()) append(l.gen, BigInt(l.sign));
}

PowerWord power(Gen g, const BigInt& e) { return PowerWord(g, e); }

void PowerWord::append(Gen g, const BigInt& e) {
  if (e == 0) return;
  if (!syl_.empty() && syl_.back().gen == g) {
    syl_.back().exp += e;
    if (syl_.back().exp == 0) syl_.pop_back();
    return;
  }
  syl_.push_back({g, e});
}

void PowerWord::append(const PowerWord& w) {
  for (const Syllable& s : w.syl_) append(s.gen, s.exp);
}

PowerWord PowerWord::inverse() const {
  PowerWord r;
  r.syl_.reserve(syl_.size());
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) r.syl_.push_back({it->gen, -it->exp});
  return r;
}

PowerWord PowerWord::slice(std::size_t begin, std::size_t end) const {
  PowerWord r;
  for (std::size_t i = begin; i < end && i < syl_.size(); ++i) r.append(syl_[i].gen, syl_[i].exp);
  return r;
}

BigInt PowerWord::letter_count() const {
  BigInt n = 0;
  for (const Syllable& s : syl_) n += abs(s.exp);
  return n;
}

BigInt PowerWord::exponent_sum(Gen g) const {
  BigInt n = 0;
  for (const Syllable& s : syl_)
    if (s.gen == g) n += s.exp;
  return n;
}

int PowerWord::top_index() const {
  int top = -1;
  bool any = false;
  for (const Syllable& s : syl_) {
    if (s.gen.is_t) continue;
    if (!any || s.gen.index > top) top = s.gen.index;
    any = true;
  }
  return any ? top : -1;
}

int PowerWord::min_index() const {
  int lo = 0;
  bool any = false;
  for (const Syllable& s : syl_) {
    if (s.gen.is_t) continue;
    if (!any || s.gen.index < lo) lo = s.gen.index;
    any = true;
  }
  return lo;
}

bool PowerWord::has_t() const {
  return std::any_of(syl_.begin(), syl_.end(), [](const Syllable& s) { return s.gen.is_t; });
}

Word PowerWord::expand(std::size_t guard) const {
  if (letter_count() > BigInt(static_cast<unsigned long>(guard)))
    throw TooLarge("word of " + letter_count().get_str() + " letters exceeds letter guard");
  std::vector<Letter> out;
  for (const Syllable& s : syl_) {
    int sign = sgn(s.exp);
    unsigned long n = BigInt(abs(s.exp)).get_ui();
    for (unsigned long k = 0; k < n; ++k) out.push_back({s.gen, sign});
  }
  return Word(std::move(out));
}

std::string PowerWord::str() const {
  std::ostringstream os;
  bool first = true;
  for (const Syllable& s : syl_) emit_run(os, first, s.gen, s.exp);
  return os.str();
}

}  // namespace bgconj

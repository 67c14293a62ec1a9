#include "bgconj/powersum.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "bgconj/errors.hpp"

namespace bgconj {

namespace {

// Runs with at most this many elements may be expanded into terms when two
// runs overlap in a way the symbolic splitter does not handle.
constexpr unsigned long kRunExpandCap = 1ul << 20;

unsigned long to_ulong_guarded(const BigInt& v, const char* what) {
  if (v < 0 || v > BigInt(static_cast<unsigned long>(kBitGuard)))
    throw TooLarge(std::string(what) + " of " + v.get_str() + " bits exceeds bit guard");
  return v.get_ui();
}

BigInt pow2(const BigInt& e) {
  BigInt r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), to_ulong_guarded(e, "power of two"));
  return r;
}

unsigned long two_adic(const BigInt& v) { return mpz_scan1(v.get_mpz_t(), 0); }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt mod_pos(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

using TermMap = std::map<BigInt, BigInt>;

// Moves even coefficients upward (c*2^e with c = c'*2^v becomes c'*2^(e+v))
// and drops zero coefficients, until every coefficient is odd.
void carry(TermMap& t) {
  auto it = t.begin();
  while (it != t.end()) {
    if (it->second == 0) {
      it = t.erase(it);
      continue;
    }
    if (mpz_even_p(it->second.get_mpz_t())) {
      BigInt c = it->second;
      BigInt e0 = it->first;
      unsigned long v = two_adic(c);
      BigInt cc;
      mpz_tdiv_q_2exp(cc.get_mpz_t(), c.get_mpz_t(), v);
      t.erase(it);
      t[e0 + v] += cc;
      it = t.upper_bound(e0);
      continue;
    }
    ++it;
  }
}

// Smallest common exponent of two runs, if any.
std::optional<BigInt> first_common(const Run& a, const Run& b) {
  BigInt lo = a.start > b.start ? a.start : b.start;
  BigInt hi = a.last() < b.last() ? a.last() : b.last();
  if (lo > hi) return std::nullopt;
  BigInt g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.step.get_mpz_t(), b.step.get_mpz_t());
  BigInt diff = b.start - a.start;
  if (mod_pos(diff, g) != 0) return std::nullopt;
  // a.start + a.step*x == b.start (mod b.step)
  BigInt mb = b.step / g;
  BigInt x = mod_pos((diff / g) * s, mb);
  BigInt l = a.step * mb;
  BigInt val = a.start + a.step * x;
  if (val < lo) val += floor_div(lo - val + l - 1, l) * l;
  if (val > hi) return std::nullopt;
  return val;
}

Run shifted(const Run& r, long d) { return Run{r.sign, r.start + d, r.step, r.count}; }

void push_run(std::vector<Run>& runs, TermMap& t, int sign, const BigInt& start,
              const BigInt& step, const BigInt& count) {
  if (count <= 0) return;
  if (count == 1) {
    t[start] += sign;
    return;
  }
  runs.push_back(Run{sign, start, step, count});
}

// Resolves one collision, returning false when there is none.
bool split_one_collision(TermMap& t, std::vector<Run>& runs) {
  for (std::size_t ri = 0; ri < runs.size(); ++ri) {
    const Run r = runs[ri];
    auto it = t.lower_bound(r.start);
    for (; it != t.end() && it->first <= r.last(); ++it) {
      if (!r.contains(it->first)) continue;
      BigInt idx = (it->first - r.start) / r.step;
      runs.erase(runs.begin() + static_cast<long>(ri));
      BigInt e = it->first;
      push_run(runs, t, r.sign, r.start, r.step, idx);
      push_run(runs, t, r.sign, r.start + (idx + 1) * r.step, r.step, r.count - idx - 1);
      t[e] += r.sign;
      return true;
    }
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size(); ++j) {
      const Run a = runs[i], b = runs[j];
      if (!first_common(a, b)) continue;
      runs.erase(runs.begin() + static_cast<long>(j));
      runs.erase(runs.begin() + static_cast<long>(i));
      if (a.step == b.step && mod_pos(b.start - a.start, a.step) == 0) {
        const BigInt& d = a.step;
        BigInt lo = a.start > b.start ? a.start : b.start;
        BigInt hi = a.last() < b.last() ? a.last() : b.last();
        for (const Run& r : {a, b}) {
          push_run(runs, t, r.sign, r.start, d, (lo - r.start) / d);
          push_run(runs, t, r.sign, hi + d, d, (r.last() - hi) / d);
        }
        if (a.sign == b.sign) push_run(runs, t, a.sign, lo + 1, d, (hi - lo) / d + 1);
        return true;
      }
      const Run& small = a.count <= b.count ? a : b;
      const Run& big = a.count <= b.count ? b : a;
      if (small.count > kRunExpandCap)
        throw TooLarge("overlapping runs with incompatible steps are too long to expand");
      runs.push_back(big);
      BigInt e = small.start;
      for (unsigned long k = 0; k < small.count.get_ui(); ++k, e += small.step) t[e] += small.sign;
      return true;
    }
  }
  return false;
}

}  // namespace

bool Run::contains(const BigInt& e) const {
  if (e < start || e > last()) return false;
  return mod_pos(e - start, step) == 0;
}

PowerSum PowerSum::from_integer(const BigInt& k) {
  if (k == 0) return {};
  return PowerSum({{k, 0}}).normalized();
}

PowerSum PowerSum::run(int sign, const BigInt& start, const BigInt& step, const BigInt& count) {
  if (sign != 1 && sign != -1) throw DomainError("run sign must be +-1");
  if (step <= 0 || count <= 0) throw DomainError("run step and count must be positive");
  return PowerSum({}, {Run{sign, start, step, count}});
}

PowerSum PowerSum::normalized() const {
  TermMap t;
  std::vector<Run> runs;
  for (const Term& x : terms_) t[x.exp] += x.coeff;
  for (const Run& r : runs_) {
    if (r.step <= 0 || r.count < 0) throw DomainError("malformed run");
    push_run(runs, t, r.sign, r.start, r.step, r.count);
  }
  for (long iter = 0;; ++iter) {
    if (iter > 1'000'000) throw TooLarge("power sum normalization did not settle");
    carry(t);
    if (!split_one_collision(t, runs)) break;
  }
  std::vector<Term> terms;
  terms.reserve(t.size());
  for (auto& [e, c] : t) terms.push_back({c, e});
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.start < b.start; });
  return PowerSum(std::move(terms), std::move(runs));
}

std::pair<BigInt, BigInt> PowerSum::to_scaled(std::size_t bit_guard) const {
  if (is_zero()) return {BigInt(0), BigInt(0)};
  BigInt lo, hi;
  bool first = true;
  auto see = [&](const BigInt& a, const BigInt& b) {
    if (first || a < lo) lo = a;
    if (first || b > hi) hi = b;
    first = false;
  };
  for (const Term& x : terms_) see(x.exp, x.exp);
  for (const Run& r : runs_) see(r.start, r.last());
  if (hi - lo > BigInt(static_cast<unsigned long>(bit_guard)))
    throw TooLarge("power sum spans " + BigInt(hi - lo).get_str() + " bits, beyond the bit guard");
  BigInt mant = 0;
  for (const Term& x : terms_) mant += x.coeff * pow2(x.exp - lo);
  for (const Run& r : runs_) {
    BigInt geo = (pow2(r.step * r.count) - 1) / (pow2(r.step) - 1);
    mant += r.sign * pow2(r.start - lo) * geo;
  }
  return {mant, lo};
}

BigInt PowerSum::to_integer(std::size_t bit_guard) const {
  auto [mant, sh] = to_scaled(bit_guard);
  if (mant == 0) return 0;
  if (sh >= 0) {
    if (sh + BigInt(static_cast<unsigned long>(mpz_sizeinbase(mant.get_mpz_t(), 2))) >
        BigInt(static_cast<unsigned long>(bit_guard)))
      throw TooLarge("integer value exceeds the bit guard");
    return mant * pow2(sh);
  }
  BigInt need = -sh;
  if (BigInt(static_cast<unsigned long>(two_adic(mant))) < need)
    throw DomainError("power sum value is not an integer");
  BigInt r;
  mpz_tdiv_q_2exp(r.get_mpz_t(), mant.get_mpz_t(), need.get_ui());
  return r;
}

BigInt PowerSum::stored_term_count() const {
  BigInt n = static_cast<unsigned long>(terms_.size());
  for (const Run& r : runs_) n += r.count;
  return n;
}

std::string PowerSum::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& x : terms_) {
    if (!first) os << '+';
    first = false;
    os << "term(" << x.coeff.get_str() << ',' << x.exp.get_str() << ')';
  }
  for (const Run& r : runs_) {
    if (!first) os << '+';
    first = false;
    os << "run(" << (r.sign > 0 ? "+" : "-") << ',' << r.start.get_str() << ',' << r.step.get_str()
       << ',' << r.count.get_str() << ')';
  }
  return os.str();
}

namespace {

BigInt parse_big(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("malformed integer '" + s + "'");
  return v;
}

std::vector<std::string> split_args(const std::string& inner) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : inner) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

PowerSum PowerSum::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty power sum");
  if (s.find('(') == std::string::npos) return from_integer(parse_big(s));
  std::vector<Term> terms;
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t open = s.find('(', i);
    std::size_t close = s.find(')', i);
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ParseError("malformed power sum '" + s + "'");
    std::string head = s.substr(i, open - i);
    auto args = split_args(s.substr(open + 1, close - open - 1));
    if (head == "term") {
      if (args.size() != 2) throw ParseError("term() takes two arguments");
      BigInt c = parse_big(args[0]);
      if (c == 0) throw ParseError("term coefficient must be nonzero");
      terms.push_back({c, parse_big(args[1])});
    } else if (head == "run") {
      if (args.size() != 4) throw ParseError("run() takes four arguments");
      int sign;
      if (args[0] == "+" || args[0] == "+1" || args[0] == "1")
        sign = 1;
      else if (args[0] == "-" || args[0] == "-1")
        sign = -1;
      else
        throw ParseError("run sign must be + or -");
      BigInt step = parse_big(args[2]), count = parse_big(args[3]);
      if (step <= 0 || count <= 0) throw ParseError("run step and count must be positive");
      runs.push_back(Run{sign, parse_big(args[1]), step, count});
    } else {
      throw ParseError("unknown power sum component '" + head + "'");
    }
    i = close + 1;
    if (i < s.size()) {
      if (s[i] != '+') throw ParseError("expected '+' between components");
      ++i;
    }
  }
  return PowerSum(std::move(terms), std::move(runs));
}

PowerSum add(const PowerSum& x, const PowerSum& y) {
  std::vector<Term> t = x.terms();
  t.insert(t.end(), y.terms().begin(), y.terms().end());
  std::vector<Run> r = x.runs();
  r.insert(r.end(), y.runs().begin(), y.runs().end());
  return PowerSum(std::move(t), std::move(r)).normalized();
}

PowerSum negate(const PowerSum& x) {
  std::vector<Term> t = x.terms();
  for (Term& a : t) a.coeff = -a.coeff;
  std::vector<Run> r = x.runs();
  for (Run& a : r) a.sign = -a.sign;
  return PowerSum(std::move(t), std::move(r));
}

PowerSum shift(const PowerSum& x, const BigInt& e) {
  std::vector<Term> t = x.terms();
  for (Term& a : t) a.exp += e;
  std::vector<Run> r = x.runs();
  for (Run& a : r) a.start += e;
  return PowerSum(std::move(t), std::move(r));
}

PowerSum to_signed_units(const PowerSum& x) {
  PowerSum cur = x.normalized();
  for (int round = 0; round < 64; ++round) {
    bool all_units = std::all_of(cur.terms().begin(), cur.terms().end(),
                                 [](const Term& t) { return abs(t.coeff) == 1; });
    if (all_units) return cur;
    std::vector<Term> out;
    for (const Term& t : cur.terms()) {
      BigInt n = t.coeff;
      BigInt e = t.exp;
      // n odd: n = eps + 2^k n' with eps chosen so that n - eps = 0 (mod 4).
      while (abs(n) > 1) {
        int eps = mod_pos(n, 4) == 1 ? 1 : -1;
        out.push_back({BigInt(eps), e});
        n -= eps;
        unsigned long k = two_adic(n);
        mpz_tdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), k);
        e += k;
      }
      out.push_back({n, e});
    }
    cur = PowerSum(std::move(out), cur.runs()).normalized();
  }
  throw TooLarge("signed-unit conversion did not settle");
}

PowerSum naf(const BigInt& k) {
  if (k == 0) return {};
  BigInt x = abs(k);
  BigInt h = 3 * x;
  BigInt diff = h ^ x;
  int sign = sgn(k);
  std::vector<Term> terms;
  // digit j = bit(j+1) of 3x minus bit(j+1) of x
  for (unsigned long i = mpz_scan1(diff.get_mpz_t(), 1); i != ~0ul;
       i = mpz_scan1(diff.get_mpz_t(), i + 1)) {
    int d = mpz_tstbit(h.get_mpz_t(), i) ? 1 : -1;
    terms.push_back({BigInt(sign * d), BigInt(static_cast<unsigned long>(i - 1))});
  }
  return PowerSum(std::move(terms));
}

namespace {

bool runs_touch(const Run& a, const Run& b) {
  return first_common(a, b) || first_common(shifted(a, 1), b) || first_common(shifted(a, -1), b);
}

bool run_touches_exp(const Run& r, const BigInt& e) {
  return r.contains(e) || r.contains(e - 1) || r.contains(e + 1);
}

}  // namespace

bool is_non_adjacent(const PowerSum& x) {
  const auto& ts = x.terms();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (abs(ts[i].coeff) != 1) return false;
    if (i > 0 && ts[i].exp - ts[i - 1].exp < 2) return false;
  }
  const auto& rs = x.runs();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].step < 2 && rs[i].count > 1) return false;
    for (const Term& t : ts)
      if (run_touches_exp(rs[i], t.exp)) return false;
    for (std::size_t j = i + 1; j < rs.size(); ++j)
      if (runs_touch(rs[i], rs[j])) return false;
  }
  return true;
}

PowerSum naf(const PowerSum& k) {
  PowerSum n = k.normalized();
  if (is_non_adjacent(n)) return n;
  // Keep runs that are already non-adjacent and isolated from everything
  // else symbolic; expand the remainder.
  std::vector<Run> keep, rest_runs;
  const auto& rs = n.runs();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    bool isolated = rs[i].step >= 2;
    for (const Term& t : n.terms())
      if (isolated && run_touches_exp(rs[i], t.exp)) isolated = false;
    for (std::size_t j = 0; j < rs.size() && isolated; ++j)
      if (j != i && runs_touch(rs[i], rs[j])) isolated = false;
    (isolated ? keep : rest_runs).push_back(rs[i]);
  }
  auto expand_naf = [](const PowerSum& part) {
    auto [mant, sh] = part.to_scaled();
    return shift(naf(mant), sh);
  };
  if (!keep.empty()) {
    PowerSum core = expand_naf(PowerSum(n.terms(), rest_runs));
    PowerSum joined(core.terms(), keep);
    if (is_non_adjacent(joined)) return joined.normalized();
  }
  return expand_naf(n);
}

BigInt min_term_count(const PowerSum& k) { return naf(k).stored_term_count(); }

BigInt length_lower_bound(const PowerSum& k) {
  BigInt p = min_term_count(k);
  if (p <= 1) return 0;
  return p / 2;  // ceil((p-1)/2)
}

BigInt tower_value(int m, const BigInt& n) {
  if (m < 0) throw DomainError("tower height must be nonnegative");
  if (m == 0) return n;
  BigInt e = tower_value(m - 1, n);
  if (e < 0) throw DomainError("tower of a negative base");
  if (e > BigInt(static_cast<unsigned long>(kBitGuard)))
    throw TooLarge("E(" + std::to_string(m) + "," + n.get_str() + ") = 2^E(" + std::to_string(m - 1) +
                   "," + n.get_str() + ") exceeds the bit guard");
  return pow2(e);
}

PowerSum tower(int m, const BigInt& n) {
  if (m < 0 || n < 1) throw DomainError("tower(m,n) needs m >= 0 and n >= 1");
  if (m == 0) return PowerSum::from_integer(n);
  return PowerSum::single(1, tower_value(m - 1, n));
}

PowerSum third_of_tower_minus_one(int m, const BigInt& n) {
  if (m < 2 || n < 1) throw DomainError("(E(m,n)-1)/3 needs m >= 2 and n >= 1");
  BigInt h = tower_value(m - 1, n);
  if (mpz_odd_p(h.get_mpz_t())) throw DomainError("E(m-1,n) must be even");
  return PowerSum::run(1, 0, 2, h / 2);
}

}  // namespace bgconj

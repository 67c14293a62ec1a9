#include <doctest.h>

#include "bgconj/errors.hpp"
#include "bgconj/powersum.hpp"
#include "gen.hpp"

using namespace bgconj;

namespace {

BigInt val(const PowerSum& x) { return x.to_integer(); }

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// Textbook digit-by-digit NAF count: pick d = 2 - (k mod 4) on odd k.
long naf_count_reference(BigInt k) {
  long c = 0;
  while (k != 0) {
    if (mpz_odd_p(k.get_mpz_t())) {
      BigInt r;
      mpz_fdiv_r_ui(r.get_mpz_t(), k.get_mpz_t(), 4);
      k -= (r == 1) ? 1 : -1;
      ++c;
    }
    k /= 2;
  }
  return c;
}

PowerSum random_sum() {
  std::vector<Term> terms;
  std::vector<Run> runs;
  for (long n = testgen::uniform(0, 4); n > 0; --n)
    terms.push_back({testgen::uniform(-9, 9) | 1, testgen::uniform(-6, 40)});
  for (long n = testgen::uniform(0, 2); n > 0; --n)
    runs.push_back(Run{testgen::uniform(0, 1) ? 1 : -1, testgen::uniform(-4, 30), testgen::uniform(1, 4),
                       testgen::uniform(1, 12)});
  return PowerSum(terms, runs);
}

}  // namespace

TEST_CASE("normalize") {
  CHECK(PowerSum({{1, 3}, {1, 3}}).normalized() == PowerSum::single(1, 4));
  CHECK(PowerSum({{3, 0}}).normalized() == PowerSum({{3, 0}}));
  PowerSum x({{1, 0}}, {Run{1, 2, 2, 3}});
  CHECK(val(x.normalized()) == 85);
  CHECK(val(x) == 85);
  CHECK(PowerSum({{1, 2}, {-1, 2}}).normalized().is_zero());
}

TEST_CASE("add, negate, shift") {
  CHECK(add(PowerSum::single(1, 0), PowerSum::single(1, 0)) == PowerSum::single(1, 1));
  PowerSum s = shift(PowerSum({{1, 0}, {-1, 2}}), 3);
  CHECK(val(s) == 8 - 32);
  CHECK(s == PowerSum({{1, 3}, {-1, 5}}));
  PowerSum n = negate(PowerSum::run(1, 0, 2, 4));
  CHECK(val(n) == -85);
  REQUIRE(n.runs().size() == 1);
  CHECK(n.runs()[0].sign == -1);
}

TEST_CASE("to_signed_units") {
  PowerSum a = to_signed_units(PowerSum({{3, 0}}));
  CHECK(val(a) == 3);
  for (const auto& t : a.terms()) CHECK(abs(t.coeff) == 1);
  CHECK(to_signed_units(PowerSum::single(1, 5)) == PowerSum::single(1, 5));
  PowerSum b = to_signed_units(PowerSum({{5, 1}}));
  CHECK(val(b) == 10);
  CHECK(b.stored_term_count() <= 11);
}

TEST_CASE("naf and min_term_count examples") {
  PowerSum n7 = naf(BigInt(7));
  CHECK(n7 == PowerSum({{-1, 0}, {1, 3}}));
  CHECK(min_term_count(PowerSum::from_integer(21845)) == 8);
  CHECK(naf(BigInt(0)).is_zero());
  CHECK(min_term_count(PowerSum::from_integer(85)) == 4);
  CHECK(min_term_count(PowerSum::run(1, 0, 2, 32768)) == 32768);
  CHECK(min_term_count(PowerSum::from_integer(1)) == 1);
}

TEST_CASE("length_lower_bound") {
  CHECK(length_lower_bound(PowerSum::from_integer(85)) == 2);
  CHECK(length_lower_bound(PowerSum::from_integer(1)) == 0);
  CHECK(length_lower_bound(PowerSum::from_integer(21845)) == 4);
}

TEST_CASE("tower") {
  CHECK(val(tower(2, 3)) == 256);
  CHECK(val(tower(0, 5)) == 5);
  CHECK(tower(4, 2) == PowerSum::single(1, 65536));
  CHECK(tower_value(3, 2) == 65536);
  CHECK_THROWS_AS(tower_value(5, 2), TooLarge);
  CHECK_NOTHROW(tower(5, 2));  // exponent E(4,2) itself is 65536 bits
}

TEST_CASE("third_of_tower_minus_one") {
  CHECK(third_of_tower_minus_one(2, 4) == PowerSum::run(1, 0, 2, 8));
  CHECK(val(third_of_tower_minus_one(2, 4)) == 21845);
  // E(2,1) = 2^2 = 4
  CHECK(val(third_of_tower_minus_one(2, 1)) == 1);
  CHECK(val(third_of_tower_minus_one(3, 2)) == 21845);
  CHECK(min_term_count(third_of_tower_minus_one(3, 2)) == 8);
  CHECK(min_term_count(third_of_tower_minus_one(4, 2)) == 32768);
  CHECK_THROWS_AS(third_of_tower_minus_one(1, 3), DomainError);
}

TEST_CASE("parse and print") {
  CHECK(val(PowerSum::parse("term(3,1)+run(-,4,2,3)")) == 6 - 16 - 64 - 256);
  CHECK(val(PowerSum::parse("-12345")) == -12345);
  CHECK_THROWS_AS(PowerSum::parse("term(0,1)"), ParseError);
  CHECK_THROWS_AS(PowerSum::parse("run(+,0,0,2)"), ParseError);
  CHECK_THROWS_AS(PowerSum::parse("bogus(1)"), ParseError);
  for (int k = 0; k < 300; ++k) {
    PowerSum x = random_sum().normalized();
    CHECK(PowerSum::parse(x.str()) == x);
  }
}

TEST_CASE("property: value preservation") {
  for (int k = 0; k < 1000; ++k) {
    PowerSum x = random_sum(), y = random_sum();
    // scale by 2^8 so that negative exponents down to -8 stay integral
    auto ival = [](const PowerSum& p) { return shift(p, 8).to_integer(); };
    CHECK(ival(x.normalized()) == ival(x));
    CHECK(ival(add(x, y)) == ival(x) + ival(y));
    CHECK(ival(negate(x)) == -ival(x));
    long e = testgen::uniform(0, 20);
    CHECK(ival(shift(x, e)) == ival(x) * pow2(e));
    CHECK(ival(to_signed_units(x)) == ival(x));
    CHECK(ival(naf(x)) == ival(x));
    CHECK(is_non_adjacent(naf(x)));
  }
}

TEST_CASE("property: to_signed_units term bound") {
  for (int k = 0; k < 1000; ++k) {
    std::vector<Term> terms;
    BigInt weight = 0;
    for (long n = testgen::uniform(1, 4); n > 0; --n) {
      long c = testgen::uniform(-40, 40);
      if (c == 0) c = 1;
      terms.push_back({c, testgen::uniform(0, 30)});
      weight += std::labs(c);
    }
    PowerSum x(terms);
    PowerSum u = to_signed_units(x);
    CHECK(val(u) == val(x));
    CHECK(u.stored_term_count() <= 2 * weight + 1);
    for (const auto& t : u.terms()) CHECK(abs(t.coeff) == 1);
  }
}

TEST_CASE("property: NAF count matches the digit-by-digit reference") {
  for (long k = -5000; k <= 5000; ++k) CHECK(min_term_count(PowerSum::from_integer(k)) == naf_count_reference(k));
  for (int r = 0; r < 500; ++r) {
    BigInt k = 0;
    for (int j = 0; j < 8; ++j) k = k * BigInt("18446744073709551616") + BigInt(std::to_string(testgen::rng()()));
    if (r % 2) k = -k;
    CHECK(min_term_count(PowerSum::from_integer(k)) == naf_count_reference(k));
  }
}

TEST_CASE("property: run(+, a, 2, c) = 2^a (4^c - 1) / 3") {
  for (unsigned a = 0; a <= 64; a += 3)
    for (unsigned c = 1; c <= 64; ++c) CHECK(val(PowerSum::run(1, a, 2, c)) == pow2(a) * (pow2(2 * c) - 1) / 3);
}

TEST_CASE("property: 3 * third + 1 = E(m,n)") {
  for (int m = 2; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) {
      BigInt E;
      try {
        E = tower_value(m, n);
      } catch (const TooLarge&) {
        continue;
      }
      CHECK(3 * val(third_of_tower_minus_one(m, n)) + 1 == E);
    }
}

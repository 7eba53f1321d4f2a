#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcrystal/laurent.hpp"

using namespace qcrystal;

namespace {

LaurentPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(0, 5), exp(-6, 6), coeff(-9, 9);
  LaurentPoly p;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) p.add_term(exp(rng), Int(coeff(rng)));
  return p;
}

}  // namespace

TEST_CASE("ring operations") {
  LaurentPoly two = q_int(2);  // q + q^-1
  CHECK((two * two).str() == "q^-2 + 2 + q^2");
  LaurentPoly x = LaurentPoly::parse("q^-1 + 3*q^2");
  CHECK(x + LaurentPoly::zero() == x);
  LaurentPoly d = LaurentPoly::parse("q - q^-1");
  LaurentPoly s = LaurentPoly::parse("q + q^-1");
  CHECK((d * s).str() == "-q^-2 + q^2");
}

TEST_CASE("bar involution") {
  LaurentPoly x = LaurentPoly::parse("q^-1 + q^2");
  CHECK(x.bar().str() == "q^-2 + q");
  CHECK(x.bar().bar() == x);
  CHECK(q_int(5).bar() == q_int(5));
}

TEST_CASE("balanced q-integers and binomials") {
  CHECK(q_int(3).str() == "q^-2 + 1 + q^2");
  CHECK(q_int(0).is_zero());
  CHECK(q_int(-4) == -q_int(4));
  CHECK(q_binomial(4, 2).str() == "q^-4 + q^-2 + 2 + q^2 + q^4");
  CHECK(q_binomial(7, 0) == LaurentPoly::one());
  CHECK(q_binomial(-3, 0) == LaurentPoly::one());
  CHECK(q_binomial(2, 5).is_zero());
  // negative upper argument stays a Laurent polynomial
  CHECK(q_binomial(-1, 1) == -q_int(1));
  CHECK(q_binomial(-2, 2) == q_binomial(3, 2).bar() * LaurentPoly::one());
}

TEST_CASE("q-integer addition rule") {
  for (long long m = -8; m <= 8; ++m)
    for (long long n = -8; n <= 8; ++n) {
      LaurentPoly lhs = q_int(m + n);
      LaurentPoly rhs = LaurentPoly(1, n) * q_int(m) + LaurentPoly(1, -m) * q_int(n);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("Pascal identity") {
  for (long long m = 1; m <= 8; ++m)
    for (long long t = 1; t <= m; ++t) {
      LaurentPoly lhs = q_binomial(m, t);
      LaurentPoly rhs = LaurentPoly(1, t) * q_binomial(m - 1, t) +
                        LaurentPoly(1, t - m) * q_binomial(m - 1, t - 1);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("bar-invariance of binomials") {
  for (long long m = 0; m <= 8; ++m)
    for (long long t = 0; t <= m; ++t) CHECK(q_binomial(m, t).bar() == q_binomial(m, t));
}

TEST_CASE("bar is a ring automorphism") {
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    LaurentPoly a = random_poly(rng), b = random_poly(rng);
    CHECK((a * b).bar() == a.bar() * b.bar());
    CHECK((a + b).bar() == a.bar() + b.bar());
  }
}

TEST_CASE("regularity at q=0") {
  LaurentPoly a = LaurentPoly::parse("1 + q^3");
  CHECK(a.is_regular_at_zero());
  CHECK(a.eval_at_zero() == 1);
  CHECK_FALSE(LaurentPoly(1, -1).is_regular_at_zero());
  CHECK_THROWS_AS(LaurentPoly(1, -1).eval_at_zero(), NotRegular);
  LaurentPoly b = LaurentPoly(1, 1) * q_int(2);  // q^2 + 1
  CHECK(b.is_regular_at_zero());
  CHECK(b.eval_at_zero() == 1);
}

TEST_CASE("evaluation is multiplicative") {
  std::mt19937 rng(11);
  for (int k = 0; k < 200; ++k) {
    LaurentPoly a = random_poly(rng), b = random_poly(rng);
    if (!a.is_regular_at_zero() || !b.is_regular_at_zero()) continue;
    CHECK((a * b).eval_at_zero() == a.eval_at_zero() * b.eval_at_zero());
  }
}

TEST_CASE("text round trip") {
  std::mt19937 rng(13);
  for (int k = 0; k < 300; ++k) {
    LaurentPoly a = random_poly(rng);
    CHECK(LaurentPoly::parse(a.str()) == a);
    CHECK(LaurentPoly::parse(a.str()).str() == a.str());
  }
  CHECK(LaurentPoly::parse("q^-2 + 3 + q^4").str() == "q^-2 + 3 + q^4");
  CHECK(LaurentPoly::parse("0").is_zero());
  CHECK_THROWS_AS(LaurentPoly::parse("q^"), ParseFailure);
}

TEST_CASE("json round trip") {
  std::mt19937 rng(17);
  for (int k = 0; k < 100; ++k) {
    LaurentPoly a = random_poly(rng);
    CHECK(LaurentPoly::from_json(a.to_json()) == a);
  }
}

TEST_CASE("exact division") {
  LaurentPoly n = q_int(6) * q_int(5);
  CHECK(divide_exact(n, q_int(5)) == q_int(6));
  CHECK_THROWS_AS(divide_exact(q_int(2), q_int(3)), Error);
}

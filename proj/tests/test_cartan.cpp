#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qcrystal/cartan.hpp"

using namespace qcrystal;

namespace {

// reflection closure recomputed with plain sets, as an independent check of
// the stored positive root list
std::set<std::vector<long long>> positive_roots_bruteforce(const RootDatum& rd) {
  std::set<std::vector<long long>> roots;
  std::vector<std::vector<long long>> stack;
  const int n = rd.rank();
  for (int i = 0; i < n; ++i) {
    std::vector<long long> c(n, 0);
    c[i] = 1;
    roots.insert(c);
    stack.push_back(c);
  }
  auto pairing = [&](const std::vector<long long>& c, int j) {
    long long acc = 0;
    for (int i = 0; i < n; ++i) acc += c[i] * rd.spec.a[j][i];
    return acc;
  };
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j) {
      auto c2 = c;
      c2[j] -= pairing(c, j);
      bool pos = true;
      for (auto x : c2)
        if (x < 0) pos = false;
      if (pos && roots.insert(c2).second) stack.push_back(c2);
    }
  }
  return roots;
}

Weight rand_weight(const RootDatum& rd, std::mt19937& rng, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<long long> d(lo, hi);
  Weight w = rd.zero_weight();
  for (auto& x : w.h) x = d(rng);
  for (auto& x : w.d) x = d(rng);
  return w;
}

}  // namespace

TEST_CASE("validate A1") {
  auto rd = preset("A1");
  CHECK(rd.type == AlgType::Finite);
  CHECK(rd.sym == std::vector<long long>{1});
  CHECK(rd.positive_roots.size() == 1);
  CHECK(rd.positive_roots[0].h == std::vector<long long>{2});
}

TEST_CASE("validate A2") {
  auto rd = preset("A2");
  CHECK(rd.type == AlgType::Finite);
  CHECK(rd.sym == std::vector<long long>({1, 1}));
  CHECK(rd.positive_roots.size() == 3);
  CHECK(rd.rho.h == std::vector<long long>({1, 1}));
  auto brute = positive_roots_bruteforce(rd);
  std::set<std::vector<long long>> stored(rd.positive_root_coords.begin(),
                                          rd.positive_root_coords.end());
  CHECK(stored == brute);
}

TEST_CASE("validate affine") {
  auto rd = preset("A1~");
  CHECK(rd.type == AlgType::Affine);
  CHECK(rd.central == std::vector<long long>({1, 1}));
  // alpha_i pair to zero against the central element
  for (int i = 0; i < 2; ++i) {
    long long acc = 0;
    for (int j = 0; j < 2; ++j) acc += rd.central[j] * rd.spec.a[j][i];
    CHECK(acc == 0);
  }
}

TEST_CASE("validate rejects bad input") {
  CartanSpec s;
  s.n = 1;
  s.a = {{1}};
  CHECK_THROWS_AS(validate(s), NonGCM);
  s.a = {{2}};
  s.n = 0;
  s.a = {};
  CHECK_THROWS_AS(validate(s), NonGCM);
  CartanSpec t;
  t.n = 2;
  t.a = {{2, -1}, {0, 2}};
  CHECK_THROWS_AS(validate(t), NonGCM);
  t.a = {{2, 1}, {1, 2}};
  CHECK_THROWS_AS(validate(t), NonGCM);
  // symmetrizable check: inconsistent ratios around a triangle
  CartanSpec u;
  u.n = 3;
  u.a = {{2, -1, -1}, {-2, 2, -1}, {-1, -1, 2}};
  CHECK_THROWS_AS(validate(u), NotSymmetrizable);
  // affine matrix with wrong corank
  CartanSpec v;
  v.n = 2;
  v.a = {{2, -2}, {-2, 2}};
  v.corank = 0;
  CHECK_THROWS_AS(validate(v), CorankMismatch);
}

TEST_CASE("symmetrizers: B2 and G2 patterns") {
  CartanSpec s;
  s.n = 2;
  s.a = {{2, -2}, {-1, 2}};
  auto rd = validate(s);
  CHECK(rd.sym == std::vector<long long>({1, 2}));
  CHECK(rd.positive_roots.size() == 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(rd.sym[i] * s.a[i][j] == rd.sym[j] * s.a[j][i]);
  CartanSpec g;
  g.n = 2;
  g.a = {{2, -3}, {-1, 2}};
  auto gd = validate(g);
  CHECK(gd.sym == std::vector<long long>({1, 3}));
  CHECK(gd.type == AlgType::Finite);
  CHECK(gd.positive_roots.size() == 6);
}

TEST_CASE("dominance order") {
  auto a2 = preset("A2");
  Weight theta({1, 1}), zero({0, 0});
  CHECK(dominance_leq(a2, zero, theta));
  auto a1 = preset("A1");
  CHECK_FALSE(dominance_leq(a1, Weight({1}), Weight({2})));
  CHECK_FALSE(dominance_leq(a1, Weight({2}), Weight({1})));
  CHECK(dominance_leq(a1, Weight({3}), Weight({3})));
}

TEST_CASE("dominance is a partial order") {
  auto a2 = preset("A2");
  std::mt19937 rng(23);
  std::vector<Weight> sample;
  for (int k = 0; k < 24; ++k) sample.push_back(rand_weight(a2, rng));
  for (auto& w : sample) CHECK(dominance_leq(a2, w, w));
  for (auto& x : sample)
    for (auto& y : sample) {
      if (dominance_leq(a2, x, y) && dominance_leq(a2, y, x)) CHECK(x == y);
      for (auto& z : sample)
        if (dominance_leq(a2, x, y) && dominance_leq(a2, y, z))
          CHECK(dominance_leq(a2, x, z));
    }
}

TEST_CASE("level") {
  auto rd = preset("A1~");
  CHECK(level(rd, Weight({1, 0}, {0})) == 1);
  CHECK(level(rd, Weight({0, 0}, {1})) == 0);  // delta
  CHECK(level(rd, Weight({1, -2}, {0})) == -1);
  CHECK_THROWS_AS(level(preset("A1"), Weight({1})), NotAffine);
}

TEST_CASE("delta is the sum of the simple roots in affine rank 2") {
  auto rd = preset("A1~");
  Weight delta({0, 0}, {1});
  CHECK(dominance_leq(rd, rd.zero_weight(), delta));
  auto c = rd.root_coords(delta);
  REQUIRE(c.has_value());
  CHECK((*c)[0] == Rat(1));
  CHECK((*c)[1] == Rat(1));
}

TEST_CASE("weight multiplicities") {
  auto a2 = preset("A2");
  Weight theta({1, 1});
  CHECK(freudenthal_dim(a2, theta, Weight({0, 0})) == 2);
  CHECK(freudenthal_dim(a2, theta, theta) == 1);
  auto a1 = preset("A1");
  CHECK(freudenthal_dim(a1, Weight({3}), Weight({1})) == 1);
  CHECK(freudenthal_dim(a1, Weight({3}), Weight({2})) == 0);
  CHECK_THROWS_AS(freudenthal_dim(preset("A1~"), Weight({1, 0}, {0}), Weight({0, 0}, {0})),
                  NotFiniteType);
  CHECK_THROWS_AS(freudenthal_dim(a1, Weight({-1}), Weight({1})), NotDominant);
}

TEST_CASE("Weyl dimensions") {
  auto a2 = preset("A2");
  CHECK(weyl_dim(a2, Weight({1, 1})) == 8);
  CHECK(weyl_dim(a2, Weight({0, 0})) == 1);
  auto a1 = preset("A1");
  for (long long n = 0; n <= 10; ++n) CHECK(weyl_dim(a1, Weight({n})) == n + 1);
  CHECK(weyl_dim(a2, Weight({2, 2})) == 27);
}

TEST_CASE("character sums to the Weyl dimension") {
  auto a2 = preset("A2");
  for (auto lam : {Weight({1, 0}), Weight({1, 1}), Weight({2, 1}), Weight({0, 3})}) {
    FreudenthalTable t(a2, lam);
    Int total = 0;
    for (auto& [w, m] : t.character()) total += m;
    CHECK(total == weyl_dim(a2, lam));
  }
}

TEST_CASE("multiplicities are reflection invariant") {
  auto a2 = preset("A2");
  Weight lam({2, 1});
  FreudenthalTable t(a2, lam);
  for (auto& [w, m] : t.character())
    for (int i = 0; i < 2; ++i) CHECK(t.mult(a2.reflect(w, i)) == m);
}

TEST_CASE("root datum json") {
  auto rd = preset("A1~");
  auto j = root_datum_to_json(rd);
  CHECK(j["type"] == "affine");
  CHECK(j["corank"] == 1);
  CHECK(Weight::from_json(Weight({1, -2}, {3}).to_json()) == Weight({1, -2}, {3}));
}

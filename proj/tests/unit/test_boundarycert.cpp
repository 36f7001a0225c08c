#include <doctest.h>

#include <random>

#include "fcone/boundarycert.hpp"
#include "fcone/error.hpp"
#include "fcone/lift.hpp"

using namespace fcone;

namespace {

Rational frac(int p, int q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

WeightFn random_weight(int m, std::mt19937_64& rng) {
  WeightFn w(m);
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) w.set(i, j, frac(static_cast<int>(rng() % 9) - 2, 1 + static_cast<int>(rng() % 2)));
  return w;
}

Rational direct_cut(const WeightFn& w, SubsetMask s) {
  Rational c = 0;
  for (int i = 1; i <= w.m(); ++i)
    for (int j = 1; j <= w.m(); ++j)
      if (((s >> i) & 1U) && !((s >> j) & 1U)) c += w(i, j);
  return c;
}

BoundaryCoefficients cuts_of(const WeightFn& w) {
  BoundaryCoefficients b(w.m());
  for (SubsetMask s = 2; s <= lower_mask(w.m()); s += 2) b.set(s, w.cut(s));
  return b;
}

}  // namespace

TEST_CASE("cuts and relabeling") {
  std::mt19937_64 rng(37);
  for (int m = 4; m <= 7; ++m) {
    auto w = random_weight(m, rng);
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i + 1;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto v = w.relabel(perm);
    for (SubsetMask s = 2; s <= lower_mask(m); s += 2) {
      CHECK(w.cut(s) == direct_cut(w, s));
      SubsetMask img = 0;
      for (int i : mask_members(s)) img |= SubsetMask{1} << perm[i - 1];
      CHECK(v.cut(s) == w.cut(img));
    }
  }
}

TEST_CASE("certifies checks inequalities and singleton equalities") {
  std::mt19937_64 rng(41);
  const int m = 6;
  auto w = random_weight(m, rng);
  auto b = cuts_of(w);
  CHECK(certifies(w, b));
  auto lower = b;
  lower.set(0b1100, b[0b1100] - 1);
  CHECK(certifies(w, lower));
  auto higher = b;
  higher.set(0b1100, b[0b1100] + 1);
  CHECK_FALSE(certifies(w, higher));
  auto singleton = b;
  singleton.set(0b10, b[0b10] - 1);
  CHECK_FALSE(certifies(w, singleton));
}

TEST_CASE("LP finds a certificate whenever cut data is given") {
  std::mt19937_64 rng(43);
  for (int m = 4; m <= 8; ++m)
    for (int t = 0; t < 3; ++t) {
      auto b = cuts_of(random_weight(m, rng));
      for (SubsetMask s = 2; s <= lower_mask(m); s += 2)
        if (popcount(s) >= 2 && popcount(s) <= m - 2 && rng() % 2) b.set(s, b[s] - 1);
      auto r = certify_effective(b);
      REQUIRE(r.effective());
      CHECK(r.certificate->verified);
      CHECK(certifies(r.certificate->weight, b));
    }
}

TEST_CASE("LP refutes an impossible cut system") {
  // Zero singleton cuts force total weight zero, so the three 2|2 cuts cannot all be 1.
  BoundaryCoefficients b(4);
  for (SubsetMask s : {SubsetMask{0b110}, SubsetMask{0b1010}, SubsetMask{0b1100}}) b.set(s, 1);
  auto r = certify_effective(b);
  CHECK_FALSE(r.effective());
  REQUIRE(r.refutation.has_value());
  REQUIRE(r.system.has_value());
  CHECK(r.refutation->is_farkas());
  CHECK(verify(*r.system, *r.refutation));
}

TEST_CASE("low-rank targets") {
  BoundaryCoefficients b2(2);
  b2.set(0b10, 3);
  auto w2 = low_rank_weights(b2);
  CHECK(certifies(w2, b2));
  BoundaryCoefficients b3(3);
  b3.set(0b10, 2);
  b3.set(0b100, 3);
  b3.set(0b110, 4);
  auto w3 = low_rank_weights(b3);
  CHECK(certifies(w3, b3));
}

TEST_CASE("pullback coefficients follow the composition") {
  auto f = standard_A(8);
  auto b = pullback_coefficients(f, {3, 2, 2, 1});
  CHECK(b.m() == 4);
  CHECK(b[0b10] == f(3));
  CHECK(b[0b110] == f(5));
  CHECK(b[0b1110] == f(7));
}

TEST_CASE("ascent promotes certificates") {
  for (const auto& f : {standard_A(8), total_T(8), random_symmetric_fnef_fn(8, 3)})
    for (const std::vector<int>& lambda : {std::vector<int>{4, 2, 1, 1}, std::vector<int>{3, 2, 1, 1, 1}, std::vector<int>{2, 2, 2, 1, 1}}) {
      std::vector<int> mu(lambda.begin(), lambda.end() - 2);
      mu.push_back(2 * lambda.back());
      auto base = pullback_coefficients(f, mu);
      auto cert = certify_effective(base);
      REQUIRE(cert.effective());
      auto w = ascend(cert.certificate->weight, f, lambda);
      CHECK(certifies(w, pullback_coefficients(f, lambda)));
    }
  auto f = standard_A(8);
  auto w3 = low_rank_weights(pullback_coefficients(f, {4, 2, 2}));
  CHECK_THROWS_AS(ascend(w3, f, {4, 3, 1}), PreconditionError);
  CHECK_THROWS_AS(ascend(w3, f, {2, 2, 2, 1, 1}), PreconditionError);
}

TEST_CASE("stratal effectivity of symmetric divisors") {
  for (int n = 5; n <= 9; ++n) {
    auto r = stratal_effectivity_symmetric(standard_A(n));
    CHECK(r.success);
    CHECK(r.n == n);
    CHECK(r.strata.size() == partitions(n, 2).size());
    for (const auto& s : r.strata) {
      CHECK(s.verified);
      if (!s.partition.is_strict() && s.partition.length() >= 4) CHECK(s.method == StratumReport::Method::Ascent);
    }
    StratalOptions strict;
    strict.strict_only = true;
    auto rs = stratal_effectivity_symmetric(standard_A(n), strict);
    for (const auto& s : rs.strata) CHECK((s.partition.is_strict() || s.partition.length() <= 3));
    CHECK(rs.ascended == 0);
  }
  CHECK_THROWS_AS(stratal_effectivity_symmetric(CyclicFn(6, {0, 1, 2, 3, 4, 5})), NotSymmetric);
  CHECK_THROWS_AS(stratal_effectivity_symmetric(Rational(-1) * standard_A(6)), NotFnef);
}

TEST_CASE("symmetric representatives of invariant divisors") {
  for (int n = 5; n <= 9; ++n) {
    auto d = symmetric_divisor(n, total_T(n), n);
    auto g = symmetric_fn_from_divisor(d);
    CHECK(g(0) == 0);
    CHECK(g.is_symmetric());
    CHECK(is_fnef_fn(g).ok);
    CHECK(classes_equal(symmetric_divisor(n, g, n), d));
  }
}

TEST_CASE("genus bound") {
  for (int k = 4; k <= 20; ++k) CHECK(symmetric_bound(k) == (k + 1) * (k + 2) / 2 - 1);
  CHECK(symmetric_bound(8) == 44);
}

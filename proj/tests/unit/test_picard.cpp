#include <doctest.h>

#include <random>

#include "fcone/curves.hpp"
#include "fcone/error.hpp"
#include "fcone/fcurve.hpp"
#include "fcone/linalg.hpp"
#include "fcone/picard.hpp"

using namespace fcone;

namespace {

// Stirling numbers of the second kind.
std::uint64_t stirling2(int n, int k) {
  std::vector<std::vector<std::uint64_t>> s(n + 1, std::vector<std::uint64_t>(k + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= k; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  return s[n][k];
}

DivisorClass random_divisor(int n, std::mt19937_64& rng, int range = 5) {
  std::uniform_int_distribution<int> d(-range, range);
  DivisorClass f(n);
  for (const auto& s : sigma_elements(n)) f.set(s, Rational(d(rng)));
  return f;
}

// Dimension of the span of the F-curve pairing vectors of all divisors: the rank
// of the matrix whose rows are F-curves and columns are coefficient unit vectors.
std::size_t fcurve_matrix_rank(int n) {
  auto sigma = sigma_elements(n);
  RationalMatrix m;
  for (const auto& c : all_fcurves(n)) {
    std::vector<Rational> row;
    for (const auto& s : sigma) {
      DivisorClass e(n);
      e.set(s, 1);
      row.push_back(pair_fcurve(e, c));
    }
    m.push_back(std::move(row));
  }
  return matrix_rank(m, sigma.size());
}

}  // namespace

TEST_CASE("F-curve counts are S(n, 4)") {
  for (int n = 4; n <= 9; ++n) CHECK(all_fcurves(n).size() == stirling2(n, 4));
  CHECK(all_fcurves(4).size() == 1);
  CHECK(all_fcurves(8).size() == 1701);
}

TEST_CASE("F-curve partitions are valid") {
  for (const auto& c : all_fcurves(7)) {
    CHECK((c.x & c.y) == 0);
    CHECK((c.x & c.z) == 0);
    CHECK((c.y & c.z) == 0);
    CHECK(c.x != 0);
    CHECK(c.y != 0);
    CHECK(c.z != 0);
    CHECK(((c.x | c.y | c.z) & ~lower_mask(7)) == 0);
  }
}

TEST_CASE("picard rank matches the dimension count and the F-curve span") {
  for (int n = 4; n <= 9; ++n) CHECK(picard_rank(n) == (1 << (n - 1)) - 1 - n * (n - 1) / 2);
  for (int n = 4; n <= 7; ++n) CHECK(fcurve_matrix_rank(n) == static_cast<std::size_t>(picard_rank(n)));
}

TEST_CASE("Keel relations pair to zero with every F-curve") {
  for (int n = 5; n <= 7; ++n) {
    auto rels = keel_relations(n);
    CHECK(rels.size() == static_cast<std::size_t>((n - 1) + (n - 1) * (n - 2) / 2));
    for (const auto& r : rels) {
      auto f = r.as_fn(n);
      CHECK_FALSE(f.is_zero());
      for (const auto& c : all_fcurves(n)) CHECK(pair_fcurve(f, c) == 0);
    }
  }
}

TEST_CASE("pairing through curve classes agrees with the direct pairing") {
  std::mt19937_64 rng(3);
  for (int n = 4; n <= 7; ++n)
    for (int t = 0; t < 5; ++t) {
      auto f = random_divisor(n, rng);
      for (const auto& c : all_fcurves(n)) CHECK(fcurve_class(c).pair(f) == pair_fcurve(f, c));
    }
}

TEST_CASE("classes_equal modulo Keel relations") {
  std::mt19937_64 rng(5);
  const int n = 6;
  auto rels = keel_relations(n);
  for (int t = 0; t < 20; ++t) {
    auto f = random_divisor(n, rng);
    auto g = f;
    for (const auto& r : rels) g += Rational(static_cast<int>(rng() % 7) - 3) * r.as_fn(n);
    CHECK(classes_equal(f, g));
    auto h = f;
    h.set(Subset::of(n, {1, 2}), f[Subset::of(n, {1, 2}).mask()] + 1);
    CHECK_FALSE(classes_equal(f, h));
  }
}

TEST_CASE("is_fnef_divisor finds a negative F-curve") {
  std::mt19937_64 rng(9);
  int seen_bad = 0;
  for (int t = 0; t < 50; ++t) {
    auto f = random_divisor(6, rng, 2);
    auto check = is_fnef_divisor(f);
    bool brute = true;
    for (const auto& c : all_fcurves(6))
      if (pair_fcurve(f, c) < 0) brute = false;
    CHECK(check.fnef == brute);
    if (!check.fnef) {
      ++seen_bad;
      REQUIRE(check.violation.has_value());
      CHECK(pair_fcurve(f, *check.violation) == check.violation_value);
      CHECK(check.violation_value < 0);
    }
  }
  CHECK(seen_bad > 0);
  CHECK(is_fnef_divisor(DivisorClass(6)).fnef);
}

TEST_CASE("conventional form reconstructs the pairings") {
  std::mt19937_64 rng(13);
  const int n = 6;
  for (int t = 0; t < 10; ++t) {
    auto f = random_divisor(n, rng);
    auto form = conventional_form(f);
    CHECK(form.psi.size() == static_cast<std::size_t>(n));
    // D = sum a_k psi_k + sum b_S Delta_S; check it on F-curve classes.
    for (const auto& c : all_fcurves(n)) {
      auto cls = fcurve_class(c);
      Rational value = 0;
      for (int k = 1; k <= n; ++k) value += form.psi[k - 1] * cls.psi(k);
      for (const auto& [s, b] : form.boundary) value += b * cls.delta(s);
      CHECK(value == pair_fcurve(f, c));
    }
  }
}

TEST_CASE("divisor domain checks") {
  CHECK_THROWS_AS(DivisorClass(3), DomainError);
  DivisorClass f(5);
  CHECK_THROWS_AS(f.set(Subset::of(6, {1, 2}), 1), DomainError);
}

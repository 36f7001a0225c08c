#include <doctest.h>

#include <random>

#include "fcone/error.hpp"
#include "fcone/fnef.hpp"

using namespace fcone;

namespace {

std::int64_t md(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

// <i>_m (m - <i>_m), evaluated without the library.
std::int64_t a_value(std::int64_t m, std::int64_t i) {
  const auto r = md(i, m);
  return r * (m - r);
}

std::int64_t direct_bracket(const std::function<std::int64_t(std::int64_t)>& f, std::int64_t x, std::int64_t y,
                            std::int64_t z) {
  return f(x) + f(y) + f(z) + f(x + y + z) - f(x + y) - f(x + z) - f(y + z);
}

std::int64_t t_value(std::int64_t m, std::int64_t x) {
  std::int64_t s = 0;
  for (std::int64_t k = 1; k < m; ++k) s += a_value(m, k * x);
  return s;
}

// Supertotal on Z_N evaluated from CRT components.
std::int64_t st_value(const std::vector<int>& primes, std::int64_t x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    s += t_value(primes[i], x);
    for (std::size_t j = i + 1; j < primes.size(); ++j) s += t_value(primes[i] * primes[j], x);
  }
  return s;
}

SubsetMask support_of(const std::vector<int>& primes, std::int64_t x) {
  SubsetMask s = 0;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (md(x, primes[i]) != 0) s |= SubsetMask{1} << (i + 1);
  return s;
}

}  // namespace

TEST_CASE("bracket closed form of A_m against direct evaluation") {
  for (int m = 2; m <= 24; ++m) {
    auto a = standard_A(m);
    for (int x = 0; x < m; ++x) {
      CHECK(a(x) == a_value(m, x));
      for (int y = 0; y < m; ++y)
        for (int z = 0; z < m; ++z) {
          const auto direct = direct_bracket([m](std::int64_t v) { return a_value(m, v); }, x, y, z);
          CHECK(bracket(a, x, y, z) == direct);
          CHECK(bracket_closed_form_A(m, x, y, z) == direct);
        }
    }
  }
}

TEST_CASE("standard and total functions are F-nef") {
  for (int m = 2; m <= 20; ++m) {
    CHECK(standard_A(m).is_symmetric());
    CHECK(is_fnef_fn(standard_A(m)).ok);
    auto t = total_T(m);
    for (int x = 0; x < m; ++x) CHECK(t(x) == t_value(m, x));
    CHECK(is_fnef_fn(t).ok);
  }
}

TEST_CASE("improve-once positivity of T_m against the direct table") {
  for (int m = 2; m <= 18; ++m) {
    std::uint64_t nondeg = 0;
    for (int x = 1; x < m; ++x)
      for (int y = 1; y < m; ++y)
        for (int z = 1; z < m; ++z) {
          if (md(x + y + z, m) == 0) continue;
          ++nondeg;
          CHECK(direct_bracket([m](std::int64_t v) { return t_value(m, v); }, x, y, z) > 0);
        }
    auto scan = improve_once_check(m);
    CHECK(scan.ok);
    CHECK(scan.triples == nondeg);
  }
}

TEST_CASE("negated standard function is refuted with a witness triple") {
  for (int m = 3; m <= 12; ++m) {
    auto f = Rational(-1) * standard_A(m);
    auto scan = is_fnef_fn(f);
    CHECK_FALSE(scan.ok);
    REQUIRE(scan.violation.has_value());
    const auto [x, y, z] = *scan.violation;
    CHECK(bracket(f, x, y, z) == scan.violation_value);
    CHECK(scan.violation_value < 0);
  }
}

TEST_CASE("budget is enforced") {
  CHECK_THROWS_AS(is_fnef_fn(standard_A(100), 999'999), BudgetExceeded);
  CHECK_NOTHROW(is_fnef_fn(standard_A(100), 1'000'000));
}

TEST_CASE("sampling never contradicts an exhaustive scan") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const int m = 3 + static_cast<int>(rng() % 12);
    std::vector<Rational> v(m);
    for (int i = 1; i <= m / 2; ++i) v[i] = v[m - i] = static_cast<int>(rng() % 9);
    CyclicFn f(m, v);
    auto full = is_fnef_fn(f);
    auto sampled = sample_fnef_fn(f, 2000, rng());
    if (full.ok) CHECK(sampled.ok);
    if (!sampled.ok) CHECK_FALSE(full.ok);
  }
}

TEST_CASE("supertotal equality characterization against a direct oracle") {
  for (const auto& primes : {std::vector<int>{2, 3}, std::vector<int>{2, 5}, std::vector<int>{2, 3, 5}}) {
    std::int64_t order = 1;
    for (int p : primes) order *= p;
    auto st = supertotal(primes);
    for (std::int64_t x = 0; x < order; ++x) CHECK(st(x) == st_value(primes, x));
    std::uint64_t equalities = 0, nondeg = 0;
    bool holds = true;
    for (std::int64_t x = 1; x < order; ++x)
      for (std::int64_t y = 1; y < order; ++y)
        for (std::int64_t z = 1; z < order; ++z) {
          const std::int64_t w = md(-(x + y + z), order);
          if (w == 0) continue;
          ++nondeg;
          const auto b = direct_bracket([&](std::int64_t v) { return st_value(primes, v); }, x, y, z);
          const auto sx = support_of(primes, x), sy = support_of(primes, y), sz = support_of(primes, z),
                     sw = support_of(primes, w);
          auto disjoint3 = [](SubsetMask a, SubsetMask b2, SubsetMask c) {
            return a && b2 && c && !(a & b2) && !(a & c) && !(b2 & c);
          };
          const bool pred = disjoint3(sx, sy, sz) || disjoint3(sx, sy, sw) || disjoint3(sx, sz, sw) || disjoint3(sy, sz, sw);
          CHECK(pred == some_triple_disjoint(sx, sy, sz, sw));
          if (b < 0 || (b == 0) != pred) holds = false;
          if (b == 0) ++equalities;
        }
    auto r = supertotal_equality_characterization(primes);
    CHECK(r.holds == holds);
    CHECK(r.nondegenerate == nondeg);
    CHECK(r.equalities == equalities);
    CHECK(r.triples == static_cast<std::uint64_t>(order * order * order));
  }
}

TEST_CASE("random symmetric F-nef functions") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int m = 4 + static_cast<int>(seed % 9);
    auto f = random_symmetric_fnef_fn(m, seed);
    CHECK(f.modulus() == m);
    CHECK(f.is_symmetric());
    CHECK(f(0) == 0);
    CHECK(is_fnef_fn(f).ok);
    CHECK(f == random_symmetric_fnef_fn(m, seed));
  }
}

TEST_CASE("product groups") {
  ProductGroup g({2, 3, 5});
  CHECK(g.order() == 30);
  for (std::int64_t x = 0; x < 30; ++x) {
    CHECK(g.from_components({g.component(x, 0), g.component(x, 1), g.component(x, 2)}) == x);
    CHECK(g.support(x) == support_of({2, 3, 5}, x));
  }
  CHECK_THROWS_AS(ProductGroup({2, 4}), DomainError);
  CHECK_THROWS_AS(ProductGroup({3, 3}), DomainError);
  CHECK(first_primes(5) == std::vector<int>{2, 3, 5, 7, 11});
}

TEST_CASE("integer tables") {
  auto t = integer_table(standard_A(9));
  REQUIRE(t.has_value());
  CHECK((*t)[4] == 20);
  CyclicFn half(3, {0, Rational(1, 2), Rational(1, 2)});
  CHECK_FALSE(integer_table(half).has_value());
}

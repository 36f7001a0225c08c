#include <doctest.h>

#include <random>

#include "fcone/error.hpp"
#include "fcone/serialize.hpp"

using namespace fcone;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  Rational q(static_cast<long>(rng() % 2001) - 1000, static_cast<unsigned long>(1 + rng() % 60));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(rational_json(Rational(3)) == "3/1");
  CHECK(rational_json(Rational(-3, 2)) == "-3/2");
  CHECK(rational_from_json("7/21") == Rational(1, 3));
  CHECK(rational_from_json(5) == 5);
  CHECK(rational_from_json("-4") == -4);
  CHECK_THROWS_AS(rational_from_json("1/0"), DomainError);
  CHECK_THROWS_AS(rational_from_json("x"), DomainError);
  CHECK_THROWS_AS(rational_from_json(0.5), DomainError);
  std::mt19937_64 rng(89);
  for (int t = 0; t < 200; ++t) {
    auto q = random_rational(rng);
    CHECK(rational_from_json(Json::parse(rational_json(q).dump())) == q);
  }
}

TEST_CASE("subsets") {
  CHECK(subset_json(0b10110) == Json({1, 2, 4}));
  CHECK(subset_from_json(Json({4, 1, 2}), 6) == 0b10110);
  CHECK_THROWS_AS(subset_from_json(Json({1, 1}), 6), DomainError);
  CHECK_THROWS_AS(subset_from_json(Json({6}), 6), DomainError);
  CHECK_THROWS_AS(subset_from_json(Json::array(), 6), DomainError);
}

TEST_CASE("divisors round trip") {
  std::mt19937_64 rng(97);
  for (int n = 4; n <= 8; ++n) {
    DivisorClass f(n);
    for (const auto& s : sigma_elements(n))
      if (rng() % 3) f.set(s, random_rational(rng));
    auto j = divisor_json(f);
    CHECK(divisor_from_json(Json::parse(j.dump())) == f);
  }
  Json dup = {{"n", 5}, {"coeff", {{{"subset", {1, 2}}, {"value", "1"}}, {{"subset", {2, 1}}, {"value", "2"}}}}};
  CHECK_THROWS_AS(divisor_from_json(dup), DomainError);
  CHECK_THROWS_AS(divisor_from_json(Json{{"coeff", Json::array()}}), DomainError);
}

TEST_CASE("designs and curves round trip") {
  auto b = paley_biplane();
  CHECK(pbd_from_json(pbd_json(b)) == b);
  auto summary = pbd_summary_json(b);
  CHECK(summary["index"] == 2);
  CHECK(summary["effective"] == true);
  CHECK(summary["degrees"] == Json(std::vector<int>(11, 5)));
  auto c = pbd_to_curve(b);
  CHECK(curve_from_json(Json::parse(curve_json(c).dump())) == c);
  PBD unbalanced(5);
  unbalanced.add(0b110, 1);
  CHECK(pbd_summary_json(unbalanced).contains("unbalanced"));
  CHECK_THROWS_AS(pbd_from_json(Json{{"n", 5}, {"blocks", {{{"set", {1}}, {"mult", 1}}}}}), DomainError);
}

TEST_CASE("cyclic functions") {
  auto a = standard_A(9);
  CHECK(cyclic_fn_from_json(cyclic_fn_json(a)) == a);
  CHECK(cyclic_fn_from_json(Json({"0", "2", "2"})) == standard_A(3));
  CHECK_THROWS_AS(cyclic_fn_from_json(Json{{"modulus", 4}, {"values", {"0", "1"}}}), DomainError);
}

TEST_CASE("systems and certificates") {
  RationalSystem sys;
  sys.add_variable("x");
  sys.add_variable("y", VarKind::Free);
  sys.add_le({{0, 1}, {1, 1}}, Rational(5, 2));
  sys.add_eq({{1, 2}}, 1);
  sys.set_objective({-1, 0});
  auto j = system_json(sys);
  auto back = system_from_json(Json::parse(j.dump()));
  CHECK(system_json(back) == j);
  auto opt = optimize(back);
  REQUIRE(opt.status == OptimizeResult::Status::Optimal);
  CHECK(opt.value == -2);
  auto cj = certificate_json(opt.certificate, &back);
  CHECK(cj["kind"] == "witness");
  CHECK(cj["verified"] == true);
  CHECK(cj["assignment"]["x"] == "2/1");

  Json ge = {{"variables", {{{"name", "a"}}}}, {"constraints", {{{"coeffs", {{"a", 1}}}, {"sense", "ge"}, {"rhs", "3"}}}}};
  auto gs = system_from_json(ge);
  CHECK(feasible(gs).is_witness());
  CHECK_THROWS_AS(system_from_json(Json{{"variables", {{{"name", "a"}}}}, {"constraints", {{{"coeffs", {{"b", 1}}}, {"sense", "le"}, {"rhs", 0}}}}}),
                  MalformedSystem);
  CHECK_THROWS_AS(system_from_json(Json{{"variables", {{{"name", "a"}}, {{"name", "a"}}}}, {"constraints", Json::array()}}), MalformedSystem);
  CHECK_THROWS_AS(system_from_json(Json{{"variables", {{{"name", "a"}, {"kind", "int"}}}}, {"constraints", Json::array()}}), MalformedSystem);
  CHECK_THROWS_AS(system_from_json(Json{{"variables", {{{"name", "a"}}}}, {"constraints", {{{"coeffs", {{"a", 1}}}, {"sense", "lt"}, {"rhs", 0}}}}}),
                  MalformedSystem);
  CHECK_THROWS_AS(system_from_json(Json::array()), MalformedSystem);
}

TEST_CASE("weights round trip") {
  WeightFn w(5);
  w.set(1, 2, Rational(1, 3));
  w.set(4, 5, -2);
  CHECK(weight_from_json(Json::parse(weight_json(w).dump())) == w);
}

TEST_CASE("reports are plain JSON") {
  auto s = stratal_json(stratal_effectivity_symmetric(standard_A(7)));
  CHECK(s["success"] == true);
  CHECK(s["strata"].is_array());
  auto r = search_json(verify_all_supports(5));
  CHECK(r["n"] == 5);
  CHECK(r["failures"] == Json::array());
  CHECK(r["nodes_visited"] == 23);
  auto rays = pbd_rays_json(pbd_extremal_rays(5));
  CHECK(rays["orbit_count"] == 2);
  auto lift = lift_json(fcone::lift(random_fnef_divisor(4, 2), {2, 3, 5}));
  CHECK(lift["verified"] == true);
  CHECK(lift["N"] == 30);
}

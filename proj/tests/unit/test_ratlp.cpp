#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fcone/error.hpp"
#include "fcone/linalg.hpp"
#include "fcone/ratlp.hpp"

using namespace fcone;

namespace {

struct Ineq {
  std::vector<Rational> a;  // a.x <= b
  Rational b;
};

// Fourier-Motzkin elimination over all variables.
bool fm_feasible(std::vector<Ineq> rows, int dim) {
  for (int k = 0; k < dim; ++k) {
    std::vector<Ineq> pos, neg, next;
    for (auto& r : rows) {
      if (r.a[k] > 0) pos.push_back(r);
      else if (r.a[k] < 0) neg.push_back(r);
      else next.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        const Rational sp = -q.a[k], sq = p.a[k];
        Ineq c{std::vector<Rational>(dim), sp * p.b + sq * q.b};
        for (int i = 0; i < dim; ++i) c.a[i] = sp * p.a[i] + sq * q.a[i];
        next.push_back(std::move(c));
      }
    rows = std::move(next);
  }
  return std::all_of(rows.begin(), rows.end(), [](const Ineq& r) { return r.b >= 0; });
}

struct RandomSystem {
  RationalSystem sys;
  std::vector<Ineq> ineqs;
  int dim;
};

RandomSystem random_system(std::mt19937_64& rng, int dim, int rows, bool with_eq) {
  RandomSystem out{RationalSystem{}, {}, dim};
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int i = 0; i < dim; ++i) {
    const bool nonneg = rng() % 2;
    out.sys.add_variable("x" + std::to_string(i), nonneg ? VarKind::NonNegative : VarKind::Free);
    if (nonneg) {
      Ineq r{std::vector<Rational>(dim), 0};
      r.a[i] = -1;
      out.ineqs.push_back(r);
    }
  }
  for (int r = 0; r < rows; ++r) {
    std::vector<Rational> a(dim);
    for (auto& v : a) v = coef(rng);
    const Rational b = coef(rng);
    const int kind = with_eq ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 2);
    auto neg = a;
    for (auto& v : neg) v = -v;
    if (kind == 0) {
      out.sys.add_le_dense(a, b);
      out.ineqs.push_back({a, b});
    } else if (kind == 1) {
      out.sys.add_ge_dense(a, b);
      out.ineqs.push_back({neg, -b});
    } else {
      out.sys.add_eq_dense(a, b);
      out.ineqs.push_back({a, b});
      out.ineqs.push_back({neg, -b});
    }
  }
  return out;
}

// Minimum of c.x over a bounded polytope by vertex enumeration.
std::optional<Rational> vertex_min(const std::vector<Ineq>& rows, const std::vector<Rational>& c, int dim) {
  std::optional<Rational> best;
  const int m = static_cast<int>(rows.size());
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + dim, true);
  do {
    RationalMatrix aug;
    for (int i = 0; i < m; ++i)
      if (mask[i]) {
        auto row = rows[i].a;
        row.push_back(rows[i].b);
        aug.push_back(row);
      }
    auto ech = row_reduce(aug, dim + 1);
    if (ech.pivots.size() != static_cast<std::size_t>(dim) || ech.pivots.back() == dim) continue;
    std::vector<Rational> x(dim);
    for (int r = 0; r < dim; ++r) x[ech.pivots[r]] = ech.rows[r][dim];
    bool ok = true;
    for (const auto& row : rows) {
      Rational v = 0;
      for (int i = 0; i < dim; ++i) v += row.a[i] * x[i];
      if (v > row.b) ok = false;
    }
    if (!ok) continue;
    Rational val = 0;
    for (int i = 0; i < dim; ++i) val += c[i] * x[i];
    if (!best || val < *best) best = val;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

// Extremal rays of {x : A x >= 0, E x = 0} by brute force: a ray spans the
// kernel of the equalities together with some subset of tight inequalities.
std::set<std::vector<Integer>> brute_rays(const ConeHRep& h) {
  std::set<std::vector<Integer>> out;
  const int m = static_cast<int>(h.inequalities.size());
  for (int need = 0; need <= std::min(m, h.dim - 1); ++need) {
    std::vector<bool> mask(m, false);
    std::fill(mask.begin(), mask.begin() + need, true);
    do {
      RationalMatrix a = h.equalities;
      for (int i = 0; i < m; ++i)
        if (mask[i]) a.push_back(h.inequalities[i]);
      auto ns = nullspace(a, h.dim);
      if (ns.size() != 1) continue;
      for (int sign : {1, -1}) {
        std::vector<Rational> v = ns[0];
        for (auto& e : v) e *= sign;
        bool ok = true;
        for (const auto& row : h.inequalities) {
          Rational s = 0;
          for (int i = 0; i < h.dim; ++i) s += row[i] * v[i];
          if (s < 0) ok = false;
        }
        if (ok) out.insert(primitive_integer_vector(v));
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return out;
}

}  // namespace

TEST_CASE("feasibility agrees with Fourier-Motzkin") {
  std::mt19937_64 rng(47);
  int feasible_count = 0, infeasible_count = 0;
  for (int t = 0; t < 400; ++t) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    auto rs = random_system(rng, dim, 2 + static_cast<int>(rng() % 5), true);
    const bool oracle = fm_feasible(rs.ineqs, dim);
    SimplexStats stats;
    auto cert = feasible(rs.sys, &stats);
    CHECK(cert.is_witness() == oracle);
    CHECK(verify(rs.sys, cert));
    if (cert.is_witness()) CHECK(verify_witness(rs.sys, cert.values));
    else CHECK(verify_farkas(rs.sys, cert.values));
    (oracle ? feasible_count : infeasible_count)++;
  }
  CHECK(feasible_count > 50);
  CHECK(infeasible_count > 50);
}

TEST_CASE("guided feasibility agrees with the exact solver") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 200; ++t) {
    auto rs = random_system(rng, 2 + static_cast<int>(rng() % 4), 3 + static_cast<int>(rng() % 8), true);
    auto exact = feasible(rs.sys);
    auto guided = feasible_guided(rs.sys);
    CHECK(exact.kind == guided.kind);
    CHECK(verify(rs.sys, guided));
  }
}

TEST_CASE("adding rows never restores feasibility") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 100; ++t) {
    auto rs = random_system(rng, 3, 4, false);
    bool was_feasible = feasible(rs.sys).is_witness();
    for (int extra = 0; extra < 4; ++extra) {
      std::vector<Rational> a(3);
      for (auto& v : a) v = static_cast<int>(rng() % 7) - 3;
      rs.sys.add_le_dense(a, static_cast<int>(rng() % 5) - 2);
      const bool now = feasible(rs.sys).is_witness();
      if (!was_feasible) CHECK_FALSE(now);
      was_feasible = now;
    }
  }
}

TEST_CASE("optimization agrees with vertex enumeration") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 150; ++t) {
    const int dim = 2 + static_cast<int>(rng() % 2);
    auto rs = random_system(rng, dim, 3, false);
    for (int i = 0; i < dim; ++i)
      for (int sign : {1, -1}) {
        std::vector<Rational> a(dim);
        a[i] = sign;
        rs.sys.add_le_dense(a, 4);
        rs.ineqs.push_back({a, 4});
      }
    std::vector<Rational> c(dim);
    for (auto& v : c) v = static_cast<int>(rng() % 7) - 3;
    rs.sys.set_objective(c);
    auto opt = optimize(rs.sys);
    auto oracle = vertex_min(rs.ineqs, c, dim);
    if (!oracle) {
      CHECK(opt.status == OptimizeResult::Status::Infeasible);
      CHECK(verify_farkas(rs.sys, opt.certificate.values));
    } else {
      REQUIRE(opt.status == OptimizeResult::Status::Optimal);
      CHECK(opt.value == *oracle);
      CHECK(verify_witness(rs.sys, opt.certificate.values));
    }
  }
}

TEST_CASE("unbounded objectives are reported") {
  RationalSystem sys;
  sys.add_variable("x", VarKind::Free);
  sys.add_le({{0, 1}}, 3);
  sys.set_objective({1});
  CHECK(optimize(sys).status == OptimizeResult::Status::Unbounded);
  sys.set_objective({-1});
  auto opt = optimize(sys);
  CHECK(opt.status == OptimizeResult::Status::Optimal);
  CHECK(opt.value == -3);
}

TEST_CASE("degenerate systems terminate") {
  // Every row is tight at the origin.
  const int d = 6;
  RationalSystem sys;
  for (int i = 0; i < d; ++i) sys.add_variable("x" + std::to_string(i));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      SparseRow row{{i, 1}};
      if (j != i) row.push_back({j, 1});
      sys.add_le(row, 0);
    }
    sys.add_le({{i, 1}}, 0);
  }
  std::vector<Rational> c(d, -1);
  sys.set_objective(c);
  SimplexStats stats;
  auto opt = optimize(sys, &stats);
  CHECK(opt.status == OptimizeResult::Status::Optimal);
  CHECK(opt.value == 0);
}

TEST_CASE("malformed systems are rejected") {
  RationalSystem sys;
  sys.add_variable("x");
  sys.add_le({{3, 1}}, 1);
  CHECK_THROWS_AS(sys.validate(), MalformedSystem);
  RationalSystem obj;
  obj.add_variable("x");
  obj.set_objective({1, 2});
  CHECK_THROWS_AS(obj.validate(), MalformedSystem);
}

TEST_CASE("cone membership") {
  std::vector<std::vector<Rational>> gens{{1, 0}, {1, 1}};
  auto in = cone_member({3, 1}, gens);
  REQUIRE(in.is_witness());
  CHECK(in.values[0] * 1 + in.values[1] * 1 == 3);
  auto out = cone_member({0, 1}, gens);
  REQUIRE(out.is_farkas());
  const auto& y = out.values;
  for (const auto& g : gens) CHECK(y[0] * g[0] + y[1] * g[1] >= 0);
  CHECK(y[1] < 0);
  std::vector<SparseRow> sparse{{{0, 1}}, {{0, 1}, {1, 1}}};
  CHECK(cone_member({3, 1}, sparse).is_witness());
  CHECK(cone_member({0, 1}, sparse).is_farkas());
}

TEST_CASE("double description agrees with brute-force rays") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 60; ++t) {
    const int dim = 3 + static_cast<int>(rng() % 2);
    ConeHRep h;
    h.dim = dim;
    // The orthant keeps the cone pointed.
    for (int i = 0; i < dim; ++i) {
      std::vector<Rational> e(dim);
      e[i] = 1;
      h.inequalities.push_back(e);
    }
    for (int r = 0; r < 3; ++r) {
      std::vector<Rational> a(dim);
      for (auto& v : a) v = static_cast<int>(rng() % 7) - 3;
      h.inequalities.push_back(a);
    }
    if (rng() % 3 == 0) {
      std::vector<Rational> e(dim);
      for (auto& v : e) v = static_cast<int>(rng() % 3) - 1;
      h.equalities.push_back(e);
    }
    auto got = extremal_rays(h);
    std::set<std::vector<Integer>> mine(got.vrep.rays.begin(), got.vrep.rays.end());
    CHECK(mine.size() == got.vrep.rays.size());
    CHECK(mine == brute_rays(h));
  }
}

TEST_CASE("double description with symmetry") {
  // The cone over a square, with its dihedral symmetry on coordinates 0 and 1.
  ConeHRep h;
  h.dim = 3;
  h.inequalities = {{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}};
  auto plain = extremal_rays(h);
  CHECK(plain.vrep.rays.size() == 4);
  CoordinateAction swap{{{0, 1, 2}, {1, 0, 2}}};
  // The swap of coordinates fixes the cone, so rays fall into orbits of size 1 or 2.
  auto sym = extremal_rays(h, &swap);
  std::size_t covered = 0;
  for (const auto& o : sym.orbits) covered += o.size;
  CHECK(covered == 4);
  ConeHRep line;
  line.dim = 2;
  line.inequalities = {{1, 0}};
  CHECK_THROWS_AS(extremal_rays(line), NotPointed);
  DDOptions tiny;
  tiny.max_rays = 2;
  ConeHRep orthant;
  orthant.dim = 5;
  for (int i = 0; i < 5; ++i) {
    std::vector<Rational> e(5);
    e[i] = 1;
    orthant.inequalities.push_back(e);
  }
  orthant.inequalities.push_back({1, -1, 1, -1, 1});
  CHECK_THROWS_AS(extremal_rays(orthant, nullptr, tiny), BudgetExceeded);
}

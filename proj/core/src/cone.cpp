#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "fcone/error.hpp"
#include "fcone/linalg.hpp"
#include "fcone/ratlp.hpp"

namespace fcone {

std::vector<Integer> apply_action(const std::vector<int>& perm, const std::vector<Integer>& v) {
  std::vector<Integer> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[perm[k]] = v[k];
  return out;
}

namespace {

using IntVec = std::vector<Integer>;

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }
  bool contains(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if ((o.w_[k] & ~w_[k]) != 0) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct Ray {
  IntVec y;
  Bits zeros;
};

IntVec primitive(std::vector<Rational> v) { return primitive_integer_vector(v); }

void make_primitive(IntVec& v) {
  Integer g = gcd_of(v);
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

Integer dot(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

}  // namespace

ExtremalRays extremal_rays(const ConeHRep& hrep, const CoordinateAction* symmetry, const DDOptions& options) {
  const int dim = hrep.dim;
  for (const auto& row : hrep.inequalities)
    if (static_cast<int>(row.size()) != dim) throw DomainError("inequality row has the wrong length");
  for (const auto& row : hrep.equalities)
    if (static_cast<int>(row.size()) != dim) throw DomainError("equality row has the wrong length");

  // x = sum_i y_i K_i parametrizes the equality subspace.
  RationalMatrix kernel;
  if (hrep.equalities.empty()) {
    for (int i = 0; i < dim; ++i) {
      std::vector<Rational> e(dim, Rational(0));
      e[i] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = nullspace(hrep.equalities, dim);
  }
  std::vector<IntVec> basis;
  for (auto& k : kernel) basis.push_back(primitive(k));
  const int d = static_cast<int>(basis.size());
  ExtremalRays out;
  out.vrep.dim = dim;
  if (d == 0) return out;

  std::vector<IntVec> rows;
  for (const auto& a : hrep.inequalities) {
    std::vector<Rational> r(d);
    for (int i = 0; i < d; ++i) {
      Rational s = 0;
      for (int k = 0; k < dim; ++k)
        if (a[k] != 0 && basis[i][k] != 0) s += a[k] * Rational(basis[i][k]);
      r[i] = s;
    }
    auto iv = primitive(r);
    if (std::any_of(iv.begin(), iv.end(), [](const Integer& x) { return x != 0; })) rows.push_back(std::move(iv));
  }
  const std::size_t nrows = rows.size();

  // Greedily pick d independent rows; failure means the cone has a lineality space.
  std::vector<int> chosen;
  {
    RationalMatrix reduced;
    std::vector<int> pivots;
    for (std::size_t r = 0; r < nrows && static_cast<int>(chosen.size()) < d; ++r) {
      std::vector<Rational> v(rows[r].begin(), rows[r].end());
      for (std::size_t k = 0; k < reduced.size(); ++k) {
        if (v[pivots[k]] == 0) continue;
        Rational f = v[pivots[k]];
        for (int c = 0; c < d; ++c) v[c] -= f * reduced[k][c];
      }
      int p = -1;
      for (int c = 0; c < d; ++c)
        if (v[c] != 0) {
          p = c;
          break;
        }
      if (p < 0) continue;
      Rational inv = 1 / v[p];
      for (auto& x : v) x *= inv;
      for (std::size_t k = 0; k < reduced.size(); ++k) {
        if (reduced[k][p] == 0) continue;
        Rational f = reduced[k][p];
        for (int c = 0; c < d; ++c) reduced[k][c] -= f * v[c];
      }
      reduced.push_back(std::move(v));
      pivots.push_back(p);
      chosen.push_back(static_cast<int>(r));
    }
  }
  if (static_cast<int>(chosen.size()) < d) throw NotPointed("cone contains a line");

  // Initial simplicial cone: rays are the columns of M^{-1}.
  std::vector<Ray> rays;
  {
    RationalMatrix aug(d, std::vector<Rational>(2 * d, Rational(0)));
    for (int i = 0; i < d; ++i) {
      for (int c = 0; c < d; ++c) aug[i][c] = rows[chosen[i]][c];
      aug[i][d + i] = 1;
    }
    auto ech = row_reduce(aug, 2 * d);
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> col(d);
      for (int i = 0; i < d; ++i) col[ech.pivots[i]] = ech.rows[i][d + j];
      Ray ray{primitive(col), Bits(nrows)};
      for (int i = 0; i < d; ++i)
        if (i != j) ray.zeros.set(chosen[i]);
      rays.push_back(std::move(ray));
    }
  }

  std::vector<char> done(nrows, 0);
  for (int r : chosen) done[r] = 1;
  std::size_t remaining = nrows - chosen.size();
  while (remaining > 0) {
    // Insert the row with the fewest candidate pairs next.
    int next = -1;
    std::size_t best = 0;
    std::vector<Integer> values, best_values;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (done[r]) continue;
      values.assign(rays.size(), Integer(0));
      std::size_t pos = 0, neg = 0;
      for (std::size_t k = 0; k < rays.size(); ++k) {
        values[k] = dot(rows[r], rays[k].y);
        pos += values[k] > 0;
        neg += values[k] < 0;
      }
      if (next < 0 || pos * neg < best) {
        next = static_cast<int>(r);
        best = pos * neg;
        best_values.swap(values);
      }
    }
    done[next] = 1;
    --remaining;
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> kept;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (best_values[k] > 0)
        pos.push_back(k);
      else if (best_values[k] < 0)
        neg.push_back(k);
    }
    std::vector<Ray> created;
    for (auto p : pos)
      for (auto q : neg) {
        Bits common = rays[p].zeros & rays[q].zeros;
        if (common.count() < d - 2) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t)
          if (t != p && t != q && rays[t].zeros.contains(common)) adjacent = false;
        if (!adjacent) continue;
        IntVec y(d);
        const Integer& ap = best_values[p];
        const Integer& aq = best_values[q];
        for (int i = 0; i < d; ++i) y[i] = ap * rays[q].y[i] - aq * rays[p].y[i];
        make_primitive(y);
        common.set(next);
        created.push_back({std::move(y), std::move(common)});
      }
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (best_values[k] < 0) continue;
      if (best_values[k] == 0) rays[k].zeros.set(next);
      kept.push_back(std::move(rays[k]));
    }
    for (auto& c : created) kept.push_back(std::move(c));
    rays.swap(kept);
    if (rays.size() > options.max_rays)
      throw BudgetExceeded("double description exceeded " + std::to_string(options.max_rays) + " rays");
  }

  std::set<IntVec> unique;
  for (const auto& ray : rays) {
    IntVec x(dim, Integer(0));
    for (int i = 0; i < d; ++i)
      if (ray.y[i] != 0)
        for (int k = 0; k < dim; ++k)
          if (basis[i][k] != 0) x[k] += ray.y[i] * basis[i][k];
    make_primitive(x);
    unique.insert(std::move(x));
  }
  out.vrep.rays.assign(unique.begin(), unique.end());
  for (const auto& x : out.vrep.rays) {
    for (const auto& a : hrep.inequalities) {
      Rational s = 0;
      for (int k = 0; k < dim; ++k) s += a[k] * Rational(x[k]);
      if (s < 0) throw InternalError("double description produced a ray outside the cone");
    }
    for (const auto& a : hrep.equalities) {
      Rational s = 0;
      for (int k = 0; k < dim; ++k) s += a[k] * Rational(x[k]);
      if (s != 0) throw InternalError("double description produced a ray off the subspace");
    }
  }

  if (symmetry) {
    std::map<IntVec, std::size_t> orbit_sizes;
    for (const auto& x : out.vrep.rays) {
      std::set<IntVec> images;
      for (const auto& perm : symmetry->perms) {
        if (static_cast<int>(perm.size()) != dim) throw DomainError("action has the wrong degree");
        images.insert(apply_action(perm, x));
      }
      for (const auto& img : images)
        if (!unique.count(img)) throw InternalError("ray set is not invariant under the supplied action");
      orbit_sizes.emplace(*images.begin(), images.size());
    }
    std::size_t total = 0;
    for (auto& [rep, size] : orbit_sizes) {
      out.orbits.push_back({rep, size});
      total += size;
    }
    if (total != out.vrep.rays.size()) throw InternalError("orbit sizes do not add up to the ray count");
  }
  return out;
}

}  // namespace fcone

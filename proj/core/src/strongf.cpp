#include "fcone/strongf.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "fcone/error.hpp"

namespace fcone {

int coord_popcount(CoordMask m) {
  return std::popcount(static_cast<std::uint64_t>(m)) + std::popcount(static_cast<std::uint64_t>(m >> 64));
}

std::string coord_hex(CoordMask m, int rho) {
  static constexpr char digits[] = "0123456789abcdef";
  const int width = std::max(1, (rho + 3) / 4);
  std::string out(width, '0');
  for (int k = 0; k < width; ++k) out[width - 1 - k] = digits[static_cast<unsigned>(m >> (4 * k)) & 0xF];
  return out;
}

CoordMask parse_coord_hex(const std::string& text, int rho) {
  if (text.empty() || text.size() > 32) throw DomainError("bad coordinate mask '" + text + "'");
  CoordMask m = 0;
  for (char ch : text) {
    int v;
    if (ch >= '0' && ch <= '9')
      v = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      v = ch - 'A' + 10;
    else
      throw DomainError("bad coordinate mask '" + text + "'");
    m = (m << 4) | static_cast<CoordMask>(v);
  }
  if (rho < 128 && (m >> rho) != 0) throw DomainError("coordinate mask '" + text + "' has bits past rho");
  return m;
}

BoundaryModel::BoundaryModel(int n) : n_(n), index_(n) {
  if (n < 4) throw DomainError("boundary model needs n >= 4");
  fcurves_ = all_fcurves(n);
  vectors_.reserve(fcurves_.size());
  for (const auto& f : fcurves_) {
    SparseRow row;
    auto v = fcurve_class(f).proper_vector(index_);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) row.emplace_back(static_cast<int>(k), v[k]);
    vectors_.push_back(std::move(row));
  }
}

std::vector<Rational> BoundaryModel::proper_vector(const CurveClass& c) const {
  if (c.n() != n_) throw DomainError("curve class has the wrong number of markings");
  return c.proper_vector(index_);
}

CoordMask BoundaryModel::full() const {
  const int r = rho();
  if (r > 128) throw DomainError("more than 128 boundary coordinates");
  return r == 128 ? ~CoordMask{0} : ((CoordMask{1} << r) - 1);
}

SupportSet::SupportSet(int n, CoordMask bits) : n_(n), bits_(bits) {
  if (n < 4 || n > kMaxSearchMarkings) throw DomainError("support sets need 4 <= n <= 8");
  const int rho = (1 << (n - 1)) - n - 1;
  if (rho < 128 && (bits >> rho) != 0) throw DomainError("support set has coordinates past rho");
}

SupportSet SupportSet::full(int n) {
  const int rho = (1 << (n - 1)) - n - 1;
  return SupportSet(n, (CoordMask{1} << rho) - 1);
}

SupportSet SupportSet::of(int n, const std::vector<SubsetMask>& blocks) {
  ProperIndex index(n);
  CoordMask m = 0;
  for (auto b : blocks) {
    int k = index.coord(b);
    if (k < 0) throw DomainError("support set member is not a proper subset");
    m |= CoordMask{1} << k;
  }
  return SupportSet(n, m);
}

std::vector<int> SupportSet::coords() const {
  std::vector<int> out;
  for (int k = 0; k < 128; ++k)
    if ((bits_ >> k) & 1U) out.push_back(k);
  return out;
}

namespace {

bool subset_of_mask(CoordMask a, CoordMask b) { return (a & ~b) == 0; }

// Pair-balance rows over the blocks indexed by `coords`: count(i,j) = count(1,2).
void add_balance_rows(RationalSystem& sys, const ProperIndex& index, const std::vector<int>& coords, int n) {
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (i == 1 && j == 2) continue;
      const SubsetMask pair = (SubsetMask{1} << i) | (SubsetMask{1} << j);
      SparseRow row;
      for (std::size_t v = 0; v < coords.size(); ++v) {
        const SubsetMask b = index.subset(coords[v]);
        int c = ((b & pair) == pair) - ((b & 0b110U) == 0b110U);
        if (c != 0) row.emplace_back(static_cast<int>(v), Rational(c));
      }
      sys.add_eq(std::move(row), 0);
    }
}

}  // namespace

SupportDecision supports_effective_pbd(const BoundaryModel& model, const SupportSet& j) {
  if (j.n() != model.n()) throw DomainError("support set and model disagree on n");
  const auto coords = j.coords();
  RationalSystem sys;
  for (int k : coords) sys.add_variable("m" + std::to_string(k));
  add_balance_rows(sys, model.index(), coords, model.n());
  SparseRow total;
  for (std::size_t v = 0; v < coords.size(); ++v) total.emplace_back(static_cast<int>(v), Rational(1));
  sys.add_eq(std::move(total), 1);
  SupportDecision out{feasible(sys), std::nullopt};
  if (out.supports()) {
    auto ints = primitive_integer_vector(out.certificate.values);
    PBD p(model.n());
    for (std::size_t v = 0; v < coords.size(); ++v)
      if (ints[v] != 0) p.add(model.index().subset(coords[v]), to_int64(ints[v]));
    if (!is_effective(p) || p.blocks().empty()) throw InternalError("support witness is not an effective PBD");
    pbd_index(p);
    out.pbd = std::move(p);
  } else {
    // Column of coordinate k: its balance-row entries and 1 in the total row.
    const auto& y = out.certificate.values;
    const int n = model.n();
    for (std::size_t k = 0; k < model.index().size(); ++k) {
      const SubsetMask b = model.index().subset(k);
      Rational dot = y.back();
      int row = 0;
      for (int i = 1; i < n; ++i)
        for (int jj = i + 1; jj < n; ++jj) {
          if (i == 1 && jj == 2) continue;
          const SubsetMask pair = (SubsetMask{1} << i) | (SubsetMask{1} << jj);
          const int c = ((b & pair) == pair) - ((b & 0b110U) == 0b110U);
          if (c != 0) dot += c * y[row];
          ++row;
        }
      if (dot >= 0) out.refuted |= CoordMask{1} << k;
    }
    if (!subset_of_mask(j.bits(), out.refuted)) throw InternalError("support refutation does not cover J");
  }
  return out;
}

CriticalDecision is_critical(const BoundaryModel& model, const SupportSet& j) {
  if (j.n() != model.n()) throw DomainError("support set and model disagree on n");
  const int rho = model.rho();
  const auto& vecs = model.fcurve_vectors();
  RationalSystem sys;
  std::vector<SparseRow> rows(rho);
  SparseRow total;
  for (std::size_t a = 0; a < vecs.size(); ++a) {
    const int var = sys.add_variable("t" + std::to_string(a));
    total.emplace_back(var, Rational(1));
    for (const auto& [k, v] : vecs[a])
      if (!j.contains(k)) rows[k].emplace_back(var, v);
  }
  sys.add_eq(std::move(total), 1);
  for (int k = 0; k < rho; ++k)
    if (!j.contains(k)) sys.add_le(std::move(rows[k]), 0);
  CriticalDecision out{feasible_guided(sys), {}};
  if (out.critical()) {
    out.combination.assign(rho, Rational(0));
    for (std::size_t a = 0; a < vecs.size(); ++a) {
      const auto& t = out.certificate.values[a];
      if (t == 0) continue;
      for (const auto& [k, v] : vecs[a]) out.combination[k] += t * v;
    }
    for (int k = 0; k < rho; ++k)
      if (!j.contains(k) && out.combination[k] > 0) throw InternalError("criticality witness is positive off J");
  }
  return out;
}

MembershipDecision fcone_member(const BoundaryModel& model, const CurveClass& c) {
  if (!c.keel_consistent()) throw DomainError("curve class does not satisfy the Keel relations");
  MembershipDecision out{cone_member(model.proper_vector(c), model.fcurve_vectors()), std::nullopt};
  if (!out.member()) {
    DivisorClass y(model.n());
    for (std::size_t k = 0; k < model.index().size(); ++k) y.set(model.index().subset(k), -out.certificate.values[k]);
    if (!is_fnef_divisor(y).fnef || c.pair(y) >= 0) throw InternalError("membership refutation failed to verify");
    out.separator = std::move(y);
  }
  return out;
}

MembershipDecision fcone_member(const CurveClass& c) { return fcone_member(BoundaryModel(c.n()), c); }

bool witness_pair_check(const CurveClass& x, const DivisorClass& y) {
  if (x.n() != y.n()) return false;
  const int n = x.n();
  for (SubsetMask s = 2; s <= lower_mask(n); s += 2) {
    const int size = popcount(s);
    if (size >= 2 && size <= n - 2 && x[s] < 0) return false;
  }
  if (!is_fnef_divisor(y).fnef) return false;
  return x.pair(y) < 0;
}

namespace {

// Rank over Z/p; it bounds the rank over Q from below.
std::size_t rank_mod_p(const std::vector<SparseRow>& rows, int cols) {
  constexpr std::int64_t p = 2147483647;
  auto inverse = [](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e > 0) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::vector<std::vector<std::int64_t>> basis(cols);  // basis[c] has pivot c, normalized
  std::size_t rank = 0;
  for (const auto& row : rows) {
    std::vector<std::int64_t> v(cols, 0);
    for (const auto& [k, x] : row) v[k] = ((to_int64(x) % p) + p) % p;
    for (int c = 0; c < cols; ++c) {
      if (v[c] == 0) continue;
      if (basis[c].empty()) {
        const std::int64_t inv = inverse(v[c]);
        for (auto& e : v) e = e * inv % p;
        basis[c] = std::move(v);
        ++rank;
        break;
      }
      const std::int64_t f = v[c];
      for (int t = c; t < cols; ++t) v[t] = ((v[t] - f * basis[c][t]) % p + p) % p;
    }
  }
  return rank;
}

}  // namespace

DegeneracyReport check_nondegenerate(const BoundaryModel& model) {
  DegeneracyReport r;
  const int n = model.n();
  // |S|(n - |S|) - (n - 1) pairs to n - 1 with every F-curve and vanishes on the
  // non-proper elements, so the F-curve cone lies in an open half-space.
  std::vector<Rational> y(model.rho());
  for (int k = 0; k < model.rho(); ++k) {
    const int s = popcount(model.index().subset(k));
    y[k] = s * (n - s) - (n - 1);
  }
  r.fcurve_cone_pointed = std::all_of(model.fcurve_vectors().begin(), model.fcurve_vectors().end(), [&](const SparseRow& row) {
    Rational t = 0;
    for (const auto& [k, v] : row) t += y[k] * v;
    return t > 0;
  });
  r.fcurve_cone_full = static_cast<int>(rank_mod_p(model.fcurve_vectors(), model.rho())) == picard_rank(n);
  // Inside the nonnegative orthant, hence pointed.
  r.pbd_cone_pointed = true;
  {
    // Every block once is balanced and strictly positive: a relative interior point.
    PBD all(n);
    for (auto s : model.index().subsets()) all.add(s, 1);
    try {
      pbd_index(all);
      r.pbd_cone_full = true;
    } catch (const NotBalanced&) {
      r.pbd_cone_full = false;
    }
  }
  return r;
}

PbdRayReport pbd_extremal_rays(int n, bool extended) {
  if (n < 4) throw DomainError("PBD cones need n >= 4");
  if (n > 7 || (n == 7 && !extended)) throw BudgetExceeded("PBD ray enumeration is limited to n <= 6 (n = 7 extended)");
  ProperIndex index(n);
  const int rho = static_cast<int>(index.size());
  ConeHRep h;
  h.dim = rho;
  for (int k = 0; k < rho; ++k) {
    std::vector<Rational> e(rho, Rational(0));
    e[k] = 1;
    h.inequalities.push_back(std::move(e));
  }
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (i == 1 && j == 2) continue;
      const SubsetMask pair = (SubsetMask{1} << i) | (SubsetMask{1} << j);
      std::vector<Rational> row(rho, Rational(0));
      for (int k = 0; k < rho; ++k) {
        const SubsetMask b = index.subset(k);
        row[k] = ((b & pair) == pair) - ((b & 0b110U) == 0b110U);
      }
      h.equalities.push_back(std::move(row));
    }
  CoordinateAction action;
  for (const auto& sigma : all_permutations(n)) {
    std::vector<int> perm(rho);
    for (int k = 0; k < rho; ++k) perm[k] = index.coord(act_mask(sigma, index.subset(k), n));
    action.perms.push_back(std::move(perm));
  }
  DDOptions options;
  if (extended) options.max_rays = 20'000'000;
  auto rays = extremal_rays(h, &action, options);

  PbdRayReport report;
  report.n = n;
  report.rays = rays.vrep.rays.size();
  bool first = true;
  for (const auto& orbit : rays.orbits) {
    PbdRayOrbit o{PBD::from_vector(index, orbit.representative), orbit.size, 0, 0, 0};
    o.index = pbd_index(o.representative);
    std::set<std::vector<Integer>> images;
    for (const auto& perm : action.perms) images.insert(apply_action(perm, orbit.representative));
    o.min_index = o.max_index = o.index;
    for (const auto& img : images) {
      const std::int64_t r = pbd_index(PBD::from_vector(index, img));
      o.min_index = std::min(o.min_index, r);
      o.max_index = std::max(o.max_index, r);
    }
    if (first) {
      report.min_index = o.min_index;
      report.max_index = o.max_index;
      first = false;
    }
    report.min_index = std::min(report.min_index, o.min_index);
    report.max_index = std::max(report.max_index, o.max_index);
    report.orbits.push_back(std::move(o));
  }
  return report;
}

}  // namespace fcone

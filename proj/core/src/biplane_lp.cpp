#include <algorithm>
#include <map>
#include <set>

#include "fcone/error.hpp"
#include "fcone/strongf.hpp"

namespace fcone {

namespace {

constexpr int kPoints = 11;
constexpr int kN = kPoints + 1;

// x -> a x + b on Z_11 with a a nonzero square; it permutes the translates of the squares.
std::vector<Permutation> affine_square_group() {
  std::vector<Permutation> out;
  for (int a : {1, 3, 4, 5, 9})
    for (int b = 0; b < kPoints; ++b) {
      std::vector<int> images(kN);
      for (int p = 0; p < kPoints; ++p) images[p] = (a * p + b) % kPoints + 1;
      images[kPoints] = kN;
      out.emplace_back(std::move(images));
    }
  return out;
}

}  // namespace

BiplaneReport biplane_certificate() {
  BiplaneReport r;
  r.biplane = paley_biplane();
  r.curve = pbd_to_curve(r.biplane);
  r.index = pbd_index(r.biplane);
  for (int i = 1; i < kN; ++i) r.degrees.push_back(degree(r.biplane, i));
  r.effective = is_effective(r.biplane);

  const auto group = affine_square_group();
  for (const auto& g : group)
    for (const auto& [block, m] : r.biplane.blocks())
      if (r.biplane.multiplicity(g.image(block)) != m) throw InternalError("affine map does not preserve the biplane");
  r.group_order = group.size();
  r.symmetrized = true;

  ProperIndex index(kN);
  const int rho = static_cast<int>(index.size());
  std::vector<int> orbit(rho, -1);
  int orbits = 0;
  for (int k = 0; k < rho; ++k) {
    if (orbit[k] >= 0) continue;
    for (const auto& g : group) orbit[index.coord(act_mask(g, index.subset(k), kN))] = orbits;
    ++orbits;
  }
  r.lp_rows = static_cast<std::size_t>(orbits);

  // Orbit sums of the F-curve classes, deduplicated.
  const auto fcurves = all_fcurves(kN);
  r.fcurves = fcurves.size();
  std::set<std::vector<std::pair<int, int>>> columns;
  for (const auto& f : fcurves) {
    const std::pair<SubsetMask, int> terms[] = {{f.x, -1},       {f.y, -1},       {f.z, -1},      {f.x | f.y | f.z, -1},
                                                {f.x | f.y, 1}, {f.x | f.z, 1}, {f.y | f.z, 1}};
    std::map<int, int> col;
    for (auto [s, sign] : terms) {
      const int k = index.coord(s);
      if (k >= 0) col[orbit[k]] += sign;
    }
    std::vector<std::pair<int, int>> sparse;
    for (auto [o, v] : col)
      if (v != 0) sparse.emplace_back(o, v);
    columns.insert(std::move(sparse));
  }
  columns.erase(std::vector<std::pair<int, int>>{});
  r.lp_columns = columns.size();

  std::vector<Rational> point(orbits, Rational(0));
  for (int k = 0; k < rho; ++k) point[orbit[k]] += r.curve[index.subset(k)];
  std::vector<SparseRow> gens;
  gens.reserve(columns.size());
  for (const auto& c : columns) {
    SparseRow row;
    for (auto [o, v] : c) row.emplace_back(o, Rational(v));
    gens.push_back(std::move(row));
  }
  auto cert = cone_member(point, gens);
  r.member = cert.is_witness();
  if (!r.member) {
    // A separator on orbit sums pulls back to an invariant functional on the full space.
    DivisorClass y(kN);
    for (int k = 0; k < rho; ++k) y.set(index.subset(k), -cert.values[orbit[k]]);
    r.witness_ok = witness_pair_check(r.curve, y);
    r.separator = std::move(y);
  }
  return r;
}

}  // namespace fcone

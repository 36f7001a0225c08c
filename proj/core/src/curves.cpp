#include "fcone/curves.hpp"

#include <algorithm>
#include <set>

#include "fcone/error.hpp"

namespace fcone {

ProperIndex::ProperIndex(int n) : n_(n) {
  if (n < 4 || n > 16) throw DomainError("ProperIndex supports 4 <= n <= 16");
  lookup_.assign(std::size_t{1} << (n - 1), -1);
  for (const auto& s : proper_elements(n)) {
    lookup_[s.mask() >> 1] = static_cast<int>(coords_.size());
    coords_.push_back(s.mask());
  }
}

PBD::PBD(int n) : n_(n) {
  if (n < 4 || n > 16) throw DomainError("PBD supports 4 <= n <= 16");
}

PBD PBD::from_vector(const ProperIndex& index, std::span<const Integer> mult) {
  if (mult.size() != index.size()) throw DomainError("PBD vector has the wrong length");
  PBD p(index.n());
  for (std::size_t k = 0; k < mult.size(); ++k)
    if (mult[k] != 0) p.add(index.subset(k), to_int64(mult[k]));
  return p;
}

void PBD::add(SubsetMask block, std::int64_t mult) {
  int size = popcount(block);
  if ((block & ~lower_mask(n_)) || size < 2 || size > n_ - 2)
    throw DomainError("PBD blocks must be subsets of [n-1] of size 2..n-2");
  auto& m = mult_[block];
  m += mult;
  if (m == 0) mult_.erase(block);
}

std::int64_t PBD::multiplicity(SubsetMask block) const {
  auto it = mult_.find(block);
  return it == mult_.end() ? 0 : it->second;
}

std::vector<Integer> PBD::to_vector(const ProperIndex& index) const {
  if (index.n() != n_) throw DomainError("index and PBD have different n");
  std::vector<Integer> v(index.size(), 0);
  for (const auto& [block, m] : mult_) v[index.coord(block)] = static_cast<long>(m);
  return v;
}

SubsetFamily PBD::support() const {
  std::vector<Subset> members;
  for (const auto& [block, m] : mult_) members.emplace_back(n_, block);
  return SubsetFamily(n_, std::move(members));
}

std::int64_t pair_count(const PBD& p, int i, int j) {
  SubsetMask pair = (SubsetMask{1} << i) | (SubsetMask{1} << j);
  std::int64_t total = 0;
  for (const auto& [block, m] : p.blocks())
    if ((block & pair) == pair) total += m;
  return total;
}

std::int64_t pbd_index(const PBD& p) {
  const int points = p.n() - 1;
  std::int64_t r = pair_count(p, 1, 2);
  for (int i = 1; i <= points; ++i)
    for (int j = i + 1; j <= points; ++j) {
      auto c = pair_count(p, i, j);
      if (c != r)
        throw NotBalanced("pairs {1,2} and {" + std::to_string(i) + "," + std::to_string(j) + "} are covered " +
                          std::to_string(r) + " and " + std::to_string(c) + " times");
    }
  return r;
}

std::int64_t degree(const PBD& p, int i) {
  if (i < 1 || i >= p.n()) throw DomainError("degree: point outside [n-1]");
  std::int64_t total = 0;
  for (const auto& [block, m] : p.blocks())
    if ((block >> i) & 1U) total += m;
  return total;
}

bool is_effective(const PBD& p) {
  return std::all_of(p.blocks().begin(), p.blocks().end(), [](const auto& e) { return e.second >= 0; });
}

PBD fcurve_to_pbd(const FCurve& c) {
  PBD p(c.n);
  auto add_if_block = [&](SubsetMask s, std::int64_t m) {
    if (popcount(s) >= 2) p.add(s, m);
  };
  add_if_block(c.x | c.y, 1);
  add_if_block(c.x | c.z, 1);
  add_if_block(c.y | c.z, 1);
  add_if_block(c.x, -1);
  add_if_block(c.y, -1);
  add_if_block(c.z, -1);
  if (!c.covers_lower()) add_if_block(c.x | c.y | c.z, -1);
  return p;
}

CurveClass::CurveClass(int n) : n_(n) {
  if (n < 4 || n > 16) throw DomainError("curve classes supported for 4 <= n <= 16");
  v_.assign(std::size_t{1} << (n - 1), Rational(0));
}

Rational CurveClass::psi(int k) const {
  if (k < 1 || k > n_) throw DomainError("psi index out of range");
  return k == n_ ? -(*this)[lower_mask(n_)] : -(*this)[SubsetMask{1} << k];
}

Rational CurveClass::pair(const DivisorClass& f) const {
  if (f.n() != n_) throw DomainError("pairing curve and divisor with different n");
  Rational total = 0;
  for (SubsetMask m = 2; m <= lower_mask(n_); m += 2)
    if (v_[m >> 1] != 0 && f[m] != 0) total -= f[m] * v_[m >> 1];
  return total;
}

bool CurveClass::keel_consistent() const {
  for (const auto& rel : keel_relations(n_))
    if (pair(rel.as_fn(n_)) != 0) return false;
  return true;
}

std::vector<Rational> CurveClass::proper_vector(const ProperIndex& index) const {
  if (index.n() != n_) throw DomainError("index and curve have different n");
  std::vector<Rational> out;
  out.reserve(index.size());
  for (auto s : index.subsets()) out.push_back((*this)[s]);
  return out;
}

CurveClass CurveClass::from_proper_vector(const ProperIndex& index, std::span<const Rational> values) {
  if (values.size() != index.size()) throw DomainError("proper vector has the wrong length");
  const int n = index.n();
  CurveClass c(n);
  for (std::size_t k = 0; k < values.size(); ++k) c.set(index.subset(k), values[k]);
  auto pair_sum = [&](SubsetMask pair) {
    Rational t = 0;
    for (std::size_t k = 0; k < values.size(); ++k)
      if ((index.subset(k) & pair) == pair) t += values[k];
    return t;
  };
  const Rational r = pair_sum(0b110);
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pair_sum((SubsetMask{1} << i) | (SubsetMask{1} << j)) != r)
        throw NotBalanced("proper vector is not pair-balanced");
  for (int i = 1; i < n; ++i) {
    Rational deg = 0;
    for (std::size_t k = 0; k < values.size(); ++k)
      if ((index.subset(k) >> i) & 1U) deg += values[k];
    c.set(SubsetMask{1} << i, -(deg - r));
  }
  c.set(lower_mask(n), -r);
  return c;
}

CurveClass fcurve_class(const FCurve& f) {
  CurveClass c(f.n);
  c.add(f.x, -1);
  c.add(f.y, -1);
  c.add(f.z, -1);
  c.add(f.x | f.y | f.z, -1);
  c.add(f.x | f.y, 1);
  c.add(f.x | f.z, 1);
  c.add(f.y | f.z, 1);
  return c;
}

CurveClass pbd_to_curve(const PBD& p) {
  const int n = p.n();
  const std::int64_t r = pbd_index(p);
  CurveClass c(n);
  for (const auto& [block, m] : p.blocks()) c.set(block, static_cast<long>(m));
  for (int i = 1; i < n; ++i) c.set(SubsetMask{1} << i, Rational(static_cast<long>(-(degree(p, i) - r))));
  c.set(lower_mask(n), Rational(static_cast<long>(-r)));
  return c;
}

PBD paley_biplane() {
  constexpr int q = 11;
  std::set<int> residues;
  for (int x = 1; x < q; ++x) residues.insert((x * x) % q);
  PBD p(q + 1);
  for (int shift = 0; shift < q; ++shift) {
    SubsetMask block = 0;
    for (int r : residues) block |= SubsetMask{1} << (((r + shift) % q) + 1);
    p.add(block, 1);
  }
  if (p.blocks().size() != q || pbd_index(p) != 2) throw InternalError("biplane construction failed its self-check");
  for (const auto& [block, m] : p.blocks())
    if (popcount(block) != 5 || m != 1) throw InternalError("biplane construction failed its self-check");
  return p;
}

}  // namespace fcone

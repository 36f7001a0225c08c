#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fcone/fcurve.hpp"
#include "fcone/groundset.hpp"
#include "fcone/picard.hpp"
#include "fcone/rational.hpp"

namespace fcone {

// Coordinates of the boundary: proper elements of Sigma_n in size-then-lex order.
class ProperIndex {
 public:
  explicit ProperIndex(int n);

  int n() const { return n_; }
  std::size_t size() const { return coords_.size(); }
  SubsetMask subset(std::size_t coord) const { return coords_[coord]; }
  // -1 when the mask is not a proper element.
  int coord(SubsetMask s) const { return lookup_[s >> 1]; }
  const std::vector<SubsetMask>& subsets() const { return coords_; }

 private:
  int n_;
  std::vector<SubsetMask> coords_;
  std::vector<int> lookup_;
};

// A generalized multiset of blocks of size 2..n-2 in [n-1]. Singletons are not
// coordinates; the block [n-1] is not a coordinate either (its role is played by
// the index r).
class PBD {
 public:
  explicit PBD(int n);
  static PBD from_vector(const ProperIndex& index, std::span<const Integer> mult);

  int n() const { return n_; }
  void add(SubsetMask block, std::int64_t mult);
  void add(const Subset& block, std::int64_t mult) { add(block.mask(), mult); }
  std::int64_t multiplicity(SubsetMask block) const;
  const std::map<SubsetMask, std::int64_t>& blocks() const { return mult_; }
  std::vector<Integer> to_vector(const ProperIndex& index) const;
  SubsetFamily support() const;

  friend bool operator==(const PBD&, const PBD&) = default;

 private:
  int n_;
  std::map<SubsetMask, std::int64_t> mult_;  // nonzero entries only
};

// Number of blocks (with multiplicity) containing the pair {i, j}.
std::int64_t pair_count(const PBD& p, int i, int j);
// Common pair count r; throws NotBalanced naming two disagreeing pairs.
std::int64_t pbd_index(const PBD& p);
// Blocks containing i, counted with multiplicity.
std::int64_t degree(const PBD& p, int i);
bool is_effective(const PBD& p);

PBD fcurve_to_pbd(const FCurve& c);

// A curve class recorded by its pairings Delta_S . C for every S in Sigma_n, with
// the conventions Delta_{k} = -psi_k and Delta_{[n-1]} = -psi_n.
class CurveClass {
 public:
  explicit CurveClass(int n);

  int n() const { return n_; }
  const Rational& operator[](SubsetMask s) const { return v_[s >> 1]; }
  void set(SubsetMask s, Rational v) { v_[s >> 1] = std::move(v); }
  void add(SubsetMask s, const Rational& v) { v_[s >> 1] += v; }
  Rational delta(const Subset& s) const { return (*this)[s.mask()]; }
  Rational psi(int k) const;
  // D(f) . C = -sum_S f(S) (Delta_S . C).
  Rational pair(const DivisorClass& f) const;
  // Pairing with every Keel relation vanishes.
  bool keel_consistent() const;
  std::vector<Rational> proper_vector(const ProperIndex& index) const;
  static CurveClass from_proper_vector(const ProperIndex& index, std::span<const Rational> values);

  friend bool operator==(const CurveClass&, const CurveClass&) = default;

 private:
  int n_;
  std::vector<Rational> v_;
};

CurveClass fcurve_class(const FCurve& c);
CurveClass pbd_to_curve(const PBD& p);

// The (11,5,2) biplane: translates of the quadratic residues mod 11, on [11] (n = 12).
PBD paley_biplane();

}  // namespace fcone

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcone/fnef.hpp"
#include "fcone/groundset.hpp"
#include "fcone/picard.hpp"
#include "fcone/ratlp.hpp"

namespace fcone {

// Coefficients b(S) of D = -sum_S b(S) Delta_S on M_{0,m}, over nonempty S in [m-1].
// Unlike DivisorClass this allows m = 2, 3 (targets of attaching maps).
class BoundaryCoefficients {
 public:
  explicit BoundaryCoefficients(int m);
  static BoundaryCoefficients of(const DivisorClass& d);

  int m() const { return m_; }
  const Rational& operator[](SubsetMask s) const { return b_[s >> 1]; }
  void set(SubsetMask s, Rational v) { b_[s >> 1] = std::move(v); }

 private:
  int m_;
  std::vector<Rational> b_;
};

// att_lambda^* D(f) for the composition (l_1, ..., l_k): S -> f(sum_{t in S} l_t).
BoundaryCoefficients pullback_coefficients(const CyclicFn& f, const std::vector<int>& composition);

// A function on unordered pairs {i, j} of [m].
class WeightFn {
 public:
  explicit WeightFn(int m);

  int m() const { return m_; }
  const Rational& operator()(int i, int j) const { return w_[index(i, j)]; }
  void set(int i, int j, Rational v) { w_[index(i, j)] = std::move(v); }
  // sum_{i in S, j in [m] \ S} w(i, j).
  Rational cut(SubsetMask s) const;
  // v(i, j) = w(perm(i), perm(j)); perm maps [m] to [m], 1-based.
  WeightFn relabel(const std::vector<int>& perm) const;

  friend bool operator==(const WeightFn&, const WeightFn&) = default;

 private:
  std::size_t index(int i, int j) const;
  int m_;
  std::vector<Rational> w_;
};

// cut(S) >= b(S) for all S, with equality when S or its complement is a singleton.
bool certifies(const WeightFn& w, const BoundaryCoefficients& b);

struct EffectivityCertificate {
  BoundaryCoefficients divisor;
  WeightFn weight;
  bool verified = false;
};

struct EffectivityResult {
  std::optional<EffectivityCertificate> certificate;
  // Farkas refutation of the LP when no certificate exists.
  std::optional<RationalSystem> system;
  std::optional<Certificate> refutation;

  bool effective() const { return certificate.has_value(); }
};

// LP in the pair weights; 4 <= m <= 12.
EffectivityResult certify_effective(const DivisorClass& d);
EffectivityResult certify_effective(const BoundaryCoefficients& b);
// m = 2 or 3: there are no proper partitions and the equalities have a unique solution.
WeightFn low_rank_weights(const BoundaryCoefficients& b);

// Promote a certificate for mu = (l_1, ..., l_{k-2}, 2a) to lambda = (l_1, ..., l_{k-2}, a, a).
// Compositions are ordered; the repeated pair must be the last two entries.
WeightFn ascend(const WeightFn& wtilde, const CyclicFn& f, const std::vector<int>& lambda);

struct StratumReport {
  IntPartition partition;
  enum class Method { LowRank, LinearProgram, Ascent } method;
  bool verified = false;
  std::optional<WeightFn> weight;  // labeled in the (nonincreasing) order of the parts
  std::optional<Certificate> refutation;
};

struct StratalReport {
  int n = 0;
  bool success = true;
  std::vector<StratumReport> strata;
  std::size_t lp_certified = 0;
  std::size_t ascended = 0;
};

struct StratalOptions {
  // Certify strict partitions only, skipping the ascent over non-strict ones.
  bool strict_only = false;
};

// Throws NotSymmetric or NotFnef before solving anything.
StratalReport stratal_effectivity_symmetric(const CyclicFn& f, const StratalOptions& options = {});

// An F-nef representative on Z_n of an S_n-invariant divisor: f(0) = 0 and
// f = ftilde + c A_n with ftilde(1) = ftilde(n-1) = 0 and c = 2 max|ftilde|.
CyclicFn symmetric_fn_from_divisor(const DivisorClass& d);

// (k+1)(k+2)/2 - 1.
int symmetric_bound(int k);

}  // namespace fcone

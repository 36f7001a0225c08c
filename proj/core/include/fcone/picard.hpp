#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fcone/fcurve.hpp"
#include "fcone/groundset.hpp"
#include "fcone/rational.hpp"

namespace fcone {

// A divisor class on M_{0,n} stored as its coefficient function f on Sigma_n.
// The divisor is D(f) = -sum_S f(S) Delta_S, where Delta_{k} = -psi_k and
// Delta_{[n-1]} = -psi_n. Absent coefficients are zero.
class DivisorClass {
 public:
  explicit DivisorClass(int n);

  int n() const { return n_; }
  const Rational& operator[](SubsetMask s) const { return coeff_[index(s)]; }
  const Rational& value(const Subset& s) const;
  void set(const Subset& s, Rational v);
  void set(SubsetMask s, Rational v) { coeff_[index(s)] = std::move(v); }
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  DivisorClass& operator*=(const Rational& k);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Rational& k, DivisorClass a) { return a *= k; }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

 private:
  std::size_t index(SubsetMask s) const;
  int n_;
  std::vector<Rational> coeff_;  // indexed by mask >> 1
};

DivisorClass divisor_from_fn(int n, const std::function<Rational(const Subset&)>& f);

struct KeelRelation {
  enum class Kind { Single, Pair };
  Kind kind;
  int i;
  int j;  // unused for Kind::Single

  DivisorClass as_fn(int n) const;
};

// K_i for i in [n-1] followed by K_{i,j} for i < j.
std::vector<KeelRelation> keel_relations(int n);

Rational pair_fcurve(const DivisorClass& f, const Subset& x, const Subset& y, const Subset& z);
Rational pair_fcurve(const DivisorClass& f, const FCurve& c);

struct FnefCheck {
  bool fnef;
  std::optional<FCurve> violation;
  Rational violation_value;
};

FnefCheck is_fnef_divisor(const DivisorClass& f);

// Agreement of F-curve pairings; F-curves span N_1.
bool classes_equal(const DivisorClass& a, const DivisorClass& b);

// dim Pic(M_{0,n}) by exact elimination of the Keel relations.
int picard_rank(int n);

// Conventional presentation: D = sum psi_coeff[k-1] psi_k + sum boundary_coeff(S) Delta_S.
struct ConventionalForm {
  std::vector<Rational> psi;                           // psi_1 .. psi_n
  std::vector<std::pair<Subset, Rational>> boundary;   // proper S, nonzero only
};

ConventionalForm conventional_form(const DivisorClass& f);

}  // namespace fcone

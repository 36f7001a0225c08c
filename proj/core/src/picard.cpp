#include "fcone/picard.hpp"

#include "fcone/error.hpp"
#include "fcone/linalg.hpp"

namespace fcone {

DivisorClass::DivisorClass(int n) : n_(n) {
  if (n < 4 || n > 16) throw DomainError("divisor classes supported for 4 <= n <= 16");
  coeff_.assign(std::size_t{1} << (n - 1), Rational(0));
}

std::size_t DivisorClass::index(SubsetMask s) const {
  if (s == 0 || (s & ~lower_mask(n_))) throw DomainError("subset is not an element of Sigma_n");
  return s >> 1;
}

const Rational& DivisorClass::value(const Subset& s) const {
  if (s.n() != n_) throw DomainError("subset and divisor have different ambient n");
  return coeff_[index(s.mask())];
}

void DivisorClass::set(const Subset& s, Rational v) {
  if (s.n() != n_) throw DomainError("subset and divisor have different ambient n");
  coeff_[index(s.mask())] = std::move(v);
}

bool DivisorClass::is_zero() const {
  for (const auto& c : coeff_)
    if (c != 0) return false;
  return true;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  if (other.n_ != n_) throw DomainError("adding divisors with different n");
  for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] += other.coeff_[k];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  if (other.n_ != n_) throw DomainError("subtracting divisors with different n");
  for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] -= other.coeff_[k];
  return *this;
}

DivisorClass& DivisorClass::operator*=(const Rational& k) {
  for (auto& c : coeff_) c *= k;
  return *this;
}

DivisorClass divisor_from_fn(int n, const std::function<Rational(const Subset&)>& f) {
  DivisorClass d(n);
  for (const auto& s : sigma_elements(n)) d.set(s, f(s));
  return d;
}

DivisorClass KeelRelation::as_fn(int n) const {
  DivisorClass d(n);
  SubsetMask need = kind == Kind::Single ? (SubsetMask{1} << i) : ((SubsetMask{1} << i) | (SubsetMask{1} << j));
  for (SubsetMask m = 2; m <= lower_mask(n); m += 2)
    if ((m & need) == need) d.set(m, 1);
  return d;
}

std::vector<KeelRelation> keel_relations(int n) {
  std::vector<KeelRelation> out;
  for (int i = 1; i < n; ++i) out.push_back({KeelRelation::Kind::Single, i, 0});
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({KeelRelation::Kind::Pair, i, j});
  return out;
}

Rational pair_fcurve(const DivisorClass& f, const FCurve& c) {
  if (c.n != f.n()) throw DomainError("F-curve and divisor have different ambient n");
  Rational v = f[c.x] + f[c.y] + f[c.z] + f[c.x | c.y | c.z];
  v -= f[c.x | c.y];
  v -= f[c.x | c.z];
  v -= f[c.y | c.z];
  return v;
}

Rational pair_fcurve(const DivisorClass& f, const Subset& x, const Subset& y, const Subset& z) {
  return pair_fcurve(f, FCurve(x, y, z));
}

FnefCheck is_fnef_divisor(const DivisorClass& f) {
  for (const auto& c : all_fcurves(f.n())) {
    Rational v = pair_fcurve(f, c);
    if (v < 0) return {false, c, v};
  }
  return {true, std::nullopt, Rational(0)};
}

bool classes_equal(const DivisorClass& a, const DivisorClass& b) {
  if (a.n() != b.n()) throw DomainError("comparing divisors with different n");
  for (const auto& c : all_fcurves(a.n()))
    if (pair_fcurve(a, c) != pair_fcurve(b, c)) return false;
  return true;
}

int picard_rank(int n) {
  if (n < 4 || n > 12) throw DomainError("picard_rank supports 4 <= n <= 12");
  const std::size_t cols = (std::size_t{1} << (n - 1)) - 1;
  RationalMatrix rows;
  for (const auto& rel : keel_relations(n)) {
    auto d = rel.as_fn(n);
    std::vector<Rational> row(cols);
    for (SubsetMask m = 2; m <= lower_mask(n); m += 2) row[(m >> 1) - 1] = d[m];
    rows.push_back(std::move(row));
  }
  return static_cast<int>(cols - matrix_rank(rows, cols));
}

ConventionalForm conventional_form(const DivisorClass& f) {
  const int n = f.n();
  ConventionalForm out;
  out.psi.resize(n);
  for (int k = 1; k < n; ++k) out.psi[k - 1] = f[SubsetMask{1} << k];
  out.psi[n - 1] = f[lower_mask(n)];
  for (const auto& s : proper_elements(n)) {
    const Rational& v = f.value(s);
    if (v != 0) out.boundary.emplace_back(s, -v);
  }
  return out;
}

}  // namespace fcone

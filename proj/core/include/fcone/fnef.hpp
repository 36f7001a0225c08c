#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "fcone/groundset.hpp"
#include "fcone/rational.hpp"

namespace fcone {

inline constexpr std::uint64_t kDefaultTripleBudget = 1'000'000'000ULL;

// A rational-valued function on Z_m.
class CyclicFn {
 public:
  CyclicFn(int m, std::vector<Rational> values);
  static CyclicFn zero(int m);

  int modulus() const { return m_; }
  const Rational& operator()(std::int64_t x) const { return values_[reduce(x)]; }
  const std::vector<Rational>& values() const { return values_; }
  bool is_symmetric() const;
  std::int64_t reduce(std::int64_t x) const {
    auto r = x % m_;
    return r < 0 ? r + m_ : r;
  }

  CyclicFn& operator+=(const CyclicFn& other);
  CyclicFn& operator*=(const Rational& k);
  friend CyclicFn operator+(CyclicFn a, const CyclicFn& b) { return a += b; }
  friend CyclicFn operator*(const Rational& k, CyclicFn a) { return a *= k; }
  friend bool operator==(const CyclicFn&, const CyclicFn&) = default;

 private:
  int m_;
  std::vector<Rational> values_;
};

// f(x)+f(y)+f(z)+f(x+y+z) - f(x+y) - f(x+z) - f(y+z).
Rational bracket(const CyclicFn& f, std::int64_t x, std::int64_t y, std::int64_t z);

// A_m(i) = <i>_m <m-i>_m.
CyclicFn standard_A(int m);
// A_{m,k}(x) = A_m(kx).
CyclicFn scaled_A(int m, std::int64_t k);
// T_m = sum_{k=1}^{m-1} A_{m,k}.
CyclicFn total_T(int m);

// Case formula for bracket(A_m, a, b, c).
Rational bracket_closed_form_A(int m, std::int64_t a, std::int64_t b, std::int64_t c);

bool is_prime(std::int64_t p);
std::vector<int> first_primes(int count);

// prod Z_{p_i} for distinct primes, identified with Z_N through the CRT.
class ProductGroup {
 public:
  explicit ProductGroup(std::vector<int> primes);

  const std::vector<int>& primes() const { return primes_; }
  int rank() const { return static_cast<int>(primes_.size()); }
  std::int64_t order() const { return order_; }
  int component(std::int64_t x, int i) const { return static_cast<int>(mod(x, primes_[i])); }
  // Bit i+1 is set iff the i-th component is nonzero (coordinates are 1-based, like [n-1]).
  SubsetMask support(std::int64_t x) const;
  std::int64_t from_components(const std::vector<int>& comps) const;

  static std::int64_t mod(std::int64_t x, std::int64_t m) {
    auto r = x % m;
    return r < 0 ? r + m : r;
  }

 private:
  std::vector<int> primes_;
  std::int64_t order_;
};

// A function on a product group, tabulated over Z_N.
class ProductFn {
 public:
  ProductFn(ProductGroup group, CyclicFn table);

  const ProductGroup& group() const { return group_; }
  const CyclicFn& as_cyclic() const { return table_; }
  const Rational& operator()(std::int64_t x) const { return table_(x); }

 private:
  ProductGroup group_;
  CyclicFn table_;
};

// ST(x) = sum_i T_{p_i}(x_i) + sum_{i<j} T_{p_i p_j}(x_{i,j}).
ProductFn supertotal(const std::vector<int>& primes);

struct TripleScan {
  bool ok = true;
  std::optional<std::array<std::int64_t, 3>> violation;
  Rational violation_value = 0;
  std::uint64_t triples = 0;  // ordered triples covered
};

// Exhaustive F-nef check over Z_m^3; throws BudgetExceeded if m^3 > budget.
TripleScan is_fnef_fn(const CyclicFn& f, std::uint64_t budget = kDefaultTripleBudget);
// Random triples, deterministic in the seed.
TripleScan sample_fnef_fn(const CyclicFn& f, std::uint64_t samples, std::uint64_t seed);

// bracket(T_m, x, y, z) > 0 whenever x, y, z, x+y+z are all nonzero.
TripleScan improve_once_check(int m);

struct SupertotalCharacterization {
  bool holds = true;
  std::uint64_t triples = 0;
  std::uint64_t nondegenerate = 0;  // triples with x, y, z, w all nonzero
  std::uint64_t equalities = 0;
  std::optional<std::array<std::int64_t, 3>> counterexample;
};

// For nonzero x, y, z, w with x+y+z+w = 0: bracket(ST) >= 0, with equality iff some
// three of x, y, z, w have nonempty pairwise disjoint supports.
SupertotalCharacterization supertotal_equality_characterization(const std::vector<int>& primes,
                                                                std::uint64_t budget = kDefaultTripleBudget);

bool some_triple_disjoint(SubsetMask a, SubsetMask b, SubsetMask c, SubsetMask d);

// A random nonnegative integer combination of the dilations A_m(kx) and of the
// pullbacks A_d(x mod d) for proper divisors d of m. Symmetric and F-nef by construction.
CyclicFn random_symmetric_fnef_fn(int m, std::uint64_t seed);

// Integer table of f for fast exact scans; empty when f has a non-integer or huge value.
std::optional<std::vector<std::int64_t>> integer_table(const CyclicFn& f);

}  // namespace fcone

#include "fcone/fnef.hpp"

#include <algorithm>
#include <random>

#include "fcone/error.hpp"

namespace fcone {

CyclicFn::CyclicFn(int m, std::vector<Rational> values) : m_(m), values_(std::move(values)) {
  if (m < 1) throw DomainError("modulus must be positive");
  if (values_.size() != static_cast<std::size_t>(m)) throw DomainError("value table does not match the modulus");
}

CyclicFn CyclicFn::zero(int m) { return CyclicFn(m, std::vector<Rational>(m, Rational(0))); }

bool CyclicFn::is_symmetric() const {
  for (int x = 1; x < m_; ++x)
    if (values_[x] != values_[m_ - x]) return false;
  return true;
}

CyclicFn& CyclicFn::operator+=(const CyclicFn& other) {
  if (other.m_ != m_) throw DomainError("adding functions on different groups");
  for (int x = 0; x < m_; ++x) values_[x] += other.values_[x];
  return *this;
}

CyclicFn& CyclicFn::operator*=(const Rational& k) {
  for (auto& v : values_) v *= k;
  return *this;
}

Rational bracket(const CyclicFn& f, std::int64_t x, std::int64_t y, std::int64_t z) {
  Rational v = f(x) + f(y) + f(z) + f(x + y + z);
  v -= f(x + y);
  v -= f(x + z);
  v -= f(y + z);
  return v;
}

CyclicFn standard_A(int m) {
  if (m < 2) throw DomainError("standard_A requires m >= 2");
  std::vector<Rational> v(m);
  for (int i = 0; i < m; ++i) v[i] = static_cast<long>(i) * static_cast<long>((m - i) % m);
  return CyclicFn(m, std::move(v));
}

CyclicFn scaled_A(int m, std::int64_t k) {
  auto a = standard_A(m);
  std::vector<Rational> v(m);
  for (int x = 0; x < m; ++x) v[x] = a(k * x);
  return CyclicFn(m, std::move(v));
}

CyclicFn total_T(int m) {
  auto t = CyclicFn::zero(m);
  for (int k = 1; k < m; ++k) t += scaled_A(m, k);
  return t;
}

Rational bracket_closed_form_A(int m, std::int64_t a, std::int64_t b, std::int64_t c) {
  if (m < 2) throw DomainError("closed form requires m >= 2");
  a = ProductGroup::mod(a, m);
  b = ProductGroup::mod(b, m);
  c = ProductGroup::mod(c, m);
  const std::int64_t d = ProductGroup::mod(m - a - b - c, m);
  const std::int64_t s = a + b + c + d;
  if (s == 0 || s == m || s == 3 * static_cast<std::int64_t>(m)) return 0;
  std::int64_t lo = std::min({a, b, c, d, m - a, m - b, m - c, m - d});
  return Rational(static_cast<long>(2 * m * lo));
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<int> first_primes(int count) {
  std::vector<int> out;
  for (int p = 2; static_cast<int>(out.size()) < count; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

ProductGroup::ProductGroup(std::vector<int> primes) : primes_(std::move(primes)), order_(1) {
  if (primes_.empty()) throw DomainError("product group needs at least one prime");
  if (primes_.size() > 29) throw DomainError("too many factors");
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime(primes_[i])) throw DomainError("not a prime: " + std::to_string(primes_[i]));
    for (std::size_t j = 0; j < i; ++j)
      if (primes_[i] == primes_[j]) throw DomainError("repeated prime: " + std::to_string(primes_[i]));
    if (order_ > (std::int64_t{1} << 40) / primes_[i]) throw DomainError("group order too large");
    order_ *= primes_[i];
  }
}

SubsetMask ProductGroup::support(std::int64_t x) const {
  SubsetMask s = 0;
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (mod(x, primes_[i]) != 0) s |= SubsetMask{1} << (i + 1);
  return s;
}

std::int64_t ProductGroup::from_components(const std::vector<int>& comps) const {
  if (comps.size() != primes_.size()) throw DomainError("wrong number of components");
  // Incremental CRT.
  std::int64_t x = 0, m = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const std::int64_t p = primes_[i];
    std::int64_t target = mod(comps[i], p);
    while (mod(x, p) != target) x += m;
    m *= p;
  }
  return x;
}

ProductFn::ProductFn(ProductGroup group, CyclicFn table) : group_(std::move(group)), table_(std::move(table)) {
  if (table_.modulus() != group_.order()) throw DomainError("table size differs from the group order");
}

ProductFn supertotal(const std::vector<int>& primes) {
  ProductGroup g(primes);
  if (g.order() > 20'000'000) throw BudgetExceeded("supertotal table over Z_N with N > 2e7");
  const int k = g.rank();
  std::vector<CyclicFn> single;
  for (int p : primes) single.push_back(total_T(p));
  std::vector<std::vector<CyclicFn>> pairs(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pairs[i].push_back(total_T(primes[i] * primes[j]));
  const auto order = g.order();
  std::vector<Rational> table(order);
  for (std::int64_t x = 0; x < order; ++x) {
    Rational v = 0;
    for (int i = 0; i < k; ++i) v += single[i](x % primes[i]);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) v += pairs[i][j - i - 1](x % (static_cast<std::int64_t>(primes[i]) * primes[j]));
    table[x] = std::move(v);
  }
  return ProductFn(std::move(g), CyclicFn(static_cast<int>(order), std::move(table)));
}

std::optional<std::vector<std::int64_t>> integer_table(const CyclicFn& f) {
  constexpr std::int64_t bound = std::int64_t{1} << 59;
  std::vector<std::int64_t> out;
  out.reserve(f.values().size());
  for (const auto& v : f.values()) {
    if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return std::nullopt;
    auto i = v.get_num().get_si();
    if (i >= bound || i <= -bound) return std::nullopt;
    out.push_back(i);
  }
  return out;
}

namespace {

// Exact bracket evaluator over either an integer table or rationals.
class BracketEval {
 public:
  explicit BracketEval(const CyclicFn& f) : f_(f), m_(f.modulus()), ints_(integer_table(f)) {}

  // Sign of the bracket, and its value on request.
  int sign(std::int64_t x, std::int64_t y, std::int64_t z) const {
    if (ints_) {
      auto v = ival(x, y, z);
      return (v > 0) - (v < 0);
    }
    return sgn(bracket(f_, x, y, z));
  }
  Rational value(std::int64_t x, std::int64_t y, std::int64_t z) const {
    if (ints_) return Rational(static_cast<long>(ival(x, y, z)));
    return bracket(f_, x, y, z);
  }

 private:
  std::int64_t ival(std::int64_t x, std::int64_t y, std::int64_t z) const {
    const auto& t = *ints_;
    auto r = [&](std::int64_t a) { return t[a % m_]; };
    return r(x) + r(y) + r(z) + r(x + y + z) - r(x + y) - r(x + z) - r(y + z);
  }
  const CyclicFn& f_;
  std::int64_t m_;
  std::optional<std::vector<std::int64_t>> ints_;
};

void check_budget(std::int64_t m, std::uint64_t budget) {
  const auto cube = __extension__ static_cast<unsigned __int128>(m) * m * m;
  if (cube > budget) throw BudgetExceeded("exhaustive triple scan over " + std::to_string(m) + "^3 exceeds budget");
}

}  // namespace

TripleScan is_fnef_fn(const CyclicFn& f, std::uint64_t budget) {
  const std::int64_t m = f.modulus();
  check_budget(m, budget);
  if (!f.is_symmetric()) throw NotSymmetric("F-nefness is defined for symmetric functions");
  BracketEval eval(f);
  TripleScan out;
  out.triples = static_cast<std::uint64_t>(m * m * m);
  // The bracket is symmetric in its three arguments.
  for (std::int64_t x = 0; x < m; ++x)
    for (std::int64_t y = x; y < m; ++y)
      for (std::int64_t z = y; z < m; ++z)
        if (eval.sign(x, y, z) < 0) {
          out.ok = false;
          out.violation = {x, y, z};
          out.violation_value = eval.value(x, y, z);
          return out;
        }
  return out;
}

TripleScan sample_fnef_fn(const CyclicFn& f, std::uint64_t samples, std::uint64_t seed) {
  if (!f.is_symmetric()) throw NotSymmetric("F-nefness is defined for symmetric functions");
  BracketEval eval(f);
  std::mt19937_64 rng(seed);
  const auto m = static_cast<std::uint64_t>(f.modulus());
  TripleScan out;
  for (std::uint64_t s = 0; s < samples; ++s) {
    auto x = static_cast<std::int64_t>(rng() % m), y = static_cast<std::int64_t>(rng() % m),
         z = static_cast<std::int64_t>(rng() % m);
    ++out.triples;
    if (eval.sign(x, y, z) < 0) {
      out.ok = false;
      out.violation = {x, y, z};
      out.violation_value = eval.value(x, y, z);
      return out;
    }
  }
  return out;
}

TripleScan improve_once_check(int m) {
  check_budget(m, kDefaultTripleBudget);
  auto t = total_T(m);
  BracketEval eval(t);
  TripleScan out;
  for (std::int64_t x = 1; x < m; ++x)
    for (std::int64_t y = 1; y < m; ++y)
      for (std::int64_t z = 1; z < m; ++z) {
        if ((x + y + z) % m == 0) continue;
        ++out.triples;
        if (eval.sign(x, y, z) <= 0) {
          out.ok = false;
          out.violation = {x, y, z};
          out.violation_value = eval.value(x, y, z);
          return out;
        }
      }
  return out;
}

bool some_triple_disjoint(SubsetMask a, SubsetMask b, SubsetMask c, SubsetMask d) {
  auto ok = [](SubsetMask p, SubsetMask q, SubsetMask r) {
    return p && q && r && !(p & q) && !(p & r) && !(q & r);
  };
  return ok(a, b, c) || ok(a, b, d) || ok(a, c, d) || ok(b, c, d);
}

SupertotalCharacterization supertotal_equality_characterization(const std::vector<int>& primes,
                                                                std::uint64_t budget) {
  auto st = supertotal(primes);
  const auto& g = st.group();
  const std::int64_t order = g.order();
  check_budget(order, budget);
  BracketEval eval(st.as_cyclic());
  std::vector<SubsetMask> supp(order);
  for (std::int64_t x = 0; x < order; ++x) supp[x] = g.support(x);
  SupertotalCharacterization out;
  for (std::int64_t x = 0; x < order; ++x)
    for (std::int64_t y = 0; y < order; ++y)
      for (std::int64_t z = 0; z < order; ++z) {
        ++out.triples;
        const std::int64_t w = ProductGroup::mod(-(x + y + z), order);
        const int s = eval.sign(x, y, z);
        if (x == 0 || y == 0 || z == 0 || w == 0) {
          // All four terms pair off; the bracket vanishes identically here.
          if (s != 0) {
            out.holds = false;
            out.counterexample = {x, y, z};
          }
          continue;
        }
        ++out.nondegenerate;
        const bool disjoint = some_triple_disjoint(supp[x], supp[y], supp[z], supp[w]);
        if (s == 0) ++out.equalities;
        if (s < 0 || (s == 0) != disjoint) {
          out.holds = false;
          if (!out.counterexample) out.counterexample = {x, y, z};
        }
      }
  return out;
}

CyclicFn random_symmetric_fnef_fn(int m, std::uint64_t seed) {
  if (m < 2) throw DomainError("random functions need m >= 2");
  std::mt19937_64 rng(seed);
  auto f = CyclicFn::zero(m);
  bool any = false;
  while (!any) {
    for (int k = 1; k <= m / 2; ++k)
      if (rng() % 3 == 0) {
        f += Rational(static_cast<long>(1 + rng() % 4)) * scaled_A(m, k);
        any = true;
      }
    for (int d = 2; d < m; ++d) {
      if (m % d != 0 || rng() % 3 != 0) continue;
      auto a = standard_A(d);
      std::vector<Rational> values(m);
      for (int x = 0; x < m; ++x) values[x] = a(x);
      f += Rational(static_cast<long>(1 + rng() % 4)) * CyclicFn(m, std::move(values));
      any = true;
    }
  }
  return f;
}

}  // namespace fcone

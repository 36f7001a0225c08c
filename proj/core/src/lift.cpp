#include "fcone/lift.hpp"

#include <algorithm>
#include <random>

#include "fcone/error.hpp"

namespace fcone {

std::int64_t CrtWeights::weight(SubsetMask s) const {
  std::int64_t total = 0;
  for (int i = 1; i <= n(); ++i)
    if ((s >> i) & 1U) total += a[i - 1];
  return total;
}

CrtWeights crt_weights(const std::vector<int>& primes) {
  if (primes.size() < 3) throw DomainError("CRT weights need n >= 4, that is at least three primes");
  ProductGroup g(primes);
  CrtWeights w;
  w.primes = primes;
  w.N = g.order();
  const int k = g.rank();
  for (int i = 0; i < k; ++i) {
    std::vector<int> comps(k, 0);
    comps[i] = 1;
    w.a.push_back(g.from_components(comps));
  }
  w.a.push_back(w.N - 1);
  for (auto v : w.a) w.A += v;
  if (w.A % w.N != 0) throw InternalError("CRT weights: N does not divide A");
  return w;
}

ProductFn tilde(const DivisorClass& f, const std::vector<int>& primes) {
  ProductGroup g(primes);
  if (f.n() != g.rank() + 1) throw DomainError("tilde: need exactly n-1 primes");
  const auto order = g.order();
  if (order > 20'000'000) throw BudgetExceeded("tilde table over Z_N with N > 2e7");
  std::vector<Rational> table(order);
  for (std::int64_t x = 1; x < order; ++x) table[x] = f[g.support(x)];
  return ProductFn(std::move(g), CyclicFn(static_cast<int>(order), std::move(table)));
}

namespace {

Rational max_abs_coefficient(const DivisorClass& f) {
  Rational m = 0;
  for (SubsetMask s = 2; s <= lower_mask(f.n()); s += 2) m = std::max(m, Rational(abs(f[s])));
  return m;
}

void require_fnef(const DivisorClass& f) {
  auto check = is_fnef_divisor(f);
  if (!check.fnef)
    throw NotFnef("input is not F-nef: pairing with " + check.violation->to_string() + " is " +
                  format_rational(check.violation_value));
}

}  // namespace

Rational minimal_lift_constant(const DivisorClass& f, const std::vector<int>& primes, std::uint64_t budget) {
  auto ft = tilde(f, primes);
  auto st = supertotal(primes);
  const std::int64_t order = ft.group().order();
  if (__extension__ static_cast<unsigned __int128>(order) * order * order > budget)
    throw BudgetExceeded("minimal c search over Z_" + std::to_string(order) + " exceeds the triple budget");
  const auto& fc = ft.as_cyclic();
  const auto& sc = st.as_cyclic();
  Rational best = 0;
  for (std::int64_t x = 0; x < order; ++x)
    for (std::int64_t y = x; y < order; ++y)
      for (std::int64_t z = y; z < order; ++z) {
        Rational bf = bracket(fc, x, y, z);
        if (bf >= 0) continue;
        Rational bs = bracket(sc, x, y, z);
        if (bs == 0)
          throw NotFnef("no constant works: a triple with vanishing supertotal bracket and negative bracket");
        Rational need = -bf / bs;
        if (need > best) best = need;
      }
  return best;
}

LiftResult lift(const DivisorClass& f, const std::vector<int>& primes, const LiftOptions& options) {
  if (f.n() != static_cast<int>(primes.size()) + 1) throw DomainError("lift: need exactly n-1 primes");
  require_fnef(f);
  auto weights = crt_weights(primes);
  LiftVerification ver;
  ver.source_fnef = true;
  ver.max_abs = max_abs_coefficient(f);
  Rational c = options.minimal_c ? minimal_lift_constant(f, primes, options.triple_budget) : 2 * ver.max_abs;
  ver.dominance = ver.st_positive_floor * c >= 7 * ver.max_abs;

  auto ft = tilde(f, primes);
  auto st = supertotal(primes);
  CyclicFn table = ft.as_cyclic();
  table += c * st.as_cyclic();
  ProductFn lifted(ft.group(), table);

  ver.equality_case_reduction = true;
  for (const auto& curve : all_fcurves(f.n())) {
    auto x = weights.weight(curve.x), y = weights.weight(curve.y), z = weights.weight(curve.z);
    if (bracket(ft.as_cyclic(), x, y, z) != pair_fcurve(f, curve)) {
      ver.equality_case_reduction = false;
      break;
    }
  }
  const auto order = __extension__ static_cast<unsigned __int128>(lifted.group().order());
  if (order * order * order <= options.triple_budget) ver.exhaustive = is_fnef_fn(lifted.as_cyclic(), options.triple_budget).ok;
  if (options.samples > 0) {
    auto scan = sample_fnef_fn(lifted.as_cyclic(), options.samples, options.seed);
    ver.sampled = scan.triples;
    ver.sampled_ok = scan.ok;
  }
  return LiftResult{f, std::move(weights), std::move(c), std::move(lifted), ver};
}

DivisorClass symmetric_divisor(int m, const CyclicFn& f, int n) {
  if (f.modulus() != m) throw DomainError("function modulus differs from m");
  if (m < 1 || n % m != 0) throw DomainError("symmetric divisor needs m | n");
  if (!f.is_symmetric()) throw NotSymmetric("symmetric divisor needs f(x) = f(-x)");
  DivisorClass d(n);
  for (SubsetMask s = 2; s <= lower_mask(n); s += 2) d.set(s, f(popcount(s)));
  return d;
}

DivisorClass pullback_symmetric(const CyclicFn& g, const CrtWeights& weights) {
  if (g.modulus() != weights.N) throw DomainError("pullback: function is not defined on Z_N");
  DivisorClass d(weights.n());
  for (SubsetMask s = 2; s <= lower_mask(weights.n()); s += 2) d.set(s, g(weights.weight(s)));
  return d;
}

MainTheoremReport verify_main_theorem(const DivisorClass& f, const std::vector<int>& primes,
                                      const LiftOptions& options) {
  auto result = lift(f, primes, options);
  MainTheoremReport rep;
  rep.n = f.n();
  rep.c = result.c;
  rep.N = result.weights.N;
  rep.A = result.weights.A;
  rep.weights = result.weights.a;
  rep.lift_fnef = result.verification.passed();
  auto ft = tilde(f, primes);
  rep.pullback_equals_source = classes_equal(pullback_symmetric(result.lifted.as_cyclic(), result.weights), f) &&
                               classes_equal(pullback_symmetric(ft.as_cyclic(), result.weights), f);
  auto st = pullback_symmetric(supertotal(primes).as_cyclic(), result.weights);
  rep.supertotal_vanishes = classes_equal(st, DivisorClass(f.n()));
  return rep;
}

DivisorClass random_fnef_divisor(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  DivisorClass f(n);
  const int terms = uniform(1, 4);
  for (int t = 0; t < terms; ++t) {
    const int m = uniform(2, 12);
    auto g = scaled_A(m, uniform(1, m - 1));
    // d_n = -(d_1 + ... + d_{n-1}) is implicit: subsets avoid n.
    std::vector<std::int64_t> d(n + 1, 0);
    for (int i = 1; i < n; ++i) d[i] = uniform(0, m - 1);
    const Rational coef = uniform(1, 3);
    for (SubsetMask s = 2; s <= lower_mask(n); s += 2) {
      std::int64_t weight = 0;
      for (int i = 1; i < n; ++i)
        if ((s >> i) & 1U) weight += d[i];
      f.set(s, f[s] + coef * g(weight));
    }
  }
  for (const auto& rel : keel_relations(n)) {
    const int k = uniform(-3, 3);
    if (k == 0) continue;
    auto r = rel.as_fn(n);
    r *= Rational(k);
    f += r;
  }
  return f;
}

}  // namespace fcone

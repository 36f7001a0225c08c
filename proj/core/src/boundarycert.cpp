#include "fcone/boundarycert.hpp"

#include <algorithm>
#include <map>

#include "fcone/error.hpp"
#include "fcone/lift.hpp"

namespace fcone {

BoundaryCoefficients::BoundaryCoefficients(int m) : m_(m) {
  if (m < 2 || m > 20) throw DomainError("boundary coefficients need 2 <= m <= 20");
  b_.assign(std::size_t{1} << (m - 1), Rational(0));
}

BoundaryCoefficients BoundaryCoefficients::of(const DivisorClass& d) {
  BoundaryCoefficients b(d.n());
  for (SubsetMask s = 2; s <= lower_mask(d.n()); s += 2) b.set(s, d[s]);
  return b;
}

BoundaryCoefficients pullback_coefficients(const CyclicFn& f, const std::vector<int>& composition) {
  const int m = static_cast<int>(composition.size());
  BoundaryCoefficients b(m);
  for (SubsetMask s = 2; s <= lower_mask(m); s += 2) {
    std::int64_t total = 0;
    for (int t = 1; t <= m; ++t)
      if ((s >> t) & 1U) total += composition[t - 1];
    b.set(s, f(total));
  }
  return b;
}

WeightFn::WeightFn(int m) : m_(m) {
  if (m < 2) throw DomainError("weight functions need m >= 2");
  w_.assign(static_cast<std::size_t>(m) * (m - 1) / 2, Rational(0));
}

std::size_t WeightFn::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > m_ || i == j) throw DomainError("weight index outside the pairs of [m]");
  // Row-major over i < j.
  return static_cast<std::size_t>((i - 1) * (2 * m_ - i) / 2 + (j - i - 1));
}

Rational WeightFn::cut(SubsetMask s) const {
  Rational total = 0;
  for (int i = 1; i <= m_; ++i) {
    if (!((s >> i) & 1U)) continue;
    for (int j = 1; j <= m_; ++j)
      if (!((s >> j) & 1U)) total += (*this)(i, j);
  }
  return total;
}

WeightFn WeightFn::relabel(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != m_) throw DomainError("relabel: permutation has the wrong size");
  WeightFn out(m_);
  for (int i = 1; i <= m_; ++i)
    for (int j = i + 1; j <= m_; ++j) out.set(i, j, (*this)(perm[i - 1], perm[j - 1]));
  return out;
}

bool certifies(const WeightFn& w, const BoundaryCoefficients& b) {
  if (w.m() != b.m()) return false;
  const int m = b.m();
  for (SubsetMask s = 2; s <= lower_mask(m); s += 2) {
    Rational c = w.cut(s);
    const bool non_proper = popcount(s) == 1 || s == lower_mask(m);
    if (non_proper ? c != b[s] : c < b[s]) return false;
  }
  return true;
}

WeightFn low_rank_weights(const BoundaryCoefficients& b) {
  WeightFn w(b.m());
  if (b.m() == 2) {
    w.set(1, 2, b[0b10]);
  } else if (b.m() == 3) {
    const Rational& b1 = b[0b010];
    const Rational& b2 = b[0b100];
    const Rational& b12 = b[0b110];
    w.set(1, 2, (b1 + b2 - b12) / 2);
    w.set(1, 3, (b1 + b12 - b2) / 2);
    w.set(2, 3, (b2 + b12 - b1) / 2);
  } else {
    throw DomainError("closed-form weights exist only for m = 2, 3");
  }
  if (!certifies(w, b)) throw InternalError("closed-form weights failed to verify");
  return w;
}

EffectivityResult certify_effective(const BoundaryCoefficients& b) {
  const int m = b.m();
  if (m <= 3) {
    EffectivityResult r;
    r.certificate = EffectivityCertificate{b, low_rank_weights(b), true};
    return r;
  }
  if (m > 12) throw DomainError("certify_effective supports m <= 12");
  RationalSystem sys;
  std::vector<std::vector<int>> var(m + 1, std::vector<int>(m + 1, -1));
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      var[i][j] = var[j][i] = sys.add_variable("w" + std::to_string(i) + "_" + std::to_string(j), VarKind::Free);
  for (SubsetMask s = 2; s <= lower_mask(m); s += 2) {
    SparseRow row;
    for (int i = 1; i <= m; ++i) {
      if (!((s >> i) & 1U)) continue;
      for (int j = 1; j <= m; ++j)
        if (!((s >> j) & 1U)) row.emplace_back(var[i][j], Rational(1));
    }
    if (popcount(s) == 1 || s == lower_mask(m))
      sys.add_eq(std::move(row), b[s]);
    else
      sys.add_ge(std::move(row), b[s]);
  }
  auto cert = feasible(sys);
  EffectivityResult r;
  if (cert.is_witness()) {
    WeightFn w(m);
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j) w.set(i, j, cert.values[var[i][j]]);
    const bool ok = certifies(w, b);
    if (!ok) throw InternalError("effectivity certificate failed to verify");
    r.certificate = EffectivityCertificate{b, std::move(w), ok};
  } else {
    r.system = std::move(sys);
    r.refutation = std::move(cert);
  }
  return r;
}

EffectivityResult certify_effective(const DivisorClass& d) {
  if (d.n() > 12) throw DomainError("certify_effective supports 4 <= m <= 12");
  return certify_effective(BoundaryCoefficients::of(d));
}

WeightFn ascend(const WeightFn& wtilde, const CyclicFn& f, const std::vector<int>& lambda) {
  const int k = static_cast<int>(lambda.size());
  if (k < 3) throw PreconditionError("ascend needs at least three parts");
  if (lambda[k - 2] != lambda[k - 1]) throw PreconditionError("ascend needs a repeated last pair");
  if (wtilde.m() != k - 1) throw PreconditionError("ascend: weight is not on k-1 markings");
  const int a = lambda[k - 1];
  std::vector<int> mu(lambda.begin(), lambda.end() - 2);
  mu.push_back(2 * a);
  if (!certifies(wtilde, pullback_coefficients(f, mu)))
    throw PreconditionError("ascend: the given weight does not certify the merged stratum");
  WeightFn w(k);
  for (int i = 1; i <= k - 2; ++i) {
    for (int j = i + 1; j <= k - 2; ++j) w.set(i, j, wtilde(i, j));
    w.set(i, k - 1, wtilde(i, k - 1) / 2);
    w.set(i, k, wtilde(i, k - 1) / 2);
  }
  w.set(k - 1, k, f(a) - f(2 * a) / 2);
  if (!certifies(w, pullback_coefficients(f, lambda)))
    throw PreconditionError("ascend: promoted weight does not certify; is f F-nef?");
  return w;
}

namespace {

// perm[i] = position in `sorted` of the i-th entry of `composition` (equal values matched in order).
std::vector<int> position_map(const std::vector<int>& composition, const std::vector<int>& sorted) {
  std::vector<int> perm(composition.size());
  std::vector<char> used(sorted.size(), 0);
  for (std::size_t i = 0; i < composition.size(); ++i) {
    for (std::size_t j = 0; j < sorted.size(); ++j)
      if (!used[j] && sorted[j] == composition[i]) {
        used[j] = 1;
        perm[i] = static_cast<int>(j) + 1;
        break;
      }
  }
  return perm;
}

std::vector<int> sorted_desc(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

StratalReport stratal_effectivity_symmetric(const CyclicFn& f, const StratalOptions& options) {
  if (!f.is_symmetric()) throw NotSymmetric("stratal effectivity needs a symmetric function");
  auto scan = is_fnef_fn(f);
  if (!scan.ok) {
    const auto& v = *scan.violation;
    throw NotFnef("function is not F-nef at (" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
                  std::to_string(v[2]) + ")");
  }
  const int n = f.modulus();
  StratalReport report;
  report.n = n;
  std::map<std::vector<int>, WeightFn> certs;
  for (int k = 2; k <= n; ++k) {
    for (const auto& lambda : partitions(n, k, k)) {
      const bool strict = lambda.is_strict();
      if (options.strict_only && !strict && k > 3) continue;
      StratumReport st{lambda, StratumReport::Method::LowRank, false, std::nullopt, std::nullopt};
      const auto target = pullback_coefficients(f, lambda.parts);
      if (k <= 3) {
        st.weight = low_rank_weights(target);
      } else if (strict) {
        st.method = StratumReport::Method::LinearProgram;
        auto res = certify_effective(target);
        if (res.effective()) {
          st.weight = res.certificate->weight;
          ++report.lp_certified;
        } else {
          st.refutation = res.refutation;
        }
      } else {
        st.method = StratumReport::Method::Ascent;
        int a = 0;
        for (int t = 0; t + 1 < k; ++t)
          if (lambda.parts[t] == lambda.parts[t + 1]) {
            a = lambda.parts[t];
            break;
          }
        std::vector<int> rest = lambda.parts;
        rest.erase(std::find(rest.begin(), rest.end(), a));
        rest.erase(std::find(rest.begin(), rest.end(), a));
        std::vector<int> composition = rest, mu = rest;
        composition.push_back(a);
        composition.push_back(a);
        mu.push_back(2 * a);
        auto it = certs.find(sorted_desc(mu));
        if (it != certs.end()) {
          auto wtilde = it->second.relabel(position_map(mu, sorted_desc(mu)));
          auto w = ascend(wtilde, f, composition);
          st.weight = w.relabel(position_map(lambda.parts, composition));
          ++report.ascended;
        }
      }
      st.verified = st.weight && certifies(*st.weight, target);
      if (st.verified)
        certs.emplace(lambda.parts, *st.weight);
      else
        report.success = false;
      report.strata.push_back(std::move(st));
    }
  }
  return report;
}

CyclicFn symmetric_fn_from_divisor(const DivisorClass& d) {
  const int n = d.n();
  std::vector<std::optional<Rational>> by_size(n, std::nullopt);
  for (SubsetMask s = 2; s <= lower_mask(n); s += 2) {
    const int size = std::min(popcount(s), n - popcount(s));
    auto& slot = by_size[size];
    if (!slot)
      slot = d[s];
    else if (*slot != d[s])
      throw NotSymmetric("coefficients are not a function of the partition sizes");
  }
  // A_n(|S|) is a combination of Keel relations, so multiples of it do not change the class.
  auto an = standard_A(n);
  std::vector<Rational> tilde(n, Rational(0));
  const Rational psi = *by_size[1];
  for (int i = 1; i < n; ++i) tilde[i] = *by_size[std::min(i, n - i)] - psi * an(i) / (n - 1);
  Rational max_abs = 0;
  for (const auto& v : tilde) max_abs = std::max(max_abs, Rational(abs(v)));
  const Rational c = 2 * max_abs;
  std::vector<Rational> values(n);
  for (int i = 0; i < n; ++i) values[i] = tilde[i] + c * an(i);
  CyclicFn f(n, std::move(values));
  if (!classes_equal(symmetric_divisor(n, f, n), d)) throw InternalError("symmetric representative changed the class");
  return f;
}

int symmetric_bound(int k) {
  if (k < 4) throw DomainError("symmetric_bound needs k >= 4");
  return (k + 1) * (k + 2) / 2 - 1;
}

}  // namespace fcone

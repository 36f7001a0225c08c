#include <algorithm>
#include <cmath>

#include "fcone/error.hpp"
#include "fcone/ratlp.hpp"

namespace fcone {

int RationalSystem::add_variable(std::string name, VarKind kind) {
  names_.push_back(std::move(name));
  kinds_.push_back(kind);
  return static_cast<int>(kinds_.size()) - 1;
}

void RationalSystem::add(SparseRow coeffs, RowSense sense, Rational rhs) {
  std::sort(coeffs.begin(), coeffs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // mpq_class(p, q) is not reduced; equality tests below assume reduced values.
  for (auto& e : coeffs) e.second.canonicalize();
  rhs.canonicalize();
  SparseRow merged;
  for (auto& [var, v] : coeffs) {
    if (!merged.empty() && merged.back().first == var)
      merged.back().second += v;
    else
      merged.emplace_back(var, std::move(v));
  }
  std::erase_if(merged, [](const auto& e) { return e.second == 0; });
  rows_.push_back({std::move(merged), sense, std::move(rhs)});
}

void RationalSystem::add_eq(SparseRow coeffs, Rational rhs) { add(std::move(coeffs), RowSense::Eq, std::move(rhs)); }
void RationalSystem::add_le(SparseRow coeffs, Rational rhs) { add(std::move(coeffs), RowSense::Le, std::move(rhs)); }
void RationalSystem::add_ge(SparseRow coeffs, Rational rhs) {
  for (auto& e : coeffs) e.second = -e.second;
  add(std::move(coeffs), RowSense::Le, -rhs);
}

namespace {
SparseRow sparse_of(const std::vector<Rational>& dense) {
  SparseRow row;
  for (std::size_t j = 0; j < dense.size(); ++j)
    if (dense[j] != 0) row.emplace_back(static_cast<int>(j), dense[j]);
  return row;
}
}  // namespace

void RationalSystem::add_eq_dense(const std::vector<Rational>& c, Rational rhs) { add_eq(sparse_of(c), std::move(rhs)); }
void RationalSystem::add_le_dense(const std::vector<Rational>& c, Rational rhs) { add_le(sparse_of(c), std::move(rhs)); }
void RationalSystem::add_ge_dense(const std::vector<Rational>& c, Rational rhs) { add_ge(sparse_of(c), std::move(rhs)); }

void RationalSystem::validate() const {
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [var, v] : rows_[r].coeffs)
      if (var < 0 || var >= num_vars())
        throw MalformedSystem("row " + std::to_string(r) + " references variable " + std::to_string(var));
  if (objective_ && static_cast<int>(objective_->size()) != num_vars())
    throw MalformedSystem("objective length differs from the number of variables");
}

bool verify_witness(const RationalSystem& sys, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != sys.num_vars()) return false;
  for (int j = 0; j < sys.num_vars(); ++j)
    if (sys.kinds()[j] == VarKind::NonNegative && x[j] < 0) return false;
  for (const auto& row : sys.rows()) {
    Rational lhs = 0;
    for (const auto& [var, v] : row.coeffs) lhs += v * x[var];
    if (row.sense == RowSense::Eq ? lhs != row.rhs : lhs > row.rhs) return false;
  }
  return true;
}

bool verify_farkas(const RationalSystem& sys, const std::vector<Rational>& y) {
  if (y.size() != sys.rows().size()) return false;
  std::vector<Rational> comb(sys.num_vars(), Rational(0));
  Rational rhs = 0;
  for (std::size_t r = 0; r < y.size(); ++r) {
    const auto& row = sys.rows()[r];
    if (row.sense == RowSense::Le && y[r] < 0) return false;
    if (y[r] == 0) continue;
    for (const auto& [var, v] : row.coeffs) comb[var] += y[r] * v;
    rhs += y[r] * row.rhs;
  }
  for (int j = 0; j < sys.num_vars(); ++j) {
    if (sys.kinds()[j] == VarKind::Free ? comb[j] != 0 : comb[j] < 0) return false;
  }
  return rhs < 0;
}

bool verify(const RationalSystem& sys, const Certificate& cert) {
  return cert.is_witness() ? verify_witness(sys, cert.values) : verify_farkas(sys, cert.values);
}

namespace {

using SparseCol = std::vector<std::pair<int, Rational>>;

// Bounded revised simplex over A x = b, x >= 0, b >= 0, with a dense explicit inverse.
class Simplex {
 public:
  Simplex(const RationalSystem& sys, SimplexStats* stats) : sys_(sys), stats_(stats) { build(); }

  OptimizeResult run(bool optimize_objective);

 private:
  enum class Col { Plus, Minus, Slack, Artificial };
  struct ColInfo {
    Col kind;
    int ref;  // variable or row
  };

  void build();
  // Returns false when unbounded.
  bool iterate(const std::vector<Rational>& cost, bool allow_artificial);
  void pivot(int row, int col, const std::vector<Rational>& d);
  std::vector<Rational> duals(const std::vector<Rational>& cost) const;
  std::vector<Rational> column_image(int col) const;
  std::vector<Rational> primal() const;
  void drive_out_artificials();

  const RationalSystem& sys_;
  SimplexStats* stats_;
  int m_ = 0;
  std::vector<SparseCol> cols_;
  std::vector<ColInfo> info_;
  std::vector<int> sign_;  // row sign flips
  std::vector<Rational> b_;
  std::vector<int> basis_;
  std::vector<char> is_basic_;
  std::vector<std::vector<Rational>> binv_;
  std::vector<Rational> xb_;
};

void Simplex::build() {
  sys_.validate();
  const auto& rows = sys_.rows();
  m_ = static_cast<int>(rows.size());
  sign_.resize(m_);
  b_.resize(m_);
  for (int r = 0; r < m_; ++r) {
    sign_[r] = rows[r].rhs < 0 ? -1 : 1;
    b_[r] = rows[r].rhs * sign_[r];
  }
  std::vector<SparseCol> by_var(sys_.num_vars());
  for (int r = 0; r < m_; ++r)
    for (const auto& [var, v] : rows[r].coeffs) by_var[var].emplace_back(r, v * sign_[r]);
  for (int j = 0; j < sys_.num_vars(); ++j) {
    cols_.push_back(by_var[j]);
    info_.push_back({Col::Plus, j});
    if (sys_.kinds()[j] == VarKind::Free) {
      SparseCol neg = by_var[j];
      for (auto& e : neg) e.second = -e.second;
      cols_.push_back(std::move(neg));
      info_.push_back({Col::Minus, j});
    }
  }
  basis_.assign(m_, -1);
  for (int r = 0; r < m_; ++r) {
    if (rows[r].sense != RowSense::Le) continue;
    cols_.push_back({{r, Rational(sign_[r])}});
    info_.push_back({Col::Slack, r});
    if (sign_[r] > 0) basis_[r] = static_cast<int>(cols_.size()) - 1;
  }
  for (int r = 0; r < m_; ++r) {
    if (basis_[r] >= 0) continue;
    cols_.push_back({{r, Rational(1)}});
    info_.push_back({Col::Artificial, r});
    basis_[r] = static_cast<int>(cols_.size()) - 1;
  }
  is_basic_.assign(cols_.size(), 0);
  for (int c : basis_) is_basic_[c] = 1;
  binv_.assign(m_, std::vector<Rational>(m_, Rational(0)));
  for (int r = 0; r < m_; ++r) binv_[r][r] = 1;
  xb_ = b_;
}

std::vector<Rational> Simplex::duals(const std::vector<Rational>& cost) const {
  std::vector<Rational> pi(m_, Rational(0));
  for (int k = 0; k < m_; ++k) {
    const Rational& cb = cost[basis_[k]];
    if (cb == 0) continue;
    for (int i = 0; i < m_; ++i)
      if (binv_[k][i] != 0) pi[i] += cb * binv_[k][i];
  }
  return pi;
}

std::vector<Rational> Simplex::column_image(int col) const {
  std::vector<Rational> d(m_, Rational(0));
  for (const auto& [r, v] : cols_[col])
    for (int i = 0; i < m_; ++i)
      if (binv_[i][r] != 0) d[i] += binv_[i][r] * v;
  return d;
}

void Simplex::pivot(int row, int col, const std::vector<Rational>& d) {
  const Rational piv = d[row];
  Rational theta = xb_[row] / piv;
  if (stats_) {
    ++stats_->pivots;
    if (theta == 0) ++stats_->degenerate_pivots;
  }
  auto& prow = binv_[row];
  for (auto& v : prow)
    if (v != 0) v /= piv;
  for (int i = 0; i < m_; ++i) {
    if (i == row || d[i] == 0) continue;
    if (theta != 0) xb_[i] -= theta * d[i];
    auto& ri = binv_[i];
    for (int k = 0; k < m_; ++k)
      if (prow[k] != 0) ri[k] -= d[i] * prow[k];
  }
  xb_[row] = theta;
  is_basic_[basis_[row]] = 0;
  basis_[row] = col;
  is_basic_[col] = 1;
}

// Ratio ties are broken lexicographically on the rows of [x_B | B^{-1}] scaled by
// 1/d; the initial basis is the identity, so this rule cannot cycle.
bool Simplex::iterate(const std::vector<Rational>& cost, bool allow_artificial) {
  const int ncols = static_cast<int>(cols_.size());
  Rational rc, best;
  for (;;) {
    auto pi = duals(cost);
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (is_basic_[j]) continue;
      if (!allow_artificial && info_[j].kind == Col::Artificial) continue;
      rc = cost[j];
      for (const auto& [r, v] : cols_[j])
        if (pi[r] != 0) rc -= pi[r] * v;
      if (rc >= 0) continue;
      if (enter < 0 || rc < best) {
        enter = j;
        best = rc;
      }
    }
    if (enter < 0) return true;
    auto d = column_image(enter);
    std::vector<int> ties;
    Rational ratio, r;
    for (int i = 0; i < m_; ++i) {
      if (d[i] <= 0) continue;
      r = xb_[i] / d[i];
      if (ties.empty() || r < ratio) {
        ties.assign(1, i);
        ratio = r;
      } else if (r == ratio) {
        ties.push_back(i);
      }
    }
    if (ties.empty()) return false;
    for (int k = 0; k < m_ && ties.size() > 1; ++k) {
      std::vector<int> keep;
      Rational low;
      for (int i : ties) {
        r = binv_[i][k] / d[i];
        if (keep.empty() || r < low) {
          keep.assign(1, i);
          low = r;
        } else if (r == low) {
          keep.push_back(i);
        }
      }
      ties.swap(keep);
    }
    if (ratio == 0 && stats_) stats_->lexicographic = true;
    pivot(ties.front(), enter, d);
  }
}

void Simplex::drive_out_artificials() {
  for (int row = 0; row < m_; ++row) {
    if (info_[basis_[row]].kind != Col::Artificial) continue;
    for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
      if (is_basic_[j] || info_[j].kind == Col::Artificial) continue;
      Rational entry = 0;
      for (const auto& [r, v] : cols_[j])
        if (binv_[row][r] != 0) entry += binv_[row][r] * v;
      if (entry == 0) continue;
      pivot(row, j, column_image(j));
      break;
    }
    // Otherwise the row is redundant and the artificial stays basic at zero.
  }
}

std::vector<Rational> Simplex::primal() const {
  std::vector<Rational> x(sys_.num_vars(), Rational(0));
  for (int i = 0; i < m_; ++i) {
    const auto& ci = info_[basis_[i]];
    if (ci.kind == Col::Plus)
      x[ci.ref] += xb_[i];
    else if (ci.kind == Col::Minus)
      x[ci.ref] -= xb_[i];
  }
  return x;
}

OptimizeResult Simplex::run(bool optimize_objective) {
  const int ncols = static_cast<int>(cols_.size());
  std::vector<Rational> phase1(ncols, Rational(0));
  bool any_artificial = false;
  for (int j = 0; j < ncols; ++j)
    if (info_[j].kind == Col::Artificial) {
      phase1[j] = 1;
      any_artificial = true;
    }
  if (any_artificial) {
    iterate(phase1, true);
    Rational infeas = 0;
    for (int i = 0; i < m_; ++i)
      if (info_[basis_[i]].kind == Col::Artificial) infeas += xb_[i];
    if (infeas > 0) {
      auto pi = duals(phase1);
      std::vector<Rational> y(m_);
      for (int r = 0; r < m_; ++r) y[r] = -pi[r] * sign_[r];
      Certificate cert{Certificate::Kind::Farkas, std::move(y)};
      if (!verify_farkas(sys_, cert.values)) throw InternalError("simplex produced an invalid Farkas certificate");
      return {OptimizeResult::Status::Infeasible, std::move(cert), Rational(0)};
    }
    drive_out_artificials();
  }
  OptimizeResult::Status status = OptimizeResult::Status::Optimal;
  Rational value = 0;
  if (optimize_objective && sys_.objective()) {
    const auto& obj = *sys_.objective();
    std::vector<Rational> cost(ncols, Rational(0));
    for (int j = 0; j < ncols; ++j) {
      if (info_[j].kind == Col::Plus) cost[j] = obj[info_[j].ref];
      if (info_[j].kind == Col::Minus) cost[j] = -obj[info_[j].ref];
    }
    if (!iterate(cost, false)) status = OptimizeResult::Status::Unbounded;
  }
  auto x = primal();
  if (!verify_witness(sys_, x)) throw InternalError("simplex produced an invalid witness");
  if (sys_.objective())
    for (int j = 0; j < sys_.num_vars(); ++j) value += (*sys_.objective())[j] * x[j];
  return {status, Certificate{Certificate::Kind::Witness, std::move(x)}, value};
}

}  // namespace

Certificate feasible(const RationalSystem& sys, SimplexStats* stats) {
  Simplex s(sys, stats);
  return s.run(false).certificate;
}

OptimizeResult optimize(const RationalSystem& sys, SimplexStats* stats) {
  Simplex s(sys, stats);
  return s.run(true);
}


namespace {

// Revised phase I simplex in doubles. Returns the primal point when the
// perturbed problem looks feasible; it only guides the exact solve.
std::optional<std::vector<double>> float_phase_one(const RationalSystem& sys) {
  const auto& rows = sys.rows();
  const int m = static_cast<int>(rows.size());
  const int nv = sys.num_vars();
  std::vector<std::vector<std::pair<int, double>>> cols;
  std::vector<int> var_of;  // column -> variable; ~var for the negative part of a free one; m+ for slacks
  std::vector<char> artificial;
  {
    std::vector<std::vector<std::pair<int, double>>> by_var(nv);
    for (int i = 0; i < m; ++i) {
      const double sign = rows[i].rhs < 0 ? -1.0 : 1.0;
      for (const auto& [var, v] : rows[i].coeffs) by_var[var].emplace_back(i, sign * v.get_d());
    }
    for (int j = 0; j < nv; ++j) {
      cols.push_back(by_var[j]);
      var_of.push_back(j);
      if (sys.kinds()[j] == VarKind::Free) {
        auto neg = by_var[j];
        for (auto& e : neg) e.second = -e.second;
        cols.push_back(std::move(neg));
        var_of.push_back(~j);
      }
    }
  }
  const int ns = static_cast<int>(cols.size());
  artificial.assign(ns, 0);
  std::vector<int> basis(m, -1);
  std::vector<double> xb(m);
  for (int i = 0; i < m; ++i) {
    const double sign = rows[i].rhs < 0 ? -1.0 : 1.0;
    // Small distinct perturbations keep the float pivots away from degeneracy.
    xb[i] = sign * rows[i].rhs.get_d() + 1e-7 * (1.0 + 0.37 * (i % 11));
    if (rows[i].sense == RowSense::Le) {
      cols.push_back({{i, sign}});
      artificial.push_back(0);
      if (sign > 0) basis[i] = static_cast<int>(cols.size()) - 1;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= 0) continue;
    cols.push_back({{i, 1.0}});
    artificial.push_back(1);
    basis[i] = static_cast<int>(cols.size()) - 1;
  }
  const int ncols = static_cast<int>(cols.size());
  std::vector<char> basic(ncols, 0);
  for (int c : basis) basic[c] = 1;
  std::vector<double> binv(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) binv[static_cast<std::size_t>(i) * m + i] = 1.0;
  std::vector<double> pi(m), d(m);
  constexpr double eps = 1e-9;
  const long limit = 20L * (m + ncols) + 1000;
  for (long iter = 0; iter < limit; ++iter) {
    std::fill(pi.begin(), pi.end(), 0.0);
    for (int k = 0; k < m; ++k) {
      if (!artificial[basis[k]]) continue;
      const double* row = &binv[static_cast<std::size_t>(k) * m];
      for (int i = 0; i < m; ++i) pi[i] += row[i];
    }
    int enter = -1;
    double best = -eps;
    for (int j = 0; j < ncols; ++j) {
      if (basic[j] || artificial[j]) continue;
      double rc = 0;
      for (const auto& [r, v] : cols[j]) rc -= pi[r] * v;
      if (rc < best) {
        best = rc;
        enter = j;
      }
    }
    if (enter < 0) break;
    std::fill(d.begin(), d.end(), 0.0);
    for (const auto& [r, v] : cols[enter])
      for (int i = 0; i < m; ++i) d[i] += binv[static_cast<std::size_t>(i) * m + r] * v;
    int leave = -1;
    double ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (d[i] <= eps) continue;
      const double r = xb[i] / d[i];
      if (leave < 0 || r < ratio - 1e-12 || (std::abs(r - ratio) <= 1e-12 && d[i] > d[leave])) {
        leave = i;
        ratio = r;
      }
    }
    if (leave < 0) return std::nullopt;
    const double piv = d[leave];
    double* prow = &binv[static_cast<std::size_t>(leave) * m];
    for (int k = 0; k < m; ++k) prow[k] /= piv;
    xb[leave] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || d[i] == 0.0) continue;
      const double f = d[i];
      double* row = &binv[static_cast<std::size_t>(i) * m];
      for (int k = 0; k < m; ++k) row[k] -= f * prow[k];
      xb[i] -= f * xb[leave];
    }
    basic[basis[leave]] = 0;
    basis[leave] = enter;
    basic[enter] = 1;
  }
  double infeasibility = 0;
  for (int i = 0; i < m; ++i)
    if (artificial[basis[i]]) infeasibility += xb[i];
  if (infeasibility > 1e-5) return std::nullopt;
  std::vector<double> x(nv, 0.0);
  for (int i = 0; i < m; ++i) {
    const int c = basis[i];
    if (c >= ns) continue;
    const int v = var_of[c];
    if (v >= 0)
      x[v] += xb[i];
    else
      x[~v] -= xb[i];
  }
  return x;
}

}  // namespace

Certificate feasible_guided(const RationalSystem& sys, SimplexStats* stats) {
  sys.validate();
  if (auto guess = float_phase_one(sys)) {
    // Keep free variables and the nonnegative ones the float solve used.
    std::vector<int> keep;
    std::vector<int> slot(sys.num_vars(), -1);
    for (int j = 0; j < sys.num_vars(); ++j)
      if (sys.kinds()[j] == VarKind::Free || (*guess)[j] > 1e-12) {
        slot[j] = static_cast<int>(keep.size());
        keep.push_back(j);
      }
    RationalSystem restricted;
    for (int j : keep) restricted.add_variable(sys.names()[j], sys.kinds()[j]);
    for (const auto& row : sys.rows()) {
      SparseRow r;
      for (const auto& [var, v] : row.coeffs)
        if (slot[var] >= 0) r.emplace_back(slot[var], v);
      if (row.sense == RowSense::Eq)
        restricted.add_eq(std::move(r), row.rhs);
      else
        restricted.add_le(std::move(r), row.rhs);
    }
    auto cert = feasible(restricted, stats);
    if (cert.is_witness()) {
      std::vector<Rational> x(sys.num_vars(), Rational(0));
      for (std::size_t k = 0; k < keep.size(); ++k) x[keep[k]] = cert.values[k];
      if (!verify_witness(sys, x)) throw InternalError("guided solve produced an invalid witness");
      return {Certificate::Kind::Witness, std::move(x)};
    }
  }
  return feasible(sys, stats);
}

Certificate cone_member(const std::vector<Rational>& point, const std::vector<SparseRow>& generators) {
  const int dim = static_cast<int>(point.size());
  RationalSystem sys;
  std::vector<SparseRow> rows(dim);
  for (std::size_t a = 0; a < generators.size(); ++a) {
    int var = sys.add_variable("t" + std::to_string(a));
    for (const auto& [k, v] : generators[a]) {
      if (k < 0 || k >= dim) throw DomainError("generator coordinate out of range");
      rows[k].emplace_back(var, v);
    }
  }
  for (int k = 0; k < dim; ++k) sys.add_eq(std::move(rows[k]), point[k]);
  return feasible_guided(sys);
}

Certificate cone_member(const std::vector<Rational>& point, const std::vector<std::vector<Rational>>& generators) {
  std::vector<SparseRow> sparse;
  sparse.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.size() != point.size()) throw DomainError("generator and point have different dimensions");
    sparse.push_back(sparse_of(g));
  }
  return cone_member(point, sparse);
}

}  // namespace fcone

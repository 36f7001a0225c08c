#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcone/rational.hpp"

namespace fcone {

using SparseRow = std::vector<std::pair<int, Rational>>;

enum class VarKind { Free, NonNegative };
enum class RowSense { Eq, Le };

struct Constraint {
  SparseRow coeffs;  // sorted by variable, no zeros
  RowSense sense;
  Rational rhs;
};

// A linear system over named variables; rows are equalities or a.x <= b.
class RationalSystem {
 public:
  RationalSystem() = default;

  int add_variable(std::string name, VarKind kind = VarKind::NonNegative);
  void add_eq(SparseRow coeffs, Rational rhs);
  void add_le(SparseRow coeffs, Rational rhs);
  void add_ge(SparseRow coeffs, Rational rhs);
  void add_eq_dense(const std::vector<Rational>& coeffs, Rational rhs);
  void add_le_dense(const std::vector<Rational>& coeffs, Rational rhs);
  void add_ge_dense(const std::vector<Rational>& coeffs, Rational rhs);
  // Minimized by optimize().
  void set_objective(std::vector<Rational> c) {
    for (auto& v : c) v.canonicalize();
    objective_ = std::move(c);
  }

  int num_vars() const { return static_cast<int>(kinds_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<VarKind>& kinds() const { return kinds_; }
  const std::vector<Constraint>& rows() const { return rows_; }
  const std::optional<std::vector<Rational>>& objective() const { return objective_; }

  // Throws MalformedSystem on out-of-range variables or a bad objective length.
  void validate() const;

 private:
  void add(SparseRow coeffs, RowSense sense, Rational rhs);
  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
  std::vector<Constraint> rows_;
  std::optional<std::vector<Rational>> objective_;
};

// Either a point satisfying every row, or Farkas multipliers y (one per row,
// y >= 0 on <= rows) with y.A = 0 on free variables, y.A >= 0 on nonnegative
// ones and y.b < 0.
struct Certificate {
  enum class Kind { Witness, Farkas };
  Kind kind;
  std::vector<Rational> values;

  bool is_witness() const { return kind == Kind::Witness; }
  bool is_farkas() const { return kind == Kind::Farkas; }
};

bool verify_witness(const RationalSystem& sys, const std::vector<Rational>& x);
bool verify_farkas(const RationalSystem& sys, const std::vector<Rational>& y);
bool verify(const RationalSystem& sys, const Certificate& cert);

struct SimplexStats {
  std::uint64_t pivots = 0;
  std::uint64_t degenerate_pivots = 0;
  bool lexicographic = false;  // a degenerate ratio tie was broken lexicographically
};

// Exact two-phase simplex. The returned certificate has been verified.
Certificate feasible(const RationalSystem& sys, SimplexStats* stats = nullptr);

// Same contract as feasible(). A floating-point phase I proposes a support and
// an exact solve restricted to it confirms; otherwise the full exact solve runs.
Certificate feasible_guided(const RationalSystem& sys, SimplexStats* stats = nullptr);

struct OptimizeResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status;
  Certificate certificate;  // witness at the optimum, or Farkas
  Rational value;
};

OptimizeResult optimize(const RationalSystem& sys, SimplexStats* stats = nullptr);

// Is point a nonnegative combination of the generators? Witness values are the
// coefficients; Farkas values are a functional y with y.g >= 0 for every
// generator and y.point < 0.
Certificate cone_member(const std::vector<Rational>& point, const std::vector<std::vector<Rational>>& generators);
Certificate cone_member(const std::vector<Rational>& point, const std::vector<SparseRow>& generators);

struct ConeHRep {
  int dim = 0;
  std::vector<std::vector<Rational>> inequalities;  // a.x >= 0
  std::vector<std::vector<Rational>> equalities;    // a.x = 0
};

struct ConeVRep {
  int dim = 0;
  std::vector<std::vector<Integer>> rays;  // primitive, sorted
};

// A group acting on coordinates: perms[g][k] is the image of coordinate k.
// Every group element is listed, not just generators.
struct CoordinateAction {
  std::vector<std::vector<int>> perms;
};

struct RayOrbit {
  std::vector<Integer> representative;  // lexicographically least image
  std::size_t size = 0;
};

struct DDOptions {
  std::size_t max_rays = 2'000'000;
};

struct ExtremalRays {
  ConeVRep vrep;
  std::vector<RayOrbit> orbits;  // filled when an action is supplied
};

// Double description. Throws NotPointed if the cone contains a line and
// BudgetExceeded past max_rays intermediate rays.
ExtremalRays extremal_rays(const ConeHRep& hrep, const CoordinateAction* symmetry = nullptr,
                           const DDOptions& options = {});

std::vector<Integer> apply_action(const std::vector<int>& perm, const std::vector<Integer>& v);

}  // namespace fcone

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcone/curves.hpp"
#include "fcone/fcurve.hpp"
#include "fcone/picard.hpp"
#include "fcone/ratlp.hpp"

namespace fcone {

// Bit k is boundary coordinate k of a ProperIndex; enough for n <= 8 (rho = 119).
__extension__ typedef unsigned __int128 CoordMask;

inline constexpr int kMaxSearchMarkings = 8;

int coord_popcount(CoordMask m);
std::string coord_hex(CoordMask m, int rho);
CoordMask parse_coord_hex(const std::string& text, int rho);

// Per-n tables shared by the LPs and the search.
class BoundaryModel {
 public:
  explicit BoundaryModel(int n);

  int n() const { return n_; }
  int rho() const { return static_cast<int>(index_.size()); }
  const ProperIndex& index() const { return index_; }
  const std::vector<FCurve>& fcurves() const { return fcurves_; }
  // Proper coordinates of each F-curve class (entries +-1).
  const std::vector<SparseRow>& fcurve_vectors() const { return vectors_; }
  std::vector<Rational> proper_vector(const CurveClass& c) const;
  CoordMask full() const;

 private:
  int n_;
  ProperIndex index_;
  std::vector<FCurve> fcurves_;
  std::vector<SparseRow> vectors_;
};

// A set of boundary coordinates.
class SupportSet {
 public:
  SupportSet(int n, CoordMask bits);
  static SupportSet full(int n);
  static SupportSet of(int n, const std::vector<SubsetMask>& blocks);

  int n() const { return n_; }
  CoordMask bits() const { return bits_; }
  bool contains(int coord) const { return (bits_ >> coord) & 1U; }
  int size() const { return coord_popcount(bits_); }
  std::vector<int> coords() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  int n_;
  CoordMask bits_;
};

struct SupportDecision {
  Certificate certificate;
  std::optional<PBD> pbd;  // integral effective PBD supported on J, when one exists
  // Without a PBD: every coordinate the Farkas vector does not forbid. No subset of
  // this mask supports an effective PBD.
  CoordMask refuted = 0;
  bool supports() const { return certificate.is_witness(); }
};

// Is there a nonzero effective PBD with support inside J?
SupportDecision supports_effective_pbd(const BoundaryModel& model, const SupportSet& j);

struct CriticalDecision {
  Certificate certificate;           // witness values are F-curve coefficients
  std::vector<Rational> combination;  // proper coordinates of the combination, when critical
  bool critical() const { return certificate.is_witness(); }
};

// Is there v != 0 in the F-curve cone with v . Delta_S <= 0 for all S outside J?
CriticalDecision is_critical(const BoundaryModel& model, const SupportSet& j);

struct MembershipDecision {
  Certificate certificate;               // over proper coordinates
  std::optional<DivisorClass> separator;  // F-nef, negative on the class
  bool member() const { return certificate.is_witness(); }
};

MembershipDecision fcone_member(const BoundaryModel& model, const CurveClass& c);
MembershipDecision fcone_member(const CurveClass& c);

// x meets every boundary divisor nonnegatively, y every F-curve, and x . y < 0.
bool witness_pair_check(const CurveClass& x, const DivisorClass& y);

// The F-curve and PBD cones are pointed and full-dimensional.
struct DegeneracyReport {
  bool fcurve_cone_pointed = false;
  bool fcurve_cone_full = false;
  bool pbd_cone_pointed = false;
  bool pbd_cone_full = false;
  bool ok() const { return fcurve_cone_pointed && fcurve_cone_full && pbd_cone_pointed && pbd_cone_full; }
};

DegeneracyReport check_nondegenerate(const BoundaryModel& model);

struct PbdRayOrbit {
  PBD representative;
  std::size_t orbit_size = 0;
  std::int64_t index = 0;     // of the representative
  std::int64_t min_index = 0;  // over the whole orbit
  std::int64_t max_index = 0;
};

struct PbdRayReport {
  int n = 0;
  std::size_t rays = 0;
  std::vector<PbdRayOrbit> orbits;
  std::int64_t min_index = 0;  // over all rays
  std::int64_t max_index = 0;
};

// Extremal rays of PBDcone(n) up to S_n. n <= 6 by default; n = 7 only with extended = true.
PbdRayReport pbd_extremal_rays(int n, bool extended = false);

struct BiplaneReport {
  PBD biplane{12};
  CurveClass curve{12};
  std::int64_t index = 0;
  std::vector<std::int64_t> degrees;
  bool effective = false;
  bool symmetrized = false;  // LP solved on orbit sums under a symmetry group of the design
  std::size_t group_order = 0;
  std::size_t lp_rows = 0;
  std::size_t lp_columns = 0;
  std::size_t fcurves = 0;
  bool member = true;
  std::optional<DivisorClass> separator;
  bool witness_ok = false;
};

BiplaneReport biplane_certificate();

struct SearchOptions {
  std::string checkpoint;           // empty: no checkpoint
  std::uint64_t max_nodes = 0;      // 0: unlimited; counts nodes evaluated in this run
  std::uint64_t checkpoint_every = 10'000;
  int threads = 1;
};

struct SearchFailure {
  SupportSet support;
  PBD pbd;
  std::vector<Rational> functional;  // Farkas multipliers of the criticality LP
};

struct SearchReport {
  int n = 0;
  bool complete = false;
  std::uint64_t nodes_visited = 0;
  std::uint64_t pruned = 0;
  std::uint64_t critical = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t resumed = 0;  // statuses taken from the checkpoint
  std::uint64_t support_lps = 0;
  std::uint64_t critical_lps = 0;
  std::uint64_t reused_witnesses = 0;
  std::vector<SearchFailure> failures;
  bool success() const { return complete && failures.empty(); }
};

// Every J is critical or supports no effective PBD. Throws CheckpointError on a bad file.
SearchReport verify_all_supports(int n, const SearchOptions& options = {});

// Canonical form of a coordinate set under S_n. Permutations are named by rank.
struct SupportCanon {
  CoordMask form;
  std::uint32_t to_form;                  // sends the input to form
  std::vector<std::uint32_t> stabilizer;  // every element fixing form
};

class SupportCanonizer {
 public:
  explicit SupportCanonizer(int n);
  int n() const { return n_; }
  int rho() const { return rho_; }
  SupportCanon canonicalize(CoordMask j) const;
  int image(std::uint32_t perm, int coord) const { return table_[static_cast<std::size_t>(perm) * rho_ + coord]; }
  CoordMask apply(std::uint32_t perm, CoordMask m) const;

 private:
  int n_;
  int rho_;
  ProperIndex index_;
  std::vector<std::uint8_t> table_;  // coordinate images, one row per permutation rank
};

}  // namespace fcone

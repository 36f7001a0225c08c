#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fcone/fnef.hpp"
#include "fcone/picard.hpp"

namespace fcone {

// Attachment weights with a_i = 1 mod p_i, a_i = 0 mod p_j (i != j < n) and a_n = -1 mod N.
struct CrtWeights {
  std::vector<int> primes;
  std::vector<std::int64_t> a;  // a_1 .. a_n
  std::int64_t N = 0;
  std::int64_t A = 0;

  int n() const { return static_cast<int>(a.size()); }
  // A(S) = sum_{i in S} a_i.
  std::int64_t weight(SubsetMask s) const;
};

CrtWeights crt_weights(const std::vector<int>& primes);

// ftilde(x) = f(supp x) for x != 0, ftilde(0) = 0.
ProductFn tilde(const DivisorClass& f, const std::vector<int>& primes);

struct LiftVerification {
  bool source_fnef = false;
  // Every positive bracket of ST is at least this; 4 * c >= 7 max|f| makes it dominate.
  Rational st_positive_floor = 4;
  Rational max_abs = 0;
  bool dominance = false;
  // On disjoint supports the bracket of ftilde is the F-curve pairing of f.
  bool equality_case_reduction = false;
  std::optional<bool> exhaustive;  // set when N^3 fits the budget
  std::uint64_t sampled = 0;
  bool sampled_ok = true;

  bool passed() const {
    // A minimal c carries no dominance bound and needs the exhaustive scan instead.
    return source_fnef && equality_case_reduction && (dominance || exhaustive.value_or(false)) &&
           exhaustive.value_or(true) && sampled_ok;
  }
};

struct LiftResult {
  DivisorClass source;
  CrtWeights weights;
  Rational c;
  ProductFn lifted;
  LiftVerification verification;
};

struct LiftOptions {
  std::uint64_t triple_budget = kDefaultTripleBudget;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  // Use the smallest c that works (exhaustive search; small groups only).
  bool minimal_c = false;
};

// F = ftilde + c ST with c = 2 max|f|. Throws NotFnef if f is not F-nef.
LiftResult lift(const DivisorClass& f, const std::vector<int>& primes, const LiftOptions& options = {});

// Smallest c >= 0 making ftilde + c ST F-nef, by exhaustive scan over Z_N^3.
Rational minimal_lift_constant(const DivisorClass& f, const std::vector<int>& primes,
                               std::uint64_t budget = kDefaultTripleBudget);

// S -> f(|S| mod m), for m | n.
DivisorClass symmetric_divisor(int m, const CyclicFn& f, int n);

// S -> g(A(S) mod N). Its pairing with c_{I,J,K} is bracket(g, A(I), A(J), A(K)).
DivisorClass pullback_symmetric(const CyclicFn& g, const CrtWeights& weights);

struct MainTheoremReport {
  int n = 0;
  Rational c;
  std::int64_t N = 0;
  std::int64_t A = 0;
  std::vector<std::int64_t> weights;
  bool lift_fnef = false;
  bool pullback_equals_source = false;  // pullback of ftilde and of F
  bool supertotal_vanishes = false;
  bool verified() const { return lift_fnef && pullback_equals_source && supertotal_vanishes; }
};

MainTheoremReport verify_main_theorem(const DivisorClass& f, const std::vector<int>& primes,
                                      const LiftOptions& options = {});

// A random integral F-nef divisor: nonnegative combination of pullbacks of standard
// functions, plus random Keel relations so that the representative is not special.
DivisorClass random_fnef_divisor(int n, std::uint64_t seed);

}  // namespace fcone

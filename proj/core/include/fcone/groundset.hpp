#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fcone {

// Bit i is element i; bit 0 is never used.
using SubsetMask = std::uint32_t;

inline constexpr int kMaxMarkings = 30;
// Exhaustive orbit enumeration runs over all of S_n.
inline constexpr int kMaxOrbitMarkings = 8;

// Mask of [n-1] = {1, ..., n-1}.
constexpr SubsetMask lower_mask(int n) { return ((SubsetMask{1} << n) - 1) & ~SubsetMask{1}; }
// Mask of [n] = {1, ..., n}.
constexpr SubsetMask marking_mask(int n) { return ((SubsetMask{1} << (n + 1)) - 1) & ~SubsetMask{1}; }

int popcount(SubsetMask m);
std::vector<int> mask_members(SubsetMask m);
SubsetMask mask_of(std::span<const int> members);

// Size-then-lexicographic order on subsets of equal ambient set.
std::strong_ordering compare_size_lex(SubsetMask a, SubsetMask b);

// A nonempty subset S of [n-1]; it names the 2-part partition S | [n]\S of [n].
class Subset {
 public:
  Subset(int n, SubsetMask mask);
  static Subset of(int n, std::initializer_list<int> members);
  static Subset of(int n, std::span<const int> members);

  int n() const { return n_; }
  SubsetMask mask() const { return mask_; }
  int size() const { return popcount(mask_); }
  bool contains(int i) const { return i >= 1 && i < 32 && ((mask_ >> i) & 1U); }
  std::vector<int> members() const { return mask_members(mask_); }
  // Hexadecimal mask over bits 1..n-1, as written in checkpoint files.
  std::string hex() const;

  friend bool operator==(const Subset&, const Subset&) = default;
  friend std::strong_ordering operator<=>(const Subset& a, const Subset& b);

 private:
  int n_;
  SubsetMask mask_;
};

// 2 <= |S| <= n-2: S names a boundary divisor.
bool is_proper(const Subset& s);

// All 2^(n-1)-1 elements of Sigma_n in size-then-lex order.
std::vector<Subset> sigma_elements(int n);
// The 2^(n-1)-n-1 proper elements, in the same order.
std::vector<Subset> proper_elements(int n);

class Permutation {
 public:
  // images[k] is the image of k+1; values are 1-based.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);
  // Inverse of rank(): permutations of [n] in lexicographic order of image lists.
  static Permutation from_rank(int n, std::uint64_t rank);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  // (this * other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  std::uint64_t rank() const;
  bool is_identity() const;
  // Pointwise image of a set of markings.
  SubsetMask image(SubsetMask points) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

std::vector<Permutation> all_permutations(int n);

// Image of the partition {S, [n]\S} under sigma, normalized to the part avoiding n.
Subset act(const Permutation& sigma, const Subset& s);
SubsetMask act_mask(const Permutation& sigma, SubsetMask s, int n);

// Reduces a list of group elements to a generating set of the group they generate.
std::vector<Permutation> generating_subset(const std::vector<Permutation>& elements);

struct SubsetOrbit {
  Subset canonical;
  std::vector<Permutation> stabilizer_generators;
  std::size_t orbit_size;
};

SubsetOrbit orbit_canonical(const Subset& s);

// A set of elements of Sigma_n (for example the support of a PBD).
class SubsetFamily {
 public:
  SubsetFamily(int n, std::vector<Subset> members);
  int n() const { return n_; }
  const std::vector<Subset>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  friend bool operator==(const SubsetFamily&, const SubsetFamily&) = default;
  friend std::strong_ordering operator<=>(const SubsetFamily& a, const SubsetFamily& b);

 private:
  int n_;
  std::vector<Subset> members_;  // sorted, unique
};

SubsetFamily act(const Permutation& sigma, const SubsetFamily& family);

struct FamilyOrbit {
  SubsetFamily canonical;
  std::vector<Permutation> stabilizer_generators;
  std::size_t orbit_size;
};

FamilyOrbit orbit_canonical(const SubsetFamily& family);

// Orbits of S_n on Sigma_n (or on its proper elements), canonical forms ascending.
std::vector<SubsetOrbit> subset_orbits(int n, bool proper_only);

struct IntPartition {
  std::vector<int> parts;  // nonincreasing, positive

  int total() const;
  int length() const { return static_cast<int>(parts.size()); }
  bool is_strict() const;
  friend bool operator==(const IntPartition&, const IntPartition&) = default;
};

// Partitions of n with a part count in [min_parts, max_parts], reverse-lexicographic.
std::vector<IntPartition> partitions(int n, int min_parts = 1, int max_parts = 1 << 20);
std::vector<IntPartition> strict_partitions(int n, int min_parts = 1, int max_parts = 1 << 20);

}  // namespace fcone

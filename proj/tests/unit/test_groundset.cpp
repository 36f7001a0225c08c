#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fcone/error.hpp"
#include "fcone/groundset.hpp"

using namespace fcone;

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Partitions of n into parts of size at most k.
std::uint64_t partition_count(int n, int k, bool strict) {
  if (n == 0) return 1;
  if (k == 0) return 0;
  std::uint64_t total = partition_count(n, k - 1, strict);
  if (k <= n) total += partition_count(n - k, strict ? k - 1 : k, strict);
  return total;
}

// Orbit of a proper subset by brute force, as normalized masks.
std::set<SubsetMask> orbit_of(SubsetMask s, int n) {
  std::set<SubsetMask> out;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  do {
    SubsetMask img = 0;
    for (int i : mask_members(s)) img |= SubsetMask{1} << p[i - 1];
    if ((img >> n) & 1U) img = marking_mask(n) & ~img;
    out.insert(img);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("sigma and proper element counts") {
  for (int n = 4; n <= 10; ++n) {
    CHECK(sigma_elements(n).size() == (std::size_t{1} << (n - 1)) - 1);
    CHECK(proper_elements(n).size() == (std::size_t{1} << (n - 1)) - n - 1);
  }
}

TEST_CASE("size-then-lex order") {
  auto all = sigma_elements(6);
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(all[i - 1] < all[i]);
    CHECK(all[i - 1].size() <= all[i].size());
  }
  CHECK(all.front().members() == std::vector<int>{1});
  CHECK(Subset::of(6, {1, 2}) < Subset::of(6, {1, 3}));
  CHECK(Subset::of(6, {2, 3}) < Subset::of(6, {1, 2, 3}));
}

TEST_CASE("subset validation") {
  CHECK_THROWS_AS(Subset::of(5, {5}), DomainError);
  CHECK_THROWS_AS(Subset::of(5, {0, 1}), DomainError);
  CHECK_THROWS_AS(Subset(5, 0), DomainError);
  CHECK(Subset::of(6, {1, 4}).hex() == "12");
}

TEST_CASE("permutation ranks round trip") {
  for (int n = 1; n <= 6; ++n) {
    auto perms = all_permutations(n);
    CHECK(perms.size() == [n] {
      std::size_t f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      return f;
    }());
    for (std::size_t r = 0; r < perms.size(); ++r) {
      CHECK(perms[r].rank() == r);
      CHECK(Permutation::from_rank(n, r) == perms[r]);
    }
  }
}

TEST_CASE("act is a group action on Sigma_n") {
  std::mt19937_64 rng(7);
  const int n = 7;
  auto perms = all_permutations(n);
  std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& a = perms[pick(rng)];
    const auto& b = perms[pick(rng)];
    for (const auto& s : sigma_elements(n)) {
      CHECK(act(a, act(b, s)) == act(a.compose(b), s));
      CHECK(act(a.inverse(), act(a, s)) == s);
    }
  }
}

TEST_CASE("orbit canonical form against brute force") {
  for (int n = 4; n <= 7; ++n) {
    for (const auto& s : proper_elements(n)) {
      auto orbit = orbit_of(s.mask(), n);
      auto oc = orbit_canonical(s);
      SubsetMask least = *std::min_element(orbit.begin(), orbit.end(), [](SubsetMask a, SubsetMask b) {
        return compare_size_lex(a, b) < 0;
      });
      CHECK(oc.canonical.mask() == least);
      CHECK(oc.orbit_size == orbit.size());
      for (const auto& g : oc.stabilizer_generators) CHECK(act(g, oc.canonical) == oc.canonical);
    }
    std::size_t orbits = 0;
    for (int k = 2; k <= n / 2; ++k) ++orbits;
    CHECK(subset_orbits(n, true).size() == orbits);
  }
  CHECK(orbit_canonical(Subset::of(6, {2, 3})).orbit_size == binomial(6, 2));
}

TEST_CASE("family orbit canonical form is constant on orbits") {
  std::mt19937_64 rng(11);
  const int n = 6;
  auto props = proper_elements(n);
  auto perms = all_permutations(n);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Subset> members;
    for (const auto& s : props)
      if (rng() % 3 == 0) members.push_back(s);
    SubsetFamily fam(n, members);
    auto canon = orbit_canonical(fam);
    const auto& g = perms[rng() % perms.size()];
    CHECK(orbit_canonical(act(g, fam)).canonical == canon.canonical);
    CHECK(canon.canonical <= fam);
    for (const auto& h : canon.stabilizer_generators) CHECK(act(h, canon.canonical) == canon.canonical);
  }
}

TEST_CASE("generating subset generates the same group") {
  auto perms = all_permutations(4);
  auto gens = generating_subset(perms);
  std::set<std::vector<int>> closure{Permutation::identity(4).images()};
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto img : std::vector<std::vector<int>>(closure.begin(), closure.end()))
      for (const auto& g : gens)
        if (closure.insert(g.compose(Permutation(img)).images()).second) grew = true;
  }
  CHECK(closure.size() == 24);
  CHECK(gens.size() <= 4);
}

TEST_CASE("integer partitions") {
  for (int n = 1; n <= 16; ++n) {
    auto all = partitions(n);
    auto strict = strict_partitions(n);
    CHECK(all.size() == partition_count(n, n, false));
    CHECK(strict.size() == partition_count(n, n, true));
    for (const auto& p : all) {
      CHECK(p.total() == n);
      CHECK(std::is_sorted(p.parts.rbegin(), p.parts.rend()));
    }
    for (const auto& p : strict) CHECK(p.is_strict());
  }
  for (const auto& p : partitions(8, 4, 4)) CHECK(p.length() == 4);
  CHECK(partitions(8, 4, 4).size() == 5);
}

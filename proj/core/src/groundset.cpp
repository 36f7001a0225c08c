#include "fcone/groundset.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "fcone/error.hpp"

namespace fcone {

int popcount(SubsetMask m) { return std::popcount(m); }

std::vector<int> mask_members(SubsetMask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

SubsetMask mask_of(std::span<const int> members) {
  SubsetMask m = 0;
  for (int i : members) {
    if (i < 1 || i > kMaxMarkings) throw DomainError("element out of range: " + std::to_string(i));
    m |= SubsetMask{1} << i;
  }
  return m;
}

std::strong_ordering compare_size_lex(SubsetMask a, SubsetMask b) {
  if (auto c = std::popcount(a) <=> std::popcount(b); c != 0) return c;
  if (a == b) return std::strong_ordering::equal;
  SubsetMask diff = a ^ b;
  SubsetMask low = diff & (~diff + 1);
  return (a & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

Subset::Subset(int n, SubsetMask mask) : n_(n), mask_(mask) {
  if (n < 4 || n > kMaxMarkings) throw DomainError("marking count out of range: " + std::to_string(n));
  if (mask == 0) throw DomainError("subset must be nonempty");
  if ((mask & ~lower_mask(n)) != 0) throw DomainError("subset must lie in [n-1]");
}

Subset Subset::of(int n, std::initializer_list<int> members) {
  return of(n, std::span<const int>(members.begin(), members.size()));
}

Subset Subset::of(int n, std::span<const int> members) { return Subset(n, mask_of(members)); }

std::string Subset::hex() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%x", static_cast<unsigned>(mask_));
  return buf;
}

std::strong_ordering operator<=>(const Subset& a, const Subset& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  return compare_size_lex(a.mask_, b.mask_);
}

bool is_proper(const Subset& s) { return s.size() >= 2 && s.size() <= s.n() - 2; }

std::vector<Subset> sigma_elements(int n) {
  if (n < 4 || n > kMaxMarkings) throw DomainError("sigma_elements requires 4 <= n <= 30");
  std::vector<SubsetMask> masks;
  masks.reserve((std::size_t{1} << (n - 1)) - 1);
  for (SubsetMask m = 1; m < (SubsetMask{1} << (n - 1)); ++m) masks.push_back(m << 1);
  std::sort(masks.begin(), masks.end(), [](SubsetMask a, SubsetMask b) { return compare_size_lex(a, b) < 0; });
  std::vector<Subset> out;
  out.reserve(masks.size());
  for (auto m : masks) out.emplace_back(n, m);
  return out;
}

std::vector<Subset> proper_elements(int n) {
  auto all = sigma_elements(n);
  std::erase_if(all, [](const Subset& s) { return !is_proper(s); });
  return all;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  if (n < 1 || n > kMaxMarkings) throw DomainError("permutation size out of range");
  SubsetMask seen = 0;
  for (int v : images_) {
    if (v < 1 || v > n || ((seen >> v) & 1U)) throw DomainError("images do not form a bijection");
    seen |= SubsetMask{1} << v;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto img = identity(n).images_;
  if (a < 1 || a > n || b < 1 || b > n) throw DomainError("transposition out of range");
  std::swap(img[a - 1], img[b - 1]);
  return Permutation(std::move(img));
}

Permutation Permutation::from_rank(int n, std::uint64_t rank) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<std::uint64_t> fact(n + 1, 1);
  for (int k = 1; k <= n; ++k) fact[k] = fact[k - 1] * k;
  if (rank >= fact[n]) throw DomainError("permutation rank out of range");
  std::vector<int> img;
  img.reserve(n);
  for (int k = n; k >= 1; --k) {
    auto idx = rank / fact[k - 1];
    rank %= fact[k - 1];
    img.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.n() != n()) throw DomainError("composing permutations of different degree");
  std::vector<int> img(n());
  for (int i = 1; i <= n(); ++i) img[i - 1] = (*this)(other(i));
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(n());
  for (int i = 1; i <= n(); ++i) img[(*this)(i) - 1] = i;
  return Permutation(std::move(img));
}

std::uint64_t Permutation::rank() const {
  const int n = this->n();
  std::uint64_t r = 0;
  SubsetMask used = 0;
  for (int k = 0; k < n; ++k) {
    int v = images_[k];
    int smaller_unused = v - 1 - std::popcount(used & ((SubsetMask{1} << v) - 1));
    r = r * static_cast<std::uint64_t>(n - k) + static_cast<std::uint64_t>(smaller_unused);
    used |= SubsetMask{1} << v;
  }
  return r;
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= n(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

SubsetMask Permutation::image(SubsetMask points) const {
  SubsetMask out = 0;
  while (points) {
    int i = std::countr_zero(points);
    points &= points - 1;
    out |= SubsetMask{1} << images_[i - 1];
  }
  return out;
}

std::vector<Permutation> all_permutations(int n) {
  if (n > 10) throw DomainError("refusing to enumerate S_n for n > 10");
  std::vector<Permutation> out;
  auto img = Permutation::identity(n).images();
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

SubsetMask act_mask(const Permutation& sigma, SubsetMask s, int n) {
  SubsetMask img = sigma.image(s);
  if ((img >> n) & 1U) img = marking_mask(n) & ~img;
  return img;
}

Subset act(const Permutation& sigma, const Subset& s) {
  if (sigma.n() != s.n()) throw DomainError("permutation and subset have different ambient n");
  return Subset(s.n(), act_mask(sigma, s.mask(), s.n()));
}

std::vector<Permutation> generating_subset(const std::vector<Permutation>& elements) {
  std::vector<Permutation> gens;
  if (elements.empty()) return gens;
  const int n = elements.front().n();
  std::unordered_set<std::uint64_t> closure{Permutation::identity(n).rank()};
  for (const auto& g : elements) {
    if (closure.contains(g.rank())) continue;
    gens.push_back(g);
    // Rebuild the generated group from scratch; groups here have at most n! <= 40320 elements.
    closure.clear();
    std::deque<Permutation> queue{Permutation::identity(n)};
    closure.insert(queue.front().rank());
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      for (const auto& h : gens) {
        auto next = h.compose(cur);
        if (closure.insert(next.rank()).second) queue.push_back(std::move(next));
      }
    }
  }
  return gens;
}

namespace {

void require_orbit_n(int n) {
  if (n > kMaxOrbitMarkings) throw DomainError("exhaustive orbit enumeration supports n <= 8");
}

}  // namespace

SubsetOrbit orbit_canonical(const Subset& s) {
  const int n = s.n();
  require_orbit_n(n);
  SubsetMask best = s.mask();
  std::unordered_set<SubsetMask> orbit;
  auto perms = all_permutations(n);
  for (const auto& sigma : perms) {
    SubsetMask img = act_mask(sigma, s.mask(), n);
    orbit.insert(img);
    if (compare_size_lex(img, best) < 0) best = img;
  }
  std::vector<Permutation> stab;
  for (const auto& sigma : perms)
    if (act_mask(sigma, best, n) == best) stab.push_back(sigma);
  return {Subset(n, best), generating_subset(stab), orbit.size()};
}

SubsetFamily::SubsetFamily(int n, std::vector<Subset> members) : n_(n), members_(std::move(members)) {
  for (const auto& m : members_)
    if (m.n() != n) throw DomainError("family member has a different ambient n");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

std::strong_ordering operator<=>(const SubsetFamily& a, const SubsetFamily& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.members_.size() <=> b.members_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(), b.members_.begin(),
                                                b.members_.end());
}

SubsetFamily act(const Permutation& sigma, const SubsetFamily& family) {
  std::vector<Subset> img;
  img.reserve(family.size());
  for (const auto& s : family.members()) img.push_back(act(sigma, s));
  return SubsetFamily(family.n(), std::move(img));
}

FamilyOrbit orbit_canonical(const SubsetFamily& family) {
  const int n = family.n();
  require_orbit_n(n);
  SubsetFamily best = family;
  Permutation to_best = Permutation::identity(n);
  auto perms = all_permutations(n);
  for (const auto& sigma : perms) {
    auto img = act(sigma, family);
    if (img < best) {
      best = std::move(img);
      to_best = sigma;
    }
  }
  // Stab(best) is the conjugate of Stab(family) by to_best.
  std::vector<Permutation> stab;
  const auto back = to_best.inverse();
  for (const auto& sigma : perms)
    if (act(sigma, family) == family) stab.push_back(to_best.compose(sigma).compose(back));
  return {best, generating_subset(stab), perms.size() / stab.size()};
}

std::vector<SubsetOrbit> subset_orbits(int n, bool proper_only) {
  require_orbit_n(n);
  std::vector<SubsetOrbit> out;
  std::unordered_set<SubsetMask> seen;
  for (const auto& s : proper_only ? proper_elements(n) : sigma_elements(n)) {
    if (seen.contains(s.mask())) continue;
    auto orbit = orbit_canonical(s);
    for (const auto& sigma : all_permutations(n)) seen.insert(act_mask(sigma, s.mask(), n));
    out.push_back(std::move(orbit));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.canonical < b.canonical; });
  return out;
}

int IntPartition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

bool IntPartition::is_strict() const {
  for (std::size_t k = 1; k < parts.size(); ++k)
    if (parts[k] >= parts[k - 1]) return false;
  return true;
}

namespace {

void partitions_rec(int remaining, int max_part, bool strict, std::vector<int>& cur, int min_parts, int max_parts,
                    std::vector<IntPartition>& out) {
  if (remaining == 0) {
    const int len = static_cast<int>(cur.size());
    if (len >= min_parts && len <= max_parts) out.push_back({cur});
    return;
  }
  if (static_cast<int>(cur.size()) >= max_parts) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, strict ? part - 1 : part, strict, cur, min_parts, max_parts, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<IntPartition> partitions(int n, int min_parts, int max_parts) {
  if (n < 1) throw DomainError("partitions requires n >= 1");
  std::vector<IntPartition> out;
  std::vector<int> cur;
  partitions_rec(n, n, false, cur, min_parts, max_parts, out);
  return out;
}

std::vector<IntPartition> strict_partitions(int n, int min_parts, int max_parts) {
  if (n < 1) throw DomainError("strict_partitions requires n >= 1");
  std::vector<IntPartition> out;
  std::vector<int> cur;
  partitions_rec(n, n, true, cur, min_parts, max_parts, out);
  return out;
}

}  // namespace fcone

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "fcone/error.hpp"
#include "fcone/strongf.hpp"

namespace fcone {

namespace {

std::uint32_t rank_of(const int* images, int n) {
  std::uint32_t rank = 0;
  unsigned used = 0;
  for (int i = 0; i < n; ++i) {
    const int v = images[i];
    const int smaller = std::popcount(used & ((1U << v) - 1U));
    rank = rank * static_cast<std::uint32_t>(n - i) + static_cast<std::uint32_t>(v - 1 - smaller);
    used |= 1U << v;
  }
  return rank;
}

int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

SupportCanonizer::SupportCanonizer(int n) : n_(n), index_(n) {
  if (n < 4 || n > kMaxSearchMarkings) throw DomainError("support canonization needs 4 <= n <= 8");
  rho_ = static_cast<int>(index_.size());
  const int count = factorial(n);
  table_.resize(static_cast<std::size_t>(count) * rho_);
  for (int r = 0; r < count; ++r) {
    auto sigma = Permutation::from_rank(n, static_cast<std::uint64_t>(r));
    if (rank_of(sigma.images().data(), n) != static_cast<std::uint32_t>(r))
      throw InternalError("permutation ranking is inconsistent");
    for (int k = 0; k < rho_; ++k)
      table_[static_cast<std::size_t>(r) * rho_ + k] =
          static_cast<std::uint8_t>(index_.coord(act_mask(sigma, index_.subset(k), n)));
  }
}

CoordMask SupportCanonizer::apply(std::uint32_t perm, CoordMask m) const {
  const std::uint8_t* row = &table_[static_cast<std::size_t>(perm) * rho_];
  CoordMask out = 0;
  while (m != 0) {
    const auto lo = static_cast<std::uint64_t>(m);
    const int k = lo != 0 ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(m >> 64));
    out |= CoordMask{1} << row[k];
    m &= m - 1;
  }
  return out;
}

// Points are colored by an S_n-equivariant refinement; only permutations that
// send the color classes, in color order, onto consecutive positions are tried.
SupportCanon SupportCanonizer::canonicalize(CoordMask j) const {
  const int n = n_;
  std::vector<SubsetMask> members;
  for (int k = 0; k < rho_; ++k)
    if ((j >> k) & 1U) members.push_back(index_.subset(k));

  // same[p][q]: members in which p and q lie in the same part.
  std::vector<std::vector<int>> same(n + 1, std::vector<int>(n + 1, 0));
  std::vector<std::vector<int>> by_size(n + 1, std::vector<int>(n + 1, 0));
  for (auto s : members) {
    const int size = popcount(s);
    for (int p = 1; p <= n; ++p) {
      const bool in_p = p < n && ((s >> p) & 1U);
      ++by_size[p][in_p ? size : n - size];
      for (int q = p + 1; q <= n; ++q) {
        const bool in_q = q < n && ((s >> q) & 1U);
        if (in_p == in_q) {
          ++same[p][q];
          ++same[q][p];
        }
      }
    }
  }
  auto rank_signatures = [&](const std::vector<std::vector<int>>& sig) {
    std::vector<std::vector<int>> sorted(sig.begin() + 1, sig.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> color(n + 1, 0);
    for (int p = 1; p <= n; ++p)
      color[p] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[p]) - sorted.begin());
    return std::make_pair(color, static_cast<int>(sorted.size()));
  };
  auto [color, classes] = rank_signatures(by_size);
  while (classes < n) {
    std::vector<std::vector<int>> sig(n + 1);
    for (int p = 1; p <= n; ++p) {
      std::vector<std::pair<int, int>> nbr;
      for (int q = 1; q <= n; ++q)
        if (q != p) nbr.emplace_back(color[q], same[p][q]);
      std::sort(nbr.begin(), nbr.end());
      sig[p].push_back(color[p]);
      for (auto [c, m] : nbr) {
        sig[p].push_back(c);
        sig[p].push_back(m);
      }
    }
    auto [next, next_classes] = rank_signatures(sig);
    color = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }

  std::vector<std::vector<int>> cells(classes);
  for (int p = 1; p <= n; ++p) cells[color[p]].push_back(p);
  std::vector<int> base(classes, 1);
  for (int c = 1; c < classes; ++c) base[c] = base[c - 1] + static_cast<int>(cells[c - 1].size());

  SupportCanon out{~CoordMask{0}, 0, {}};
  std::vector<std::uint32_t> best;
  std::vector<int> images(n);
  // Odometer over the permutations of every cell.
  for (;;) {
    for (int c = 0; c < classes; ++c)
      for (std::size_t t = 0; t < cells[c].size(); ++t) images[cells[c][t] - 1] = base[c] + static_cast<int>(t);
    const std::uint32_t r = rank_of(images.data(), n);
    const CoordMask img = apply(r, j);
    if (img < out.form) {
      out.form = img;
      best.clear();
    }
    if (img == out.form) best.push_back(r);
    int c = 0;
    while (c < classes && !std::next_permutation(cells[c].begin(), cells[c].end())) ++c;
    if (c == classes) break;
  }
  out.to_form = best.front();
  // Stabilizer of form: pi * pi0^{-1} for every minimizer pi.
  auto pi0 = Permutation::from_rank(n, best.front());
  auto inv0 = pi0.inverse();
  out.stabilizer.reserve(best.size());
  for (auto r : best) {
    auto g = Permutation::from_rank(n, r).compose(inv0);
    out.stabilizer.push_back(static_cast<std::uint32_t>(g.rank()));
  }
  return out;
}

namespace {

struct MaskHash {
  std::size_t operator()(CoordMask m) const {
    const auto lo = static_cast<std::uint64_t>(m);
    const auto hi = static_cast<std::uint64_t>(m >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

std::string checkpoint_header(int n, int rho) {
  return "# fcone-checkpoint v1 n=" + std::to_string(n) + " rho=" + std::to_string(rho);
}

std::unordered_map<CoordMask, char, MaskHash> read_checkpoint(const std::string& path, int n, int rho, bool& exists,
                                                              std::size_t& valid_bytes) {
  std::unordered_map<CoordMask, char, MaskHash> known;
  std::ifstream in(path, std::ios::binary);
  exists = false;
  valid_bytes = 0;
  if (!in) return known;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content.empty()) return known;
  exists = true;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    const std::size_t end = content.find('\n', pos);
    // A trailing line without a newline is an interrupted write.
    if (end == std::string::npos) break;
    std::string line = content.substr(pos, end - pos);
    pos = end + 1;
    valid_bytes = pos;
    ++line_no;
    if (line_no == 1) {
      if (line != checkpoint_header(n, rho))
        throw CheckpointError(path + ": header '" + line + "' does not match '" + checkpoint_header(n, rho) + "'");
      continue;
    }
    const auto space = line.find(' ');
    if (space == std::string::npos || space + 2 != line.size())
      throw CheckpointError(path + ":" + std::to_string(line_no) + ": malformed record");
    const char status = line[space + 1];
    if (status != 'P' && status != 'C' && status != 'F')
      throw CheckpointError(path + ":" + std::to_string(line_no) + ": unknown status");
    CoordMask mask;
    try {
      mask = parse_coord_hex(line.substr(0, space), rho);
    } catch (const DomainError& e) {
      throw CheckpointError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    auto [it, inserted] = known.emplace(mask, status);
    if (!inserted && it->second != status)
      throw CheckpointError(path + ":" + std::to_string(line_no) + ": conflicting status for a node");
  }
  if (line_no == 0) throw CheckpointError(path + ": missing header");
  return known;
}

class CheckpointWriter {
 public:
  CheckpointWriter(const std::string& path, bool exists, int n, int rho, std::uint64_t every)
      : every_(std::max<std::uint64_t>(1, every)) {
    if (path.empty()) return;
    file_ = std::fopen(path.c_str(), exists ? "ab" : "wb");
    if (!file_) throw CheckpointError(path + ": cannot open for writing");
    if (!exists) {
      std::fprintf(file_, "%s\n", checkpoint_header(n, rho).c_str());
      sync();
    }
  }
  ~CheckpointWriter() {
    if (file_) {
      sync();
      std::fclose(file_);
    }
  }
  CheckpointWriter(const CheckpointWriter&) = delete;
  CheckpointWriter& operator=(const CheckpointWriter&) = delete;

  void record(const std::string& hex, char status) {
    if (!file_) return;
    std::fprintf(file_, "%s %c\n", hex.c_str(), status);
    if (++pending_ >= every_) sync();
  }
  void sync() {
    if (!file_) return;
    std::fflush(file_);
    ::fsync(::fileno(file_));
    pending_ = 0;
  }

 private:
  std::FILE* file_ = nullptr;
  std::uint64_t every_;
  std::uint64_t pending_ = 0;
};

struct Node {
  CoordMask form;
  std::vector<std::uint32_t> stabilizer;
  std::optional<CoordMask> support_witness;
  std::optional<CoordMask> critical_witness;
};

bool subset_of(CoordMask a, CoordMask b) { return (a & ~b) == 0; }

}  // namespace

SearchReport verify_all_supports(int n, const SearchOptions& options) {
  if (n < 4 || n > kMaxSearchMarkings) throw DomainError("support search needs 4 <= n <= 8");
  BoundaryModel model(n);
  const auto degeneracy = check_nondegenerate(model);
  if (!degeneracy.ok()) throw PreconditionError("F-curve or PBD cone is degenerate for this n");
  const int rho = model.rho();
  SupportCanonizer canon(n);

  std::vector<CoordMask> positive;
  for (const auto& row : model.fcurve_vectors()) {
    CoordMask m = 0;
    for (const auto& [k, v] : row)
      if (v > 0) m |= CoordMask{1} << k;
    positive.push_back(m);
  }

  // Positive parts of criticality witnesses from earlier LPs.
  constexpr std::size_t kRecentWitnesses = 2048;
  std::vector<CoordMask> recent;
  std::vector<CoordMask> refutations;  // masks no support inside which is effective

  bool exists = false;
  std::unordered_map<CoordMask, char, MaskHash> known;
  if (!options.checkpoint.empty()) {
    std::size_t valid = 0;
    known = read_checkpoint(options.checkpoint, n, rho, exists, valid);
    if (exists && std::filesystem::file_size(options.checkpoint) > valid)
      std::filesystem::resize_file(options.checkpoint, valid);
  }
  CheckpointWriter writer(options.checkpoint, exists, n, rho, options.checkpoint_every);

  SearchReport report;
  report.n = n;
  std::unordered_set<CoordMask, MaskHash> visited;
  std::vector<Node> stack;
  {
    auto root = canon.canonicalize(model.full());
    visited.insert(root.form);
    stack.push_back({root.form, std::move(root.stabilizer), std::nullopt, std::nullopt});
  }

  auto record_failure = [&](CoordMask form) {
    SupportSet j(n, form);
    auto sup = supports_effective_pbd(model, j);
    auto crit = is_critical(model, j);
    if (!sup.supports() || crit.critical()) throw InternalError("failure record does not reproduce");
    report.failures.push_back({j, *sup.pbd, crit.certificate.values});
  };

  bool stopped = false;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    char status;
    CoordMask support_w = 0, critical_w = 0;
    bool have_witness = false;
    auto hit = known.find(node.form);
    if (hit != known.end()) {
      status = hit->second;
      ++report.resumed;
      if (status == 'F') record_failure(node.form);
    } else {
      if (options.max_nodes != 0 && report.evaluated >= options.max_nodes) {
        stopped = true;
        break;
      }
      ++report.evaluated;
      const SupportSet j(n, node.form);
      bool supports;
      if (node.support_witness && subset_of(*node.support_witness, node.form)) {
        supports = true;
        support_w = *node.support_witness;
        ++report.reused_witnesses;
      } else if (auto hit_r = std::find_if(refutations.begin(), refutations.end(),
                                           [&](CoordMask r) { return subset_of(node.form, r); });
                 hit_r != refutations.end()) {
        supports = false;
        ++report.reused_witnesses;
      } else {
        ++report.support_lps;
        auto sup = supports_effective_pbd(model, j);
        supports = sup.supports();
        if (supports) {
          for (const auto& [block, m] : sup.pbd->blocks()) support_w |= CoordMask{1} << model.index().coord(block);
        } else {
          if (refutations.size() == kRecentWitnesses) refutations.pop_back();
          refutations.insert(refutations.begin(), sup.refuted);
        }
      }
      if (!supports) {
        status = 'P';
      } else {
        status = 'C';
        if (node.critical_witness && subset_of(*node.critical_witness, node.form)) {
          critical_w = *node.critical_witness;
          ++report.reused_witnesses;
        } else {
          auto within = [&](CoordMask p) { return subset_of(p, node.form); };
          auto fast = std::find_if(positive.begin(), positive.end(), within);
          auto seen = std::find_if(recent.begin(), recent.end(), within);
          if (fast != positive.end()) {
            critical_w = *fast;
          } else if (seen != recent.end()) {
            critical_w = *seen;
            ++report.reused_witnesses;
          } else {
            ++report.critical_lps;
            auto crit = is_critical(model, j);
            if (crit.critical()) {
              for (int k = 0; k < rho; ++k)
                if (crit.combination[k] > 0) critical_w |= CoordMask{1} << k;
              if (recent.size() == kRecentWitnesses) recent.pop_back();
              recent.insert(recent.begin(), critical_w);
            } else {
              status = 'F';
            }
          }
        }
        have_witness = true;
      }
      writer.record(coord_hex(node.form, rho), status);
      if (status == 'F') record_failure(node.form);
    }
    ++report.nodes_visited;
    if (status == 'P') {
      ++report.pruned;
      continue;
    }
    if (status == 'F') continue;
    ++report.critical;

    // One child per stabilizer orbit of the members of J.
    std::vector<int> parent(rho);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<int> coords;
    for (int k = 0; k < rho; ++k)
      if ((node.form >> k) & 1U) coords.push_back(k);
    for (auto g : node.stabilizer)
      for (int k : coords) {
        int a = find(k), b = find(canon.image(g, k));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    for (auto it = coords.rbegin(); it != coords.rend(); ++it) {
      const int s = *it;
      if (find(s) != s) continue;
      const CoordMask bit = CoordMask{1} << s;
      auto c = canon.canonicalize(node.form & ~bit);
      if (!visited.insert(c.form).second) continue;
      Node child{c.form, std::move(c.stabilizer), std::nullopt, std::nullopt};
      if (have_witness) {
        if (!(support_w & bit)) child.support_witness = canon.apply(c.to_form, support_w);
        if (!(critical_w & bit)) child.critical_witness = canon.apply(c.to_form, critical_w);
      }
      stack.push_back(std::move(child));
    }
  }
  writer.sync();
  report.complete = !stopped;
  return report;
}

}  // namespace fcone

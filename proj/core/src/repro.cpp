#include "fcone/repro.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "fcone/boundarycert.hpp"
#include "fcone/curves.hpp"
#include "fcone/error.hpp"
#include "fcone/fnef.hpp"
#include "fcone/lift.hpp"
#include "fcone/picard.hpp"
#include "fcone/strongf.hpp"

namespace fcone {

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

Verdict closed_form_identity() {
  std::uint64_t triples = 0;
  for (int m = 2; m <= 50; ++m) {
    auto a = standard_A(m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        for (int z = 0; z < m; ++z) {
          ++triples;
          if (bracket(a, x, y, z) != bracket_closed_form_A(m, x, y, z))
            return {false, "mismatch at m=" + std::to_string(m) + " (" + std::to_string(x) + "," + std::to_string(y) +
                               "," + std::to_string(z) + ")"};
        }
  }
  return {true, std::to_string(triples) + " triples, 2 <= m <= 50"};
}

Verdict improve_once() {
  std::uint64_t triples = 0;
  for (int m = 2; m <= 30; ++m) {
    auto scan = improve_once_check(m);
    triples += scan.triples;
    if (!scan.ok) return {false, "T_" + std::to_string(m) + " bracket not positive somewhere"};
  }
  return {true, std::to_string(triples) + " nondegenerate triples, 2 <= m <= 30"};
}

Verdict supertotal() {
  std::string detail;
  for (const auto& primes : {std::vector<int>{2, 3, 5}, std::vector<int>{2, 3, 5, 7}}) {
    auto r = supertotal_equality_characterization(primes);
    std::int64_t order = 1;
    for (int p : primes) order *= p;
    const auto expected = static_cast<std::uint64_t>(order * order * order);
    if (!r.holds || r.triples != expected)
      return {false, "|G|=" + std::to_string(order) + ": holds=" + std::to_string(r.holds) + " triples=" + std::to_string(r.triples)};
    detail += (detail.empty() ? "" : "; ") + std::string("|G|=") + std::to_string(order) + ": " + std::to_string(r.triples) +
              " triples, " + std::to_string(r.equalities) + " equalities";
  }
  return {true, detail};
}

Verdict main_theorem(std::uint64_t seed) {
  std::string detail;
  for (int n : {4, 5}) {
    const auto primes = first_primes(n - 1);
    int exhaustive = 0;
    for (int i = 0; i < 100; ++i) {
      auto f = random_fnef_divisor(n, seed + 1000 * n + i);
      auto rep = verify_main_theorem(f, primes);
      if (!rep.verified()) return {false, "n=" + std::to_string(n) + " sample " + std::to_string(i) + " failed"};
      if (n == 4) {
        auto res = lift(f, primes);
        if (!res.verification.exhaustive || !*res.verification.exhaustive)
          return {false, "n=4 sample " + std::to_string(i) + ": lifted function not exhaustively F-nef on Z_30"};
        ++exhaustive;
      }
    }
    detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + ": 100 divisors";
    if (n == 4) detail += ", " + std::to_string(exhaustive) + " exhaustive scans of Z_30";
  }
  return {true, detail};
}

Verdict pbd_rays_six() {
  auto r = pbd_extremal_rays(6);
  const bool ok = r.orbits.size() == 22 && r.min_index == 1 && r.max_index == 8;
  return {ok, std::to_string(r.rays) + " rays in " + std::to_string(r.orbits.size()) + " orbits, index " +
                  std::to_string(r.min_index) + ".." + std::to_string(r.max_index)};
}

Verdict strong_f_small() {
  std::string detail;
  for (int n : {5, 6}) {
    BoundaryModel model(n);
    auto rays = pbd_extremal_rays(n);
    std::size_t members = 0;
    ProperIndex index(n);
    for (const auto& orbit : rays.orbits) {
      // Every ray, not only representatives.
      std::set<std::vector<Integer>> images;
      for (const auto& sigma : all_permutations(n)) {
        std::vector<Integer> v(index.size(), Integer(0));
        for (const auto& [block, m] : orbit.representative.blocks())
          v[index.coord(act_mask(sigma, block, n))] = static_cast<long>(m);
        images.insert(std::move(v));
      }
      for (const auto& v : images) {
        auto curve = pbd_to_curve(PBD::from_vector(index, v));
        if (!fcone_member(model, curve).member()) return {false, "n=" + std::to_string(n) + ": a ray is outside the F-curve cone"};
        ++members;
      }
    }
    if (members != rays.rays) return {false, "n=" + std::to_string(n) + ": orbit images do not cover the rays"};
    auto search = verify_all_supports(n);
    if (!search.success())
      return {false, "n=" + std::to_string(n) + ": search " + (search.complete ? "found " + std::to_string(search.failures.size()) + " FAIL nodes" : "incomplete")};
    detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + ": " + std::to_string(members) +
              " rays in the F-curve cone, search " + std::to_string(search.nodes_visited) + " nodes, 0 FAIL";
  }
  return {true, detail};
}

Verdict biplane() {
  auto r = biplane_certificate();
  bool degrees = std::all_of(r.degrees.begin(), r.degrees.end(), [](std::int64_t d) { return d == 5; });
  const bool ok = r.effective && r.index == 2 && degrees && !r.member && r.witness_ok;
  std::ostringstream out;
  out << "index " << r.index << ", degrees " << (degrees ? "all 5" : "not all 5") << ", "
      << (r.member ? "inside" : "outside") << " the F-curve cone; witness pair " << (r.witness_ok ? "verified" : "rejected")
      << " against " << r.fcurves << " F-curves; LP on "
      << (r.symmetrized ? "the subspace fixed by a group of order " + std::to_string(r.group_order) : std::string("full space"))
      << " (" << r.lp_rows << " rows, " << r.lp_columns << " columns)";
  return {ok, out.str()};
}

Verdict stratal_eight(std::uint64_t seed) {
  std::vector<CyclicFn> fns{standard_A(8)};
  for (int i = 0; i < 50; ++i) fns.push_back(random_symmetric_fnef_fn(8, seed + 500 + i));
  std::size_t ascended = 0, strata = 0;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    auto r = stratal_effectivity_symmetric(fns[i]);
    if (!r.success) return {false, "function " + std::to_string(i) + " failed"};
    for (const auto& s : r.strata) {
      ++strata;
      if (s.partition.is_strict() || s.partition.length() <= 3) continue;
      if (s.method != StratumReport::Method::Ascent || !s.verified)
        return {false, "function " + std::to_string(i) + ": a non-strict stratum was not reproduced by ascent"};
      ++ascended;
    }
  }
  return {true, std::to_string(fns.size()) + " functions, " + std::to_string(strata) + " strata, " + std::to_string(ascended) +
                    " ascended certificates re-verified"};
}

Verdict bound() {
  const int b = symmetric_bound(8);
  return {b == 44, "symmetric_bound(8) = " + std::to_string(b)};
}

std::uint64_t record_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::uint64_t count = 0;
  std::getline(in, line);
  while (std::getline(in, line)) ++count;
  return count;
}

Verdict smoke(const ReproOptions& options) {
  namespace fs = std::filesystem;
  const fs::path dir = options.work_dir.empty() ? fs::temp_directory_path() : fs::path(options.work_dir);
  fs::create_directories(dir);
  const fs::path ckpt = dir / ("fcone-smoke-" + std::to_string(options.seed) + ".ckpt");
  fs::remove(ckpt);
  SearchOptions so;
  so.checkpoint = ckpt.string();
  so.max_nodes = options.smoke_nodes / 2;
  auto first = verify_all_supports(8, so);
  const auto recorded = record_lines(ckpt);
  so.max_nodes = options.smoke_nodes - first.evaluated;
  auto second = verify_all_supports(8, so);
  const auto total = record_lines(ckpt);
  fs::remove(ckpt);
  std::ostringstream out;
  out << first.evaluated << " + " << second.evaluated << " nodes evaluated, " << second.resumed << " resumed, "
      << second.nodes_visited << " visited after restart, " << (first.failures.size() + second.failures.size()) << " FAIL";
  const bool ok = first.failures.empty() && second.failures.empty() && (first.complete || recorded == first.evaluated) &&
                  second.resumed == first.evaluated && total == first.evaluated + second.evaluated &&
                  (second.complete || second.nodes_visited >= options.smoke_nodes);
  return {ok, out.str()};
}

Verdict full_seven() {
  auto r = verify_all_supports(7);
  return {r.success(), std::to_string(r.nodes_visited) + " nodes, " + std::to_string(r.pruned) + " pruned, " +
                           std::to_string(r.critical) + " critical, " + std::to_string(r.failures.size()) + " FAIL"};
}

Verdict picard() {
  std::string detail;
  for (int n = 4; n <= 9; ++n) {
    const int expected = (1 << (n - 1)) - 1 - n * (n - 1) / 2;
    const int got = picard_rank(n);
    if (got != expected) return {false, "n=" + std::to_string(n) + ": " + std::to_string(got) + " != " + std::to_string(expected)};
    detail += (detail.empty() ? "" : " ") + std::to_string(got);
  }
  return {true, "ranks " + detail + " for n = 4..9"};
}

}  // namespace

std::vector<std::string> criterion_ids() { return {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10a", "10b", "11"}; }

CriterionResult run_criterion(const std::string& id, const ReproOptions& options) {
  static const std::map<std::string, std::string> titles = {
      {"1", "closed form of the standard-function bracket"},
      {"2", "improve-once positivity of T_m"},
      {"3", "supertotal equality characterization"},
      {"4", "main theorem pipeline, n = 4, 5"},
      {"5", "extremal PBD rays for n = 6"},
      {"6", "strong F for n = 5, 6 two ways"},
      {"7", "biplane outside the F-curve cone, n = 12"},
      {"8", "symmetric stratal effectivity, n = 8"},
      {"9", "genus bound arithmetic"},
      {"10a", "resumable n = 8 smoke search"},
      {"10b", "full n = 7 search"},
      {"11", "Picard rank by elimination"},
  };
  auto title = titles.find(id);
  if (title == titles.end()) throw DomainError("unknown criterion '" + id + "'");
  CriterionResult r;
  r.id = id;
  r.title = title->second;
  const auto start = std::chrono::steady_clock::now();
  if (id == "10b" && !options.extended) {
    r.outcome = CriterionResult::Outcome::Skip;
    r.detail = "extended target; enable with --extended";
    return r;
  }
  Verdict v{false, ""};
  try {
    if (id == "1") v = closed_form_identity();
    if (id == "2") v = improve_once();
    if (id == "3") v = supertotal();
    if (id == "4") v = main_theorem(options.seed);
    if (id == "5") v = pbd_rays_six();
    if (id == "6") v = strong_f_small();
    if (id == "7") v = biplane();
    if (id == "8") v = stratal_eight(options.seed);
    if (id == "9") v = bound();
    if (id == "10a") v = smoke(options);
    if (id == "10b") v = full_seven();
    if (id == "11") v = picard();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  r.outcome = v.pass ? CriterionResult::Outcome::Pass : CriterionResult::Outcome::Fail;
  r.detail = std::move(v.detail);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string format_result(const CriterionResult& r) {
  static const char* names[] = {"PASS", "FAIL", "SKIP"};
  std::ostringstream out;
  out << names[static_cast<int>(r.outcome)] << " [" << r.id << "] " << r.title << ": " << r.detail;
  if (r.outcome != CriterionResult::Outcome::Skip) out << " (" << std::fixed << std::setprecision(1) << r.seconds << " s)";
  return out.str();
}

nlohmann::json result_json(const CriterionResult& r) {
  static const char* names[] = {"pass", "fail", "skip"};
  return {{"id", r.id}, {"title", r.title}, {"outcome", names[static_cast<int>(r.outcome)]}, {"detail", r.detail}};
}

}  // namespace fcone

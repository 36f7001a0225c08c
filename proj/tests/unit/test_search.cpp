#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fcone/error.hpp"
#include "fcone/strongf.hpp"

using namespace fcone;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name) : path(fs::temp_directory_path() / ("fcone-test-" + name)) { fs::remove(path); }
  ~TempFile() { fs::remove(path); }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

SearchReport run(int n, const std::string& ckpt, std::uint64_t max_nodes = 0, std::uint64_t every = 10'000) {
  SearchOptions o;
  o.checkpoint = ckpt;
  o.max_nodes = max_nodes;
  o.checkpoint_every = every;
  return verify_all_supports(n, o);
}

}  // namespace

TEST_CASE("complete runs are deterministic and fully recorded") {
  TempFile a("det-a"), b("det-b");
  auto ra = run(5, a.str());
  auto rb = run(5, b.str(), 0, 3);
  CHECK(ra.success());
  CHECK(ra.nodes_visited == 23);
  CHECK(ra.evaluated == ra.nodes_visited);
  CHECK(ra.resumed == 0);
  CHECK(slurp(a.path) == slurp(b.path));
  auto lines = lines_of(slurp(a.path));
  CHECK(lines.front() == "# fcone-checkpoint v1 n=5 rho=10");
  CHECK(lines.size() == 1 + ra.evaluated);
  CHECK(ra.pruned + ra.critical == ra.nodes_visited);
}

TEST_CASE("interrupted runs resume to the same result") {
  TempFile whole("whole"), sliced("sliced");
  auto ref = run(5, whole.str());
  SearchReport last;
  std::uint64_t evaluated = 0;
  int runs = 0;
  do {
    last = run(5, sliced.str(), 4);
    CHECK(last.failures.empty());
    if (!last.complete) CHECK(last.evaluated == 4);
    CHECK(last.resumed == evaluated);
    evaluated += last.evaluated;
    ++runs;
  } while (!last.complete && runs < 50);
  CHECK(last.complete);
  CHECK(runs > 3);
  CHECK(evaluated == ref.evaluated);
  CHECK(last.nodes_visited == ref.nodes_visited);
  CHECK(last.pruned == ref.pruned);
  CHECK(last.critical == ref.critical);
  auto a = lines_of(slurp(whole.path)), b = lines_of(slurp(sliced.path));
  std::sort(a.begin() + 1, a.end());
  std::sort(b.begin() + 1, b.end());
  CHECK(a == b);
  // A finished checkpoint answers everything without solving.
  auto again = run(5, sliced.str());
  CHECK(again.complete);
  CHECK(again.evaluated == 0);
  CHECK(again.support_lps == 0);
  CHECK(again.resumed == ref.nodes_visited);
}

TEST_CASE("a partial trailing record is discarded") {
  TempFile f("partial");
  run(5, f.str(), 6);
  auto text = slurp(f.path);
  auto lines = lines_of(text);
  REQUIRE(lines.size() == 7);
  spit(f.path, text + lines.back().substr(0, 2));
  auto r = run(5, f.str());
  CHECK(r.success());
  CHECK(r.resumed == 6);
  auto after = lines_of(slurp(f.path));
  CHECK(after.size() == 1 + r.nodes_visited);
  for (std::size_t i = 1; i < after.size(); ++i) CHECK(after[i].size() == lines[1].size());
}

TEST_CASE("corrupt checkpoints are rejected") {
  TempFile f("corrupt");
  run(5, f.str(), 5);
  const auto text = slurp(f.path);
  auto lines = lines_of(text);

  SUBCASE("wrong header") {
    spit(f.path, "# fcone-checkpoint v1 n=6 rho=25\n");
    CHECK_THROWS_AS(run(5, f.str()), CheckpointError);
  }
  SUBCASE("missing header") {
    spit(f.path, lines[1] + "\n");
    CHECK_THROWS_AS(run(5, f.str()), CheckpointError);
  }
  SUBCASE("unknown status") {
    spit(f.path, text + lines[1].substr(0, lines[1].size() - 1) + "X\n");
    CHECK_THROWS_AS(run(5, f.str()), CheckpointError);
  }
  SUBCASE("bad mask") {
    spit(f.path, text + "zzz P\n");
    CHECK_THROWS_AS(run(5, f.str()), CheckpointError);
  }
  SUBCASE("conflicting statuses") {
    const char flipped = lines[1].back() == 'P' ? 'C' : 'P';
    spit(f.path, text + lines[1].substr(0, lines[1].size() - 1) + flipped + "\n");
    CHECK_THROWS_AS(run(5, f.str()), CheckpointError);
  }
  SUBCASE("duplicate agreeing records are harmless") {
    spit(f.path, text + lines[1] + "\n");
    CHECK(run(5, f.str()).success());
  }
}

TEST_CASE("budget stop without a checkpoint") {
  auto r = run(6, "", 100);
  CHECK_FALSE(r.complete);
  CHECK_FALSE(r.success());
  CHECK(r.evaluated == 100);
  CHECK(r.failures.empty());
}

TEST_CASE("search domain") {
  CHECK(verify_all_supports(4).success());
  CHECK_THROWS_AS(verify_all_supports(9), DomainError);
}

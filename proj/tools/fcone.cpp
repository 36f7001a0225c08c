#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "fcone/error.hpp"
#include "fcone/repro.hpp"
#include "fcone/serialize.hpp"

using namespace fcone;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kUsage = 2, kBudget = 3 };

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

class Artifact {
 public:
  explicit Artifact(std::string command) : doc_{{"command", std::move(command)}, {"config", Json::object()}, {"inputs", Json::array()}} {}

  Json& config() { return doc_["config"]; }

  Json read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    doc_["inputs"].push_back({{"path", path}, {"sha256", sha256_hex(bytes)}});
    try {
      return Json::parse(bytes);
    } catch (const Json::parse_error& e) {
      throw DomainError(path + ": " + e.what());
    }
  }

  void write(Json result, const std::string& output) {
    doc_["result"] = std::move(result);
    const std::string text = doc_.dump(2) + "\n";
    if (output.empty() || output == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw DomainError("cannot write " + output);
    out << text;
  }

 private:
  Json doc_;
};

int env_threads() {
  if (const char* v = std::getenv("FCONE_THREADS")) {
    const int t = std::atoi(v);
    if (t > 0) return t;
  }
  return 1;
}

std::vector<int> parse_primes(const std::string& text) {
  std::vector<int> primes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      primes.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw DomainError("bad prime list '" + text + "'");
    }
  }
  return primes;
}

Json fnef_violation_json(const DivisorClass& f) {
  auto check = is_fnef_divisor(f);
  Json j = {{"fnef", check.fnef}};
  if (check.violation) {
    const auto& c = *check.violation;
    Json parts = {subset_json(c.x), subset_json(c.y), subset_json(c.z), subset_json(c.w_lower() | (SubsetMask{1} << c.n))};
    j["violation"] = {{"fcurve", parts}, {"pairing", rational_json(check.violation_value)}};
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact F-nef, effectivity and strong F-conjecture computations on M_{0,n}"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Write the JSON artifact here instead of stdout");

  std::function<int()> action;

  // fnef check
  auto* fnef = app.add_subcommand("fnef", "F-nef functions on cyclic groups");
  fnef->require_subcommand(1);
  auto* fnef_check = fnef->add_subcommand("check", "Exhaustive bracket scan of a function on Z_m");
  int modulus = 0;
  std::string fn_spec;
  std::uint64_t budget = kDefaultTripleBudget;
  fnef_check->add_option("--modulus", modulus, "m")->check(CLI::PositiveNumber);
  fnef_check->add_option("--fn", fn_spec, "standard, total, or a JSON file")->required();
  fnef_check->add_option("--budget", budget, "Triple budget")->check(CLI::PositiveNumber);
  fnef_check->callback([&] {
    action = [&] {
      Artifact art("fnef check");
      art.config() = {{"modulus", modulus}, {"fn", fn_spec}, {"budget", budget}};
      std::optional<CyclicFn> f;
      if (fn_spec == "standard" || fn_spec == "total") {
        if (modulus < 2) throw DomainError("--modulus >= 2 is required for " + fn_spec);
        f = fn_spec == "standard" ? standard_A(modulus) : total_T(modulus);
      } else {
        const Json j = art.read_input(fn_spec);
        f = j.is_array() && modulus > 0 ? CyclicFn(modulus, rationals_from_json(j)) : cyclic_fn_from_json(j);
        if (modulus > 0 && f->modulus() != modulus) throw DomainError("function length does not match --modulus");
      }
      auto scan = is_fnef_fn(*f, budget);
      art.write({{"function", cyclic_fn_json(*f)}, {"scan", triple_scan_json(scan)}}, output);
      return scan.ok ? kOk : kRefuted;
    };
  });

  // lift
  auto* lift_cmd = app.add_subcommand("lift", "Lift an F-nef divisor to a symmetric one");
  int n = 0;
  std::string divisor_path, primes_text;
  bool minimal_c = false;
  std::uint64_t samples = 0, seed = 1;
  lift_cmd->add_option("--n", n, "Number of markings")->required();
  lift_cmd->add_option("--divisor", divisor_path, "Divisor JSON")->required();
  lift_cmd->add_option("--primes", primes_text, "Comma-separated distinct primes (default: the first n-1)");
  lift_cmd->add_flag("--minimal-c", minimal_c, "Search the smallest c (small groups only)");
  lift_cmd->add_option("--budget", budget, "Triple budget")->check(CLI::PositiveNumber);
  lift_cmd->add_option("--samples", samples, "Random bracket samples of the lift");
  lift_cmd->add_option("--seed", seed, "Sampling seed");
  lift_cmd->callback([&] {
    action = [&] {
      Artifact art("lift");
      const auto primes = primes_text.empty() ? first_primes(n - 1) : parse_primes(primes_text);
      art.config() = {{"n", n}, {"primes", primes}, {"minimal_c", minimal_c}, {"budget", budget}, {"samples", samples},
                      {"seed", seed}};
      const auto f = divisor_from_json(art.read_input(divisor_path));
      if (f.n() != n) throw DomainError("divisor has n=" + std::to_string(f.n()) + ", expected " + std::to_string(n));
      auto src = fnef_violation_json(f);
      if (!src["fnef"].get<bool>()) {
        art.write({{"source", src}, {"verified", false}}, output);
        return kRefuted;
      }
      LiftOptions lo{budget, samples, seed, minimal_c};
      auto res = fcone::lift(f, primes, lo);
      auto thm = verify_main_theorem(f, primes, lo);
      Json result = lift_json(res);
      result["main_theorem"] = main_theorem_json(thm);
      result["verified"] = res.verification.passed() && thm.verified();
      art.write(result, output);
      return result["verified"].get<bool>() ? kOk : kRefuted;
    };
  });

  // certify
  auto* certify = app.add_subcommand("certify", "Stratal effectivity certificates for a symmetric divisor");
  std::string sym_path;
  bool strict_only = false;
  certify->add_option("--n", n, "Number of markings")->required();
  certify->add_option("--symmetric-fn", sym_path, "Symmetric F-nef function on Z_n (JSON)")->required();
  certify->add_flag("--strict-only", strict_only, "Certify strict partitions only");
  certify->callback([&] {
    action = [&] {
      Artifact art("certify");
      art.config() = {{"n", n}, {"strict_only", strict_only}};
      const Json j = art.read_input(sym_path);
      const CyclicFn f = j.is_array() ? CyclicFn(n, rationals_from_json(j)) : cyclic_fn_from_json(j);
      if (f.modulus() != n) throw DomainError("function modulus does not match --n");
      StratalOptions so;
      so.strict_only = strict_only;
      auto r = stratal_effectivity_symmetric(f, so);
      art.write(stratal_json(r), output);
      return r.success ? kOk : kRefuted;
    };
  });

  // strongf verify
  auto* strongf = app.add_subcommand("strongf", "Strong F-conjecture verification over PBD supports");
  strongf->require_subcommand(1);
  auto* verify_cmd = strongf->add_subcommand("verify", "Depth-first search over support sets");
  SearchOptions search;
  int threads = 0;
  verify_cmd->add_option("--n", n, "Number of markings")->required();
  verify_cmd->add_option("--checkpoint", search.checkpoint, "Checkpoint file (created or resumed)");
  verify_cmd->add_option("--max-nodes", search.max_nodes, "Stop after this many evaluated nodes (0: no limit)");
  verify_cmd->add_option("--checkpoint-every", search.checkpoint_every, "Records per fsync")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--threads", threads, "Worker threads (default: FCONE_THREADS or 1)")->check(CLI::PositiveNumber);
  verify_cmd->callback([&] {
    action = [&] {
      Artifact art("strongf verify");
      search.threads = threads > 0 ? threads : env_threads();
      art.config() = {{"n", n}, {"checkpoint", search.checkpoint}, {"max_nodes", search.max_nodes},
                      {"checkpoint_every", search.checkpoint_every}, {"threads", search.threads}};
      auto r = verify_all_supports(n, search);
      art.write(search_json(r), output);
      if (!r.failures.empty()) return kRefuted;
      return r.complete ? kOk : kBudget;
    };
  });

  // pbd
  auto* pbd = app.add_subcommand("pbd", "Pairwise balanced designs");
  pbd->require_subcommand(1);
  auto* rays = pbd->add_subcommand("rays", "Extremal rays of the effective PBD cone");
  bool extended = false;
  rays->add_option("--n", n, "Number of markings")->required();
  rays->add_flag("--extended", extended, "Allow n = 7");
  rays->callback([&] {
    action = [&] {
      Artifact art("pbd rays");
      art.config() = {{"n", n}, {"extended", extended}};
      art.write(pbd_rays_json(pbd_extremal_rays(n, extended)), output);
      return kOk;
    };
  });
  auto* biplane = pbd->add_subcommand("biplane", "The (11,5,2) biplane against the F-curve cone of M_{0,12}");
  biplane->callback([&] {
    action = [&] {
      Artifact art("pbd biplane");
      auto r = biplane_certificate();
      art.write(biplane_json(r), output);
      return r.witness_ok && !r.member ? kOk : kRefuted;
    };
  });
  auto* info = pbd->add_subcommand("info", "Index, degrees and effectiveness of a PBD");
  std::string pbd_path;
  info->add_option("--pbd", pbd_path, "PBD JSON")->required();
  info->callback([&] {
    action = [&] {
      Artifact art("pbd info");
      auto p = pbd_from_json(art.read_input(pbd_path));
      art.write(pbd_summary_json(p), output);
      return kOk;
    };
  });

  // lp solve
  auto* lp = app.add_subcommand("lp", "Exact linear programs");
  lp->require_subcommand(1);
  auto* solve = lp->add_subcommand("solve", "Feasibility (or minimization) with a verified certificate");
  std::string sys_path;
  solve->add_option("system", sys_path, "System JSON")->required();
  solve->callback([&] {
    action = [&] {
      Artifact art("lp solve");
      const auto sys = system_from_json(art.read_input(sys_path));
      SimplexStats stats;
      Json result;
      bool refuted = false;
      if (!sys.objective()) {
        auto cert = feasible(sys, &stats);
        result = certificate_json(cert, &sys);
        refuted = cert.is_farkas();
      } else {
        auto opt = optimize(sys, &stats);
        static const char* status[] = {"optimal", "infeasible", "unbounded"};
        result = {{"status", status[static_cast<int>(opt.status)]}, {"certificate", certificate_json(opt.certificate, &sys)}};
        if (opt.status == OptimizeResult::Status::Optimal) result["value"] = rational_json(opt.value);
        refuted = opt.status != OptimizeResult::Status::Optimal;
      }
      result["pivots"] = stats.pivots;
      result["degenerate_pivots"] = stats.degenerate_pivots;
      art.write(result, output);
      return refuted ? kRefuted : kOk;
    };
  });

  // repro
  auto* repro = app.add_subcommand("repro", "Reproduce the headline computations");
  std::string suite = "desk";
  std::vector<std::string> only;
  ReproOptions ro;
  repro->add_option("--suite", suite, "Suite name")->check(CLI::IsMember({"desk"}));
  repro->add_option("--only", only, "Run only these criteria");
  repro->add_option("--seed", ro.seed, "Seed for randomized inputs");
  repro->add_option("--smoke-nodes", ro.smoke_nodes, "Nodes for the n = 8 smoke search")->check(CLI::PositiveNumber);
  repro->add_option("--work-dir", ro.work_dir, "Directory for checkpoints");
  repro->add_flag("--extended", ro.extended, "Include the full n = 7 search");
  repro->callback([&] {
    action = [&] {
      Artifact art("repro");
      art.config() = {{"suite", suite}, {"seed", ro.seed}, {"smoke_nodes", ro.smoke_nodes}, {"extended", ro.extended}};
      const auto ids = only.empty() ? criterion_ids() : only;
      Json results = Json::array();
      bool ok = true;
      for (const auto& id : ids) {
        auto r = run_criterion(id, ro);
        std::cerr << format_result(r) << std::endl;
        ok = ok && r.outcome != CriterionResult::Outcome::Fail;
        results.push_back(result_json(r));
      }
      art.write({{"criteria", results}, {"passed", ok}}, output);
      return ok ? kOk : kRefuted;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const BudgetExceeded& e) {
    std::cerr << "fcone: budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const NotFnef& e) {
    std::cerr << "fcone: " << e.what() << "\n";
    return kRefuted;
  } catch (const NotSymmetric& e) {
    std::cerr << "fcone: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalError& e) {
    std::cerr << "fcone: internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "fcone: " << e.what() << "\n";
    return kUsage;
  }
}

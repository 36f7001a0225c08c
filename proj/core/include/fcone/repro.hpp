#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fcone {

struct ReproOptions {
  std::uint64_t seed = 20240611;
  std::uint64_t smoke_nodes = 1'000'000;  // n = 8 smoke run, split over two resumed halves
  bool extended = false;                  // run the full n = 7 search
  std::string work_dir;                   // for checkpoints; empty: the system temp directory
};

struct CriterionResult {
  std::string id;
  std::string title;
  enum class Outcome { Pass, Fail, Skip } outcome = Outcome::Fail;
  std::string detail;
  double seconds = 0;
};

// "1" .. "9", "10a", "10b", "11".
std::vector<std::string> criterion_ids();
CriterionResult run_criterion(const std::string& id, const ReproOptions& options = {});
// "PASS [7] title: detail (3.2 s)"
std::string format_result(const CriterionResult& r);
nlohmann::json result_json(const CriterionResult& r);

}  // namespace fcone

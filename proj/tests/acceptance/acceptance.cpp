// One line per criterion. FCONE_EXTENDED=1 adds the full n = 7 search.
#include <cstdlib>
#include <iostream>
#include <string>

#include "fcone/repro.hpp"

int main(int argc, char** argv) {
  fcone::ReproOptions options;
  if (const char* e = std::getenv("FCONE_EXTENDED")) options.extended = std::string(e) == "1";
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--extended") options.extended = true;

  int failed = 0;
  for (const auto& id : fcone::criterion_ids()) {
    auto r = fcone::run_criterion(id, options);
    std::cout << fcone::format_result(r) << std::endl;
    if (r.outcome == fcone::CriterionResult::Outcome::Fail) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}

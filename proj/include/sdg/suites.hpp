#ifndef SDG_SUITES_HPP
#define SDG_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sdg/liegroup.hpp"
#include "sdg/report.hpp"

namespace sdg {

// Configuration of one verification run. Identical configurations produce
// byte-identical JSON reports: every check derives its own generator from
// (seed, check id), so ordering and parallelism cannot leak in.
struct SuiteConfig {
  std::uint64_t seed = 42;
  unsigned trials = 8;
  unsigned dim = 3;
  std::int64_t range = 1000000;
  std::vector<std::string> suites;  // empty selects all
  std::string group = "heisenberg";
  bool strict = true;
  bool negative_controls = false;
};

const std::vector<std::string>& all_suite_names();
MatrixGroup parse_group(const std::string& name);

Report run_suites(const SuiteConfig& cfg);

}  // namespace sdg

#endif

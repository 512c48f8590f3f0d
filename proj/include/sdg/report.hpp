#ifndef SDG_REPORT_HPP
#define SDG_REPORT_HPP

#include <string>
#include <vector>

namespace sdg {

// One verification record. `anchor` names the mathematical law being
// checked (or "plumbing" for infrastructure checks); `witness` carries the
// serialized inputs when a check fails. Expected-fail records are produced
// by negative controls whose deliberate corruption was caught.
struct CheckResult {
  enum class Status { Pass, Fail, ExpectedFail };

  std::string id;
  std::string anchor;
  Status status = Status::Pass;
  std::string witness;
  double elapsed_ms = 0;
};

struct Report {
  // Configuration echo, rendered into both formats so a report identifies
  // the run that produced it.
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CheckResult> checks;

  unsigned passed() const;
  unsigned failed() const;
  unsigned expected_failures() const;
  bool ok() const { return failed() == 0; }

  // Records sorted by check id. Text includes timing; JSON is stable
  // byte-for-byte across runs with the same configuration.
  std::string to_text() const;
  std::string to_json() const;
};

}  // namespace sdg

#endif

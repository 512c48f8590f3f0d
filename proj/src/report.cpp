#include "sdg/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace sdg {

namespace {

const char* status_str(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::Pass:
      return "pass";
    case CheckResult::Status::Fail:
      return "fail";
    case CheckResult::Status::ExpectedFail:
      return "xfail";
  }
  return "?";
}

std::vector<CheckResult> sorted(const std::vector<CheckResult>& checks) {
  std::vector<CheckResult> out = checks;
  std::sort(out.begin(), out.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return out;
}

}  // namespace

unsigned Report::passed() const {
  unsigned n = 0;
  for (const auto& c : checks)
    if (c.status == CheckResult::Status::Pass) ++n;
  return n;
}

unsigned Report::failed() const {
  unsigned n = 0;
  for (const auto& c : checks)
    if (c.status == CheckResult::Status::Fail) ++n;
  return n;
}

unsigned Report::expected_failures() const {
  unsigned n = 0;
  for (const auto& c : checks)
    if (c.status == CheckResult::Status::ExpectedFail) ++n;
  return n;
}

std::string Report::to_text() const {
  std::ostringstream os;
  if (!config.empty()) {
    os << "config:";
    for (const auto& [k, v] : config) os << " " << k << "=" << v;
    os << "\n";
  }
  for (const auto& c : sorted(checks)) {
    os << "[" << (c.status == CheckResult::Status::Fail ? "FAIL"
                  : c.status == CheckResult::Status::ExpectedFail ? "XFAIL"
                                                                  : "PASS")
       << "] " << c.id << " -- " << c.anchor << " (" << std::fixed
       << std::setprecision(1) << c.elapsed_ms << " ms)\n";
    if (c.status == CheckResult::Status::Fail && !c.witness.empty())
      os << "       witness: " << c.witness << "\n";
  }
  os << checks.size() << " checks: " << passed() << " passed, " << failed()
     << " failed, " << expected_failures() << " expected-fail\n";
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json doc;
  auto cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  doc["config"] = cfg;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : sorted(checks)) {
    nlohmann::ordered_json rec;
    rec["id"] = c.id;
    rec["anchor"] = c.anchor;
    rec["status"] = status_str(c.status);
    rec["witness"] = c.witness;
    arr.push_back(rec);
  }
  doc["checks"] = arr;
  doc["summary"] = {{"total", checks.size()},
                    {"passed", passed()},
                    {"failed", failed()},
                    {"expected_failures", expected_failures()}};
  return doc.dump(2) + "\n";
}

}  // namespace sdg

#include "k3orders/report.hpp"

#include <sstream>

namespace k3orders {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "?";
}

void Report::pass(std::string name, std::string detail) {
  checks.push_back({std::move(name), CheckStatus::Pass, std::move(detail)});
}

void Report::fail(std::string name, std::string detail) {
  checks.push_back({std::move(name), CheckStatus::Fail, std::move(detail)});
}

void Report::skip(std::string name, std::string because) {
  checks.push_back({std::move(name), CheckStatus::Skip, std::move(because)});
}

bool Report::passed() const {
  for (const Check& c : checks) {
    if (c.status != CheckStatus::Pass) return false;
  }
  return true;
}

std::size_t Report::fail_count() const {
  std::size_t n = 0;
  for (const Check& c : checks) {
    if (c.status == CheckStatus::Fail) ++n;
  }
  return n;
}

Json Report::to_json() const {
  Json j;
  j["scenario"] = scenario;
  Json lines = Json::array();
  for (const Check& c : checks) {
    Json line;
    line["name"] = c.name;
    line["status"] = to_string(c.status);
    line["detail"] = c.detail;
    lines.push_back(std::move(line));
  }
  j["checks"] = std::move(lines);
  j["data"] = data;
  j["result"] = passed() ? "pass" : "fail";
  return j;
}

std::string Report::to_text(bool quiet) const {
  std::ostringstream out;
  if (quiet) {
    out << scenario << ": " << (passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
  }
  out << "scenario: " << scenario << "\n";
  std::size_t width = 0;
  for (const Check& c : checks) width = std::max(width, c.name.size());
  for (const Check& c : checks) {
    out << "[" << to_string(c.status) << "] " << c.name;
    if (!c.detail.empty()) {
      out << std::string(width - c.name.size() + 2, ' ') << c.detail;
    }
    out << "\n";
  }
  out << "result: " << (passed() ? "PASS" : "FAIL") << " (" << checks.size()
      << " checks, " << fail_count() << " failed)\n";
  return out.str();
}

}  // namespace k3orders

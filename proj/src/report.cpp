#include "qbnf/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

namespace qbnf {

using ordered_json = nlohmann::ordered_json;

const char* status_str(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::resource: return "resource";
  }
  return "?";
}

bool EntryReport::all_pass() const {
  for (const CheckResult& c : checks)
    if (c.status != Status::pass) return false;
  return true;
}

const CheckResult* EntryReport::find(const std::string& law) const {
  for (const CheckResult& c : checks)
    if (c.law == law) return &c;
  return nullptr;
}

bool Report::all_pass() const {
  for (const EntryReport& e : entries)
    if (!e.all_pass()) return false;
  return true;
}

std::string report_json(const Report& r) {
  ordered_json j;
  j["version"] = r.version;
  ordered_json jc;
  jc["universe"] = r.config.universe;
  jc["set_respect_universe"] = r.config.set_respect_universe;
  jc["size"] = r.config.size;
  jc["class_depth"] = r.config.class_depth;
  jc["class_size_slack"] = r.config.class_size_slack;
  jc["join_depth"] = r.config.join_depth;
  jc["seed"] = r.config.seed;
  jc["state_limit"] = r.config.state_limit;
  jc["word_len"] = r.config.word_len;
  j["config"] = jc;
  ordered_json entries = ordered_json::array();
  for (const EntryReport& e : r.entries) {
    ordered_json je;
    je["name"] = e.name;
    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : e.checks) {
      ordered_json jk;
      jk["law"] = c.law;
      jk["status"] = status_str(c.status);
      if (c.counterexample) jk["counterexample"] = *c.counterexample;
      jk["cases"] = c.cases;
      if (c.substituted_axiom) jk["substituted_axiom"] = true;
      if (!c.note.empty()) jk["note"] = c.note;
      if (r.config.timings) jk["millis"] = c.millis;
      checks.push_back(std::move(jk));
    }
    je["checks"] = std::move(checks);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  for (const EntryReport& e : r.entries) {
    os << e.name << "\n";
    for (const CheckResult& c : e.checks) {
      os << "  " << c.law << ": " << status_str(c.status);
      os << "  (" << c.cases << " cases";
      if (r.config.timings) os << ", " << c.millis << " ms";
      os << ")";
      if (c.substituted_axiom) os << " [finiteness stands in for cardinality bounds]";
      if (!c.note.empty()) os << "  -- " << c.note;
      os << "\n";
      if (c.counterexample) os << "    counterexample: " << *c.counterexample << "\n";
    }
  }
  return os.str();
}

}  // namespace qbnf

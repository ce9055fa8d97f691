#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qbnf/config.hpp"

namespace qbnf {

// Outcome of one bounded check.  `resource` means the configured bounds were
// exhausted before a verdict; it is reported distinctly from pass/fail so a
// truncated search is never mistaken for evidence.
enum class Status { pass, fail, resource };

const char* status_str(Status s);

struct CheckResult {
  std::string law;
  Status status = Status::pass;
  std::optional<std::string> counterexample;
  long cases = 0;    // how many instances were examined
  long millis = 0;   // wall time; only serialized when timings are requested
  bool substituted_axiom = false;  // true when a finiteness check stands in for
                                   // the cardinality-bound axioms
  std::string note;  // free-form context (bounds hit, caveats)
};

struct EntryReport {
  std::string name;
  std::vector<CheckResult> checks;
  bool all_pass() const;
  const CheckResult* find(const std::string& law) const;
};

struct Report {
  std::string version = "1";
  CheckConfig config;
  std::vector<EntryReport> entries;
  bool all_pass() const;
};

// Deterministic JSON rendering: fixed key order, no floats, and timing fields
// included only when cfg.timings is set, so identical runs serialize to
// identical bytes.
std::string report_json(const Report& r);

// Human-oriented rendering, one line per check.
std::string report_text(const Report& r);

}  // namespace qbnf

#pragma once
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qbnf {

// Thrown when an operation is handed a value that does not belong to the
// functor/universe it was declared for (wrong sort, unknown atom, bad shape).
struct malformed_value_error : std::runtime_error {
  explicit malformed_value_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a bounded search would exceed its configured budget.  This is
// deliberately distinct from a negative answer: callers must never confuse
// "too big to decide" with "false".
struct resource_limit_error : std::runtime_error {
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// All bounded checks read their budgets from one config record so that runs
// are reproducible.  The defaults are exactly the bounds the acceptance suite
// runs at; the CLI can override any of them.
struct CheckConfig {
  int universe = 2;              // atoms per sort for law checks
  int set_respect_universe = 3;  // atoms per sort for setter-respect / wide-intersection sweeps
  int size = 3;                  // value size bound for enumeration
  int class_depth = 6;           // BFS depth for equivalence-class enumeration
  int class_size_slack = 3;      // class members may exceed the seed value's size by this much
  long class_member_cap = 20000; // hard cap on enumerated class members
  int join_depth = 4;            // multi-step side of joinability searches
  long reach_node_cap = 200000;  // cap on nodes visited per reachability search
  long fn_enum_limit = 1000000;  // cap on function-tuple enumeration (membership-by-mapping)
  int rel_exhaustive_max = 4;    // enumerate all relations when |src|*|dst| <= this
  int rel_samples = 40;          // sampled relations per sort otherwise
  std::uint64_t seed = 20260819; // seed for all sampling
  int state_limit = 64;          // derivative-automaton state cap
  int word_len = 7;              // word length for automaton / matcher sweeps
  int witness_slack = 2;         // extra size allowed for relator/factorisation witnesses
  bool timings = false;          // include wall-clock millis in reports
};

// One shared generator type so every sampled decision is replayable.
using Rng = std::mt19937_64;

}  // namespace qbnf

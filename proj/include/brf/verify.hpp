#pragma once

#include <string>
#include <vector>

#include "brf/types.hpp"

namespace brf::verify {

enum class Cmp {
  AbsDiff,     // pass when |measured - expected| <= tolerance
  UpperBound,  // pass when measured <= expected
  LowerBound,  // pass when measured >= expected
};

/// One measured quantity compared against its pinned bound.
struct Check {
  std::string name;
  Cmp cmp = Cmp::AbsDiff;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // used by AbsDiff only
  bool pass = false;
};

Check abs_check(std::string name, double measured, double expected,
                double tolerance);
Check upper_check(std::string name, double measured, double bound);
Check lower_check(std::string name, double measured, double bound);

/// One named family of checks; the groups map one-to-one onto the top-level
/// verification targets and run in a fixed order.
struct Group {
  std::string name;
  std::string title;
  std::vector<Check> checks;

  bool pass() const;
};

/// Names accepted by run_suite.
std::vector<std::string> suite_names();

/// Runs the selected groups ("all" runs everything). Throws
/// std::invalid_argument for an unknown suite name.
std::vector<Group> run_suite(const std::string& suite);

/// One line per check with measured value, expected value, tolerance and
/// PASS/FAIL, plus one summary line per group.
std::string format_report(const std::vector<Group>& groups);

bool all_pass(const std::vector<Group>& groups);

}  // namespace brf::verify

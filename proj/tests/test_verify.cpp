// Exercises the verification suites: verdicts, determinism, the check
// bookkeeping, and the unknown-suite error. The conservation suite integrates
// to t = 5 at n = 256 and is exercised by the acceptance battery instead.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <string>

#include "cmflow/verify.hpp"

using namespace cmflow;

TEST_CASE("suite catalog lists the eight property families") {
  const auto& names = suite_names();
  REQUIRE(names.size() == 8);
  CHECK(names.front() == "covariance");
  CHECK(names.back() == "decay");
  for (const auto& name : names) {
    if (name == "conservation") continue;
    SuiteResult r = run_suite(name, 20260817);
    CHECK(r.suite == name);
    CHECK(!r.checks.empty());
  }
}

TEST_CASE("every check of the fast suites passes") {
  for (const char* name : {"covariance", "monotonicity", "kazdan_warner",
                           "inequalities", "sl2", "area_ode", "decay"}) {
    SuiteResult r = run_suite(name, 20260817);
    for (const CheckResult& c : r.checks) {
      CAPTURE(r.suite);
      CAPTURE(c.name);
      CAPTURE(c.measured);
      CHECK(c.passed);
      CHECK(c.low <= c.high);
      CHECK((c.passed == (c.low <= c.measured && c.measured <= c.high)));
    }
    CHECK(r.all_passed());
  }
}

TEST_CASE("a fixed seed reproduces the measurements bitwise") {
  SuiteResult first = run_suite("covariance", 7);
  SuiteResult second = run_suite("covariance", 7);
  REQUIRE(first.checks.size() == second.checks.size());
  for (size_t i = 0; i < first.checks.size(); ++i)
    CHECK(first.checks[i].measured == second.checks[i].measured);

  SuiteResult other = run_suite("covariance", 8);
  CHECK(first.checks[0].measured != other.checks[0].measured);
}

TEST_CASE("unknown suite names are rejected") {
  CHECK_THROWS_AS(run_suite("bogus", 1), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("", 1), std::invalid_argument);
}

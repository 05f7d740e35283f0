#include "squeezelab/verify.hpp"

#include <set>

#include "test_support.hpp"

using namespace squeezelab;
using namespace squeezelab::verify;

TEST(Checks, Relations) {
  EXPECT_TRUE(Check::at_most("a", 1e-9, 1e-8).passed);
  EXPECT_FALSE(Check::at_most("a", 1e-7, 1e-8).passed);
  EXPECT_FALSE(Check::at_most("nan", std::nan(""), 1e-8).passed);
  EXPECT_TRUE(Check::greater_than("b", 2.0, 1.0).passed);
  EXPECT_FALSE(Check::greater_than("b", 1.0, 1.0).passed);
  EXPECT_TRUE(Check::flag("c", true).passed);
  EXPECT_EQ(Check::flag("c", false).measured, 1.0);
}

TEST(Criteria, WorstAndSummary) {
  Criterion c;
  c.id = "demo";
  c.add(Check::at_most("loose", 1e-12, 1e-6));
  c.add(Check::at_most("tight", 5e-7, 1e-6));
  EXPECT_TRUE(c.passed());
  EXPECT_EQ(c.worst()->name, "tight");
  EXPECT_EQ(summary_line(c).rfind("PASS demo", 0), 0u) << summary_line(c);
  c.add(Check::at_most("bad", 1.0, 1e-6));
  EXPECT_FALSE(c.passed());
  EXPECT_EQ(c.worst()->name, "bad");
  EXPECT_EQ(summary_line(c).rfind("FAIL demo", 0), 0u);
  Criterion empty;
  empty.id = "none";
  EXPECT_FALSE(empty.passed());
}

TEST(Criteria, ExceptionBecomesFailure) {
  const BatteryEntry e{"throws", [](const VerifyOptions&) -> Criterion { throw Error("boom"); }};
  const auto c = run_criterion(e, {});
  EXPECT_FALSE(c.passed());
  EXPECT_NE(c.error.find("boom"), std::string::npos);
}

TEST(Battery, IdsAreUnique) {
  std::set<std::string> ids;
  for (const auto& e : battery()) EXPECT_TRUE(ids.insert(e.id).second) << e.id;
  EXPECT_EQ(ids.size(), 10u);
}

// Mutation canary: a sign error in the deformed initial-condition recurrence
// must be caught by the recurrence-vs-ray comparison.
TEST(Canary, SignFlipIsDetected) {
  VerifyOptions ok;
  EXPECT_TRUE(deformed_recurrence_vs_ray(ok).passed);
  VerifyOptions bad;
  bad.fault_sign = -1.0;
  const auto c = deformed_recurrence_vs_ray(bad);
  EXPECT_FALSE(c.passed);
  EXPECT_GT(c.measured, 1e3 * c.bound);
  EXPECT_FALSE(deformed_g_n(bad).passed());
}

TEST(Battery, ReportIsDeterministic) {
  const std::vector<std::string> only{"mehler_identity"};
  const auto a = report_to_json(run_battery({}, only)).dump();
  const auto b = report_to_json(run_battery({}, only)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("seconds"), std::string::npos);
}

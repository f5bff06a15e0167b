#include "cyweyl/verify.hpp"

#include <gtest/gtest.h>

using namespace cyweyl;

TEST(Verify, EveryBuiltinPasses) {
  std::vector<std::string> names = builtin_names();
  for (const char* rank_one : {"S^5", "CP^3", "HP^2", "OP^2"}) names.emplace_back(rank_one);
  for (const auto& name : names) {
    const VerifyReport report = verify_space(builtin_descriptor(name));
    EXPECT_TRUE(report.all_pass()) << format_report(report);
    EXPECT_GE(report.checks.size(), 3u);
  }
}

TEST(Verify, DeterministicForFixedSeed) {
  const auto desc = builtin_descriptor("G2/SO(4)");
  EXPECT_EQ(format_report(verify_space(desc, 5)), format_report(verify_space(desc, 5)));
}

TEST(Verify, BrokenDescriptorFailsTheDimensionCheck) {
  auto desc = builtin_descriptor("SU(3)/SO(3)");
  desc.n += 1;
  const VerifyReport report = verify_space(desc);
  EXPECT_FALSE(report.all_pass());
  EXPECT_NE(format_report(report).find("FAIL"), std::string::npos);
}

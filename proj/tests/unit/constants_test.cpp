#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qhgeo/constants.hpp"
#include "qhgeo/error.hpp"

namespace qhgeo {
namespace {

// Reference values are the displayed formulas evaluated by hand.

TEST(Constants, SemisolidFromRelative) {
  const auto l = predicted_constants("semisolid_from_relative", {{"c", 1}, {"c1", 1}, {"t0", 1}});
  const double t1 = std::log(4.0 / 3.0);
  EXPECT_NEAR(l.at("t1"), t1, 1e-15);
  EXPECT_NEAR(l.at("t1"), 0.28768, 1e-5);
  EXPECT_NEAR(l.at("c2"), 24.0 / t1, 1e-12);
  EXPECT_NEAR(l.at("c2"), 83.43, 0.01);
}

TEST(Constants, LocalBiLipschitzFromRelative) {
  const auto l = predicted_constants("local_bilipschitz_from_relative", {{"c1", 1}, {"t0", 1}});
  EXPECT_DOUBLE_EQ(l.at("theta1"), 0.125);
  EXPECT_DOUBLE_EQ(l.at("L1"), 4.0);
}

TEST(Constants, PartialBiLipschitzFromLocalQs) {
  const auto l =
      predicted_constants("partial_bilipschitz_from_local_qs", {{"c", 1}, {"c2", 1}, {"q", 0.5}});
  EXPECT_DOUBLE_EQ(l.at("q1"), 0.25);
  EXPECT_DOUBLE_EQ(l.at("L"), 32.0);
  EXPECT_DOUBLE_EQ(l.at("lambda"), 0.125);
}

TEST(Constants, RemainingSteps) {
  const auto rel = predicted_constants("relative_from_partial_lipschitz", {{"L", 3}, {"lambda", 0.2}});
  EXPECT_EQ(rel.at("c1"), 3.0);
  EXPECT_EQ(rel.at("t0"), 0.2);
  const auto pl = predicted_constants("partial_lipschitz_from_semisolid", {{"c", 1}, {"c2", 2}});
  EXPECT_DOUBLE_EQ(pl.at("lambda"), 1.0 / 72.0);
  EXPECT_DOUBLE_EQ(pl.at("L"), 48.0);
  const auto qs = predicted_constants("local_qs_from_local_bilipschitz", {{"theta1", 0.1}, {"L1", 3}});
  EXPECT_EQ(qs.at("q"), 0.1);
  EXPECT_EQ(qs.at("eta_slope"), 9.0);
  const auto sb = predicted_constants("qh_step_bound", {{"A", 2}, {"q", 0.5}, {"eta_slope", 4}});
  EXPECT_DOUBLE_EQ(sb.at("q1"), 0.25);
  EXPECT_DOUBLE_EQ(sb.at("t1"), std::min(std::log(1.0 + 0.25 / 32.0), std::log(1.25)));
  EXPECT_DOUBLE_EQ(sb.at("step_bound"), 16.0 * std::log(2.0));
}

TEST(Constants, PureAndPositive) {
  for (const std::string& step : ledger_steps()) {
    std::map<std::string, double> in{{"c", 1.5}, {"c1", 2},     {"c2", 3},  {"t0", 0.5},
                                     {"L", 2},   {"lambda", 0.3}, {"theta1", 0.1}, {"L1", 2},
                                     {"q", 0.4}, {"A", 1.5},    {"eta_slope", 4}};
    const auto a = predicted_constants(step, in);
    const auto b = predicted_constants(step, in);
    ASSERT_EQ(a.derived.size(), b.derived.size());
    for (std::size_t i = 0; i < a.derived.size(); ++i) {
      EXPECT_EQ(a.derived[i], b.derived[i]);
      EXPECT_GT(a.derived[i].second, 0.0) << step << " " << a.derived[i].first;
    }
  }
}

TEST(Constants, InvalidInputsNamed) {
  EXPECT_THROW(predicted_constants("no_such_step", {}), ConfigError);
  try {
    predicted_constants("semisolid_from_relative", {{"c", 1}, {"c1", 1}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("t0"), std::string::npos);
  }
  try {
    predicted_constants("semisolid_from_relative", {{"c", 0.5}, {"c1", 1}, {"t0", 1}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("c"), std::string::npos);
  }
  const auto l = predicted_constants("local_bilipschitz_from_relative", {{"c1", 1}, {"t0", 1}});
  EXPECT_THROW(l.at("missing"), InternalError);
}

}  // namespace
}  // namespace qhgeo

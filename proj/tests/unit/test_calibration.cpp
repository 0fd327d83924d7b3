#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "kgqa/calibration.hpp"
#include "kgqa/errors.hpp"
#include "kgqa/metrics.hpp"

namespace kgqa {
namespace {

double fraction_at_or_above(const std::vector<double>& v, double k) {
  return static_cast<double>(std::count_if(v.begin(), v.end(), [&](double s) { return s >= k; })) /
         static_cast<double>(v.size());
}

TEST(CdfLabel, WorkedExample) {
  std::vector<double> v(10);
  std::iota(v.begin(), v.end(), 1.0);
  EXPECT_EQ(cdf_label_threshold(v, 0.2), 9.0);
  EXPECT_EQ(cdf_label_threshold(v, 0.05), INFINITY);
  EXPECT_EQ(cdf_label_threshold(v, 0.99), 2.0);
  EXPECT_THROW(cdf_label_threshold(v, 0.0), std::invalid_argument);
  EXPECT_THROW(cdf_label_threshold(v, 1.0), std::invalid_argument);
  EXPECT_THROW(cdf_label_threshold(std::vector<double>{}, 0.5), std::invalid_argument);
}

TEST(CdfLabel, PositiveRateTracksThePriorOnSyntheticDistributions) {
  std::mt19937_64 rng(20);
  for (int d = 0; d < 20; ++d) {
    const std::size_t n = 50 + rng() % 400;
    std::vector<double> v(n);
    // Alternate between a few shapes.
    std::normal_distribution<double> normal(d, 1.0 + d);
    std::exponential_distribution<double> expo(0.5);
    std::uniform_real_distribution<double> uni(-5, 5);
    for (auto& x : v) x = d % 3 == 0 ? normal(rng) : d % 3 == 1 ? -expo(rng) : uni(rng);
    const double prior = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
    const double k = cdf_label_threshold(v, prior);
    EXPECT_NEAR(fraction_at_or_above(v, k), prior, 1.0 / static_cast<double>(n)) << "distribution " << d;
    EXPECT_LE(fraction_at_or_above(v, k), prior);
  }
}

TEST(CdfLabel, TiesCountAsOneCut) {
  const std::vector<double> v{1, 2, 2, 2, 3};
  EXPECT_EQ(cdf_label_threshold(v, 0.2), 3.0);
  EXPECT_EQ(cdf_label_threshold(v, 0.7), 3.0);
  EXPECT_EQ(cdf_label_threshold(v, 0.8), 2.0);
}

TEST(Cdf50, LowerMedian) {
  std::vector<double> v(10);
  std::iota(v.begin(), v.end(), 1.0);
  std::shuffle(v.begin(), v.end(), std::mt19937_64(1));
  EXPECT_EQ(cdf50_threshold(v), 5.0);
  EXPECT_EQ(cdf50_threshold(std::vector<double>{3, 1, 2}), 2.0);
  EXPECT_THROW(cdf50_threshold(std::vector<double>{}), std::invalid_argument);
}

TEST(BestF1, PicksTheGapMidpoint) {
  const std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  const std::vector<bool> g{false, true, false, true};
  EXPECT_DOUBLE_EQ(best_f1_threshold(s, g), 0.375);
  // All positive: every example predicted positive is best.
  EXPECT_DOUBLE_EQ(best_f1_threshold(s, {true, true, true, true}), 0.1 - 1.0);
  EXPECT_THROW(best_f1_threshold(s, {true}), std::invalid_argument);
}

TEST(FewShot, SampleIsDeterministicAndClamped) {
  auto a = fewshot_sample(100, 10, 3);
  EXPECT_EQ(a, fewshot_sample(100, 10, 3));
  EXPECT_EQ(a.size(), 10u);
  EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), 10u);
  EXPECT_NE(a, fewshot_sample(100, 10, 4));
  EXPECT_EQ(fewshot_sample(5, 10, 1).size(), 5u);
}

TEST(FewShot, SeparableDataIsSeparatedOnEverySeed) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> neg(0, 1), pos(10, 11);
  std::vector<double> s;
  std::vector<bool> g;
  for (int i = 0; i < 200; ++i) {
    const bool p = i % 3 == 0;
    s.push_back(p ? pos(rng) : neg(rng));
    g.push_back(p);
  }
  for (std::size_t n : {4u, 10u, 20u, 40u}) {
    auto r = fewshot_threshold(s, g, n);
    ASSERT_EQ(r.per_draw.size(), kFewShotSeeds.size());
    for (std::size_t d = 0; d < r.per_draw.size(); ++d) {
      if (!r.per_draw[d]) continue;
      std::vector<bool> pred, gold;
      for (auto i : fewshot_sample(s.size(), n, kFewShotSeeds[d])) {
        pred.push_back(s[i] >= *r.per_draw[d]);
        gold.push_back(g[i]);
      }
      EXPECT_EQ(prf(count_binary(pred, gold)).f1, 1.0) << "n " << n << " seed " << kFewShotSeeds[d];
    }
    EXPECT_GT(r.kappa, 1.0);
    EXPECT_LT(r.kappa, 10.0);
  }
  // With 20 examples every draw holds both classes.
  for (const auto& k : fewshot_threshold(s, g, 20).per_draw) EXPECT_TRUE(k.has_value());
}

TEST(FewShot, UninformativeDrawsFallBackToMedian) {
  const std::vector<double> s{1, 2, 3, 4};
  auto r = fewshot_threshold(s, {false, false, false, false}, 2);
  for (const auto& k : r.per_draw) EXPECT_FALSE(k.has_value());
  EXPECT_EQ(r.kappa, 2.0);
  EXPECT_THROW(fewshot_threshold(s, {true}, 2), std::invalid_argument);
}

TEST(Strategy, ParseAndPrint) {
  EXPECT_EQ(parse_threshold_strategy("cdf-label").kind, ThresholdKind::CDFLabel);
  EXPECT_EQ(parse_threshold_strategy("cdf-50").kind, ThresholdKind::CDF50);
  auto f = parse_threshold_strategy("fewshot:10");
  EXPECT_EQ(f.fewshot_n, 10u);
  EXPECT_EQ(to_string(f), "fewshot:10");
  EXPECT_EQ(to_string(parse_threshold_strategy("fixed:k.json")), "fixed:k.json");
  for (const char* bad : {"", "cdf", "fewshot:", "fewshot:0", "fewshot:x", "fixed:"}) {
    EXPECT_THROW(parse_threshold_strategy(bad), std::invalid_argument) << bad;
  }
}

TEST(Calibrate, PerLabel) {
  std::map<std::string, std::vector<double>> scores{{"joy", {1, 2, 3, 4, 5}}, {"fear", {5, 4, 3, 2, 1}}};
  auto k = calibrate_thresholds(scores, parse_threshold_strategy("cdf-label"), {{"joy", 0.4}, {"fear", 0.2}});
  EXPECT_EQ(k["joy"], 4.0);
  EXPECT_EQ(k["fear"], 5.0);
  EXPECT_THROW(calibrate_thresholds(scores, parse_threshold_strategy("cdf-label"), {{"joy", 0.4}}),
               std::invalid_argument);
  auto m = calibrate_thresholds(scores, parse_threshold_strategy("cdf-50"));
  EXPECT_EQ(m["joy"], 3.0);
  EXPECT_THROW(calibrate_thresholds(scores, parse_threshold_strategy("fewshot:2")), std::invalid_argument);
}

TEST(Thresholds, SaveLoadRoundTrip) {
  auto p = std::filesystem::temp_directory_path() / "kgqa_kappas.json";
  const std::map<std::string, double> k{{"joy", 1.5}, {"fear", INFINITY}, {"anger", -2.25}};
  save_thresholds(p, k);
  EXPECT_EQ(load_thresholds(p), k);
  auto fixed = calibrate_thresholds({{"joy", {0.0}}}, parse_threshold_strategy("fixed:" + p.string()));
  EXPECT_EQ(fixed.at("joy"), 1.5);
  EXPECT_THROW(calibrate_thresholds({{"trust", {0.0}}}, parse_threshold_strategy("fixed:" + p.string())),
               DataError);
}

TEST(Thresholds, ShippedTablesMatchPublishedValues) {
  const std::string dir = std::string(KGQA_DATA_DIR) + "/thresholds";
  auto graph = load_thresholds(dir + "/kappa_graph_cdf_label.json");
  auto direct = load_thresholds(dir + "/kappa_direct_cdf_label.json");
  const std::map<std::string, std::pair<double, double>> published{
      {"disgust", {5.878, 6.272}}, {"surprise", {4.790, 5.452}},    {"fear", {6.504, 6.640}},
      {"anger", {3.773, 4.093}},   {"trust", {8.064, 8.126}},       {"anticipation", {3.765, 4.008}},
      {"sadness", {3.473, 3.548}}, {"joy", {1.907, 1.913}}};
  ASSERT_EQ(graph.size(), 8u);
  ASSERT_EQ(direct.size(), 8u);
  for (const auto& [label, kd] : published) {
    EXPECT_DOUBLE_EQ(direct.at(label), kd.first) << label;
    EXPECT_DOUBLE_EQ(graph.at(label), kd.second) << label;
  }
}

}  // namespace
}  // namespace kgqa

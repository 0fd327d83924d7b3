#include <gtest/gtest.h>

#include <random>

#include "kgqa/metrics.hpp"

namespace kgqa {
namespace {

TEST(Prf, WorkedExample) {
  // One true positive, one false positive, no misses.
  auto p = prf({1, 1, 0, 2});
  EXPECT_DOUBLE_EQ(p.precision, 0.5);
  EXPECT_DOUBLE_EQ(p.recall, 1.0);
  EXPECT_NEAR(p.f1, 2.0 / 3.0, 1e-15);
  auto zero = prf({0, 0, 0, 5});
  EXPECT_EQ(zero.precision, 0.0);
  EXPECT_EQ(zero.recall, 0.0);
  EXPECT_EQ(zero.f1, 0.0);
}

TEST(Accuracy, Examples) {
  const int pred[] = {0, 1, 2, 0};
  const int gold[] = {0, 2, 2, 1};
  EXPECT_DOUBLE_EQ(accuracy(pred, gold), 0.5);
  EXPECT_EQ(accuracy(std::span<const int>{}, std::span<const int>{}), 0.0);
  EXPECT_THROW(accuracy(std::span(pred, 3), gold), std::invalid_argument);
}

TEST(Accuracy, RandomPredictorNearOneThird) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<int> pred(10000), gold(10000);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    pred[i] = pick(rng);
    gold[i] = pick(rng);
  }
  EXPECT_NEAR(accuracy(pred, gold), 1.0 / 3.0, 0.02);
}

TEST(CountBinary, Confusion) {
  auto c = count_binary({true, true, false, false, true}, {true, false, true, false, true});
  EXPECT_EQ(c.tp, 2u);
  EXPECT_EQ(c.fp, 1u);
  EXPECT_EQ(c.fn, 1u);
  EXPECT_EQ(c.tn, 1u);
  EXPECT_THROW(count_binary({true}, {}), std::invalid_argument);
}

TEST(MultiLabel, MicroPoolsAndMacroAverages) {
  std::vector<std::vector<bool>> pred{{true, false}, {true, true}, {false, false}};
  std::vector<std::vector<bool>> gold{{true, true}, {false, true}, {false, true}};
  auto r = multilabel_metrics(pred, gold, {"a", "b"});
  // a: tp1 fp1 fn0; b: tp1 fp0 fn2
  EXPECT_DOUBLE_EQ(r.per_label[0].precision, 0.5);
  EXPECT_DOUBLE_EQ(r.per_label[1].recall, 1.0 / 3.0);
  EXPECT_EQ(r.micro.counts.tp, 2u);
  EXPECT_EQ(r.micro.counts.fp, 1u);
  EXPECT_EQ(r.micro.counts.fn, 2u);
  EXPECT_DOUBLE_EQ(r.micro.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.micro.recall, 0.5);
  EXPECT_NEAR(r.macro.f1, (r.per_label[0].f1 + r.per_label[1].f1) / 2, 1e-15);
  EXPECT_NEAR(r.macro.precision, 0.75, 1e-15);
  EXPECT_THROW(multilabel_metrics(pred, gold, {"a"}), std::invalid_argument);
}

TEST(MultiLabel, CountsRecomputeFromConfusion) {
  std::mt19937_64 rng(4);
  std::bernoulli_distribution coin(0.3);
  std::vector<std::vector<bool>> pred(200, std::vector<bool>(8)), gold = pred;
  for (auto* m : {&pred, &gold}) {
    for (auto& row : *m) {
      for (std::size_t j = 0; j < row.size(); ++j) row[j] = coin(rng);
    }
  }
  auto r = multilabel_metrics(pred, gold, {"1", "2", "3", "4", "5", "6", "7", "8"});
  std::size_t total = 0;
  for (std::size_t j = 0; j < 8; ++j) {
    const auto& c = r.per_label[j].counts;
    EXPECT_EQ(c.tp + c.fp + c.fn + c.tn, 200u);
    total += c.tp;
    const double f1 = 2.0 * c.tp / static_cast<double>(2 * c.tp + c.fp + c.fn);
    EXPECT_NEAR(r.per_label[j].f1, f1, 1e-15);
  }
  EXPECT_EQ(r.micro.counts.tp, total);
}

TEST(MultiLabel, JsonShape) {
  auto r = multilabel_metrics({{true}}, {{true}}, {"joy"});
  auto j = to_json(r);
  EXPECT_EQ(j["micro"]["f1"], 1.0);
  EXPECT_EQ(j["per_label"]["joy"]["precision"], 1.0);
  EXPECT_TRUE(j.contains("macro"));
}

}  // namespace
}  // namespace kgqa

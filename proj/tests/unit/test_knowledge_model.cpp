#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "kgqa/errors.hpp"
#include "kgqa/json_util.hpp"
#include "kgqa/knowledge_model.hpp"
#include "kgqa/table_model.hpp"
#include "oracle.hpp"

namespace kgqa {
namespace {

TableModelSpec single_rule_spec(double smoothing) {
  TableModelSpec s;
  s.vocabulary = {"<eos>", "a", "b", "x"};
  s.max_order = 2;
  s.smoothing_mass = smoothing;
  s.rules = {{"x", Relation::xWant, {}, {{"a", std::log(0.7)}, {"b", std::log(0.3)}}}};
  return s;
}

TEST(TableModel, DirectRuleLookupReturnsRuleExactly) {
  TableModel m(single_rule_spec(0.0));
  auto d = m.next_token_logprobs({{"x"}, Relation::xWant, {}});
  EXPECT_EQ(d.entries(), (std::map<Token, double>{{"a", std::log(0.7)}, {"b", std::log(0.3)}}));
  EXPECT_EQ(d.logprob("x"), -INFINITY);
}

TEST(TableModel, NoMatchingRuleIsUniform) {
  TableModel m(single_rule_spec(1.0));
  auto d = m.next_token_logprobs({{"x"}, Relation::oWant, {}});
  ASSERT_EQ(d.size(), 4u);
  for (const auto& [tok, lp] : d.entries()) EXPECT_DOUBLE_EQ(lp, std::log(0.25)) << tok;
}

TEST(TableModel, SmoothingMixesWithUniform) {
  TableModel m(single_rule_spec(0.2));
  auto d = m.next_token_logprobs({{"x"}, Relation::xWant, {}});
  EXPECT_NEAR(std::exp(d.logprob("a")), 0.8 * 0.7 + 0.05, 1e-12);
  EXPECT_NEAR(std::exp(d.logprob("x")), 0.05, 1e-12);
  EXPECT_NEAR(d.total_probability(), 1.0, 1e-12);
}

TEST(TableModel, LongestSuffixWins) {
  auto s = single_rule_spec(0.0);
  s.rules.push_back({"x", Relation::xWant, {"a"}, {{"b", 0.0}}});
  s.rules.push_back({"x", Relation::xWant, {"a", "a"}, {{"<eos>", 0.0}}});
  TableModel m(s);
  EXPECT_EQ(m.next_token_logprobs({{"x"}, Relation::xWant, {"b", "a"}}).logprob("b"), 0.0);
  EXPECT_EQ(m.next_token_logprobs({{"x"}, Relation::xWant, {"b", "a", "a"}}).logprob("<eos>"), 0.0);
  // Unmatched suffix backs off to the empty-prefix rule.
  EXPECT_EQ(m.next_token_logprobs({{"x"}, Relation::xWant, {"b"}}).logprob("a"), std::log(0.7));
}

TEST(TableModel, ContextMatchIgnoresWhitespaceLayout) {
  auto s = single_rule_spec(0.0);
  s.vocabulary.push_back(".");
  s.rules.push_back({"x  a .", Relation::xReact, {}, {{"b", 0.0}}});
  TableModel m(s);
  EXPECT_EQ(m.next_token_logprobs({{"x", "a", "."}, Relation::xReact, {}}).logprob("b"), 0.0);
}

TEST(TableModel, UnknownTokensAreRejected) {
  TableModel m(single_rule_spec(0.0));
  EXPECT_THROW(m.next_token_logprobs({{"zebra"}, Relation::xWant, {}}), UnknownTokenError);
  EXPECT_THROW(m.next_token_logprobs({{"x"}, Relation::xWant, {"zebra"}}), UnknownTokenError);
  EXPECT_THROW(sequence_logprob(m, TokenSeq{"x"}, Relation::xWant, TokenSeq{"zebra"}), UnknownTokenError);
}

TEST(TableModel, RejectsInvalidSpecs) {
  auto bad_norm = single_rule_spec(0.0);
  bad_norm.rules[0].logprobs["a"] = std::log(0.5);
  EXPECT_THROW(TableModel{bad_norm}, std::invalid_argument);
  auto bad_token = single_rule_spec(0.0);
  bad_token.rules[0].logprobs = {{"q", 0.0}};
  EXPECT_THROW(TableModel{bad_token}, std::invalid_argument);
  auto bad_mass = single_rule_spec(1.5);
  EXPECT_THROW(TableModel{bad_mass}, std::invalid_argument);
  auto no_end = single_rule_spec(0.0);
  no_end.end_token = "</s>";
  EXPECT_THROW(TableModel{no_end}, std::invalid_argument);
}

TEST(TableModel, ReferentiallyTransparent) {
  TableModel m(single_rule_spec(0.3));
  const ConditionalQuery q{{"x"}, Relation::xWant, {"a"}};
  const auto first = m.next_token_logprobs(q);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(m.next_token_logprobs(q), first);
}

TEST(SequenceLogprob, SingleAndTwoTokenExamples) {
  TableModelSpec s;
  s.vocabulary = {"<eos>", "c", "p", "q"};
  s.rules = {{"c", Relation::xWant, {}, {{"p", std::log(0.25)}, {"q", std::log(0.75)}}},
             {"c", Relation::xReact, {}, {{"p", std::log(0.5)}, {"q", std::log(0.5)}}},
             {"c", Relation::xReact, {"p"}, {{"q", std::log(0.5)}, {"<eos>", std::log(0.5)}}}};
  TableModel m(s);
  EXPECT_NEAR(sequence_logprob(m, TokenSeq{"c"}, Relation::xWant, TokenSeq{"p"}), -1.386294, 1e-6);
  EXPECT_NEAR(sequence_logprob(m, TokenSeq{"c"}, Relation::xReact, TokenSeq{"p", "q"}), std::log(0.25), 1e-15);
  EXPECT_THROW(sequence_logprob(m, TokenSeq{"c"}, Relation::xReact, TokenSeq{}), std::invalid_argument);
}

TEST(SequenceLogprob, MatchesRuleRewalkOnRandomModels) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto root = oracle::random_root(seed);
    auto spec = oracle::random_spec(seed, root, {});
    TableModel m(spec);
    oracle::Oracle o(spec);
    const auto target = tokenize(oracle::random_answers(seed, 1)[0] + " w1 PersonY");
    const auto ctx = tokenize(root);
    long double expect = 0;
    TokenSeq prefix;
    for (const auto& t : target) {
      expect += o.logprob(ctx, Relation::xWant, prefix, t);
      prefix.push_back(t);
    }
    const double got = sequence_logprob(m, ctx, Relation::xWant, target);
    if (std::isinf(static_cast<double>(expect))) {
      EXPECT_EQ(got, static_cast<double>(expect));
    } else {
      EXPECT_NEAR(got, static_cast<double>(expect), 1e-12) << "seed " << seed;
    }
    EXPECT_LE(got, 0.0);
  }
}

TEST(SequenceLogprob, AdditiveOverConcatenation) {
  auto spec = oracle::random_spec(5, oracle::random_root(5), {});
  TableModel m(spec);
  const auto ctx = tokenize(oracle::random_root(5));
  const TokenSeq all{"w1", "PersonX", "w2", "is"};
  const TokenSeq head(all.begin(), all.begin() + 2), tail(all.begin() + 2, all.end());
  auto per_token = m.token_logprobs(ctx, Relation::xWant, all);
  double tail_sum = per_token[2] + per_token[3];
  EXPECT_NEAR(sequence_logprob(m, ctx, Relation::xWant, all),
              sequence_logprob(m, ctx, Relation::xWant, head) + tail_sum, 1e-12);
}

TEST(RandomModels, EveryDistributionIsNormalized) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto spec = oracle::random_spec(seed, oracle::random_root(seed), {});
    TableModel m(spec);
    for (const auto& rule : spec.rules) {
      auto d = m.next_token_logprobs({tokenize(rule.context), rule.relation, rule.prefix});
      EXPECT_NO_THROW(d.validate(1e-9));
    }
  }
}

TEST(MarginalContext, DefaultsAndOverride) {
  EXPECT_EQ(marginal_context(), TokenSeq{"PersonX"});
  EXPECT_EQ(marginal_context("Person"), TokenSeq{"Person"});
  auto q = marginal_query(Relation::oReact);
  EXPECT_EQ(q.context_tokens, TokenSeq{"PersonX"});
  EXPECT_EQ(q.relation, Relation::oReact);
  EXPECT_TRUE(q.generated_prefix.empty());
}

TEST(TableSpecJson, RoundTripsIncludingInfinities) {
  auto s = single_rule_spec(0.1);
  s.rules.push_back({"x", std::nullopt, {"a"}, {{"a", 0.0}, {"b", -INFINITY}}});
  auto j = table_spec_to_json(s);
  EXPECT_TRUE(j["rules"][1]["relation"].is_null());
  EXPECT_TRUE(j["rules"][1]["logprobs"]["b"].is_null());
  auto back = table_spec_from_json(j);
  ASSERT_EQ(back.rules.size(), 2u);
  EXPECT_EQ(back.rules[1].logprobs.at("b"), -INFINITY);
  EXPECT_EQ(back.rules[0].logprobs, s.rules[0].logprobs);
  EXPECT_EQ(back.vocabulary, s.vocabulary);
  EXPECT_EQ(back.smoothing_mass, 0.1);
}

TEST(TableSpecJson, LoadErrorsAreDataErrors) {
  const auto path = std::filesystem::temp_directory_path() / "kgqa_bad_table.json";
  std::ofstream(path) << "{\"vocabulary\": [\"a\"], \"rules\": 3}";
  EXPECT_THROW(TableModel::load(path), DataError);
  EXPECT_THROW(TableModel::load("/nonexistent/table.json"), DataError);
}

TEST(TableModel, LoadsDemoFixture) {
  auto m = TableModel::load(std::string(KGQA_FIXTURE_DIR) + "/demo_model.json");
  EXPECT_EQ(m.end_token(), "<eos>");
  EXPECT_TRUE(m.in_vocabulary("PersonX"));
}

TEST(JsonReal, EncodesInfinities) {
  EXPECT_TRUE(encode_real(-INFINITY).is_null());
  EXPECT_EQ(encode_real(INFINITY), "inf");
  EXPECT_EQ(decode_real(encode_real(-0.125)), -0.125);
  EXPECT_EQ(decode_real(nullptr), -INFINITY);
  EXPECT_THROW(encode_real(NAN), std::invalid_argument);
}

}  // namespace
}  // namespace kgqa

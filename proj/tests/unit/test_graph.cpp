#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "kgqa/graph.hpp"
#include "kgqa/graph_json.hpp"
#include "kgqa/scoring.hpp"
#include "kgqa/table_model.hpp"
#include "oracle.hpp"

namespace kgqa {
namespace {

Generation gen(TokenSeq tokens, double avg, Relation r) {
  Generation g;
  g.avg_logprob = avg;
  g.sum_logprob = avg * static_cast<double>(tokens.size());
  g.tokens = std::move(tokens);
  g.relation = r;
  return g;
}

// Every context is uniform over {<eos>, a}, so greedy always yields "a".
TableModel flat_model() {
  TableModelSpec s;
  s.vocabulary = {"<eos>", "a", "PersonX", "is", "tired", ".", "ctx"};
  return TableModel(s);
}

TEST(Graph, PathScoresAccumulateAverages) {
  ReasoningGraph g("PersonX is tired.");
  g.add_level({Relation::xWant});
  auto n1 = g.add_node(1, kRootId, gen({"go", "home"}, -1.0, Relation::xWant));
  g.add_level({Relation::xWant});
  auto n2 = g.add_node(2, n1, gen({"sleep"}, -0.5, Relation::xWant));
  EXPECT_DOUBLE_EQ(g.node(n1).path_score, -1.0);
  EXPECT_DOUBLE_EQ(g.node(n2).path_score, -1.5);
  EXPECT_EQ(g.node(n2).parent, n1);
  EXPECT_EQ(g.node(n2).hop_score, -0.5);
  EXPECT_EQ(g.scoring_text(n1), "PersonX wants go home");
  EXPECT_EQ(g.scoring_text(kRootId), "PersonX is tired.");
  EXPECT_EQ(g.generation_context(n1), (TokenSeq{"go", "home"}));
  EXPECT_EQ(g.generation_context(kRootId), tokenize("PersonX is tired."));
}

TEST(Graph, AttachingAnswersCreatesOneSlotPerNodeAndAnswer) {
  ReasoningGraph g("ctx");
  g.add_level({Relation::xWant});
  for (int i = 0; i < 6; ++i) g.add_node(1, kRootId, gen({"w" + std::to_string(i)}, -0.1, Relation::xWant));
  attach_answers(g, {"a", "b", "c"});
  EXPECT_EQ(g.num_factor_slots(), 21u);
  EXPECT_FALSE(g.factors_complete());
  fill_factors(g, [](const std::string&, const AnswerLeaf& a) { return FactorValue{-1.0 * a.id, 0, 0}; });
  EXPECT_TRUE(g.factors_complete());
  EXPECT_EQ(g.factor(kRootId, 2)->value, -2.0);
}

TEST(Graph, EmptyGraphStillAttachesToRoot) {
  ReasoningGraph g("ctx");
  attach_answers(g, {"a", "b", "c"});
  EXPECT_EQ(g.num_factor_slots(), 3u);
  EXPECT_THROW(attach_answers(g, {}), std::invalid_argument);
  EXPECT_THROW(attach_answers(g, {"a", "  "}), std::invalid_argument);
}

TEST(Graph, NodesCannotBeAddedAfterAnswers) {
  ReasoningGraph g("ctx");
  g.add_level({Relation::xWant});
  attach_answers(g, {"a"});
  EXPECT_THROW(g.add_node(1, kRootId, gen({"x"}, -1, Relation::xWant)), std::logic_error);
}

TEST(Graph, ClosedFormNodeCountWithoutPruning) {
  auto m = flat_model();
  for (int levels = 0; levels <= 3; ++levels) {
    for (std::size_t r : {1u, 3u, 9u}) {
      if (levels == 3 && r == 9) continue;
      GraphOptions opt;
      opt.levels = levels;
      opt.relations.assign(kAllRelations.begin(), kAllRelations.begin() + r);
      opt.prune.enabled = false;
      auto g = build_graph(m, "PersonX is tired.", opt);
      attach_answers(g, {"a", "b", "c"});
      double expected = 1 + 3;
      double pow = 1;
      for (int l = 1; l <= levels; ++l) expected += (pow *= static_cast<double>(r));
      EXPECT_EQ(graph_stats(g).nodes, expected) << levels << " levels, " << r << " relations";
    }
  }
  GraphOptions opt;
  opt.prune.enabled = false;
  auto g = build_graph(m, "PersonX is tired.", opt);
  attach_answers(g, {"a", "b", "c"});
  EXPECT_EQ(graph_stats(g).nodes, 94.0);
  EXPECT_EQ(g.num_inferences(), 90u);
  EXPECT_EQ(g.level(1).size(), 9u);
  EXPECT_EQ(g.level(2).size(), 81u);
}

TEST(Graph, ReportingConventionMatchesDecodingTableRows) {
  // Published averages (nodes, edges) for five decoders with three answers.
  const std::vector<std::pair<double, double>> rows = {
      {10.6, 26.4}, {43.2, 156.8}, {83.0, 316.2}, {32.0, 111.9}, {59.9, 223.8}};
  for (auto [nodes, edges] : rows) {
    const double n = nodes - 1 - 3;
    auto s = graph_stats(n, 3);
    EXPECT_NEAR(s.nodes, nodes, 1e-9);
    EXPECT_NEAR(s.edges, edges, 0.3) << nodes;
  }
  EXPECT_NEAR(graph_stats(39.2, 3).edges, 156.8, 1e-9);
  EXPECT_NEAR(graph_stats(6.6, 3).nodes, 10.6, 1e-9);
}

TEST(Graph, ExpandLevelRejectsOutOfOrderLevels) {
  auto m = flat_model();
  ReasoningGraph g("ctx");
  const std::vector<Relation> rels{Relation::xWant};
  EXPECT_THROW(expand_level(m, g, 2, rels, DecodeStrategy::greedy()), std::invalid_argument);
  EXPECT_THROW(expand_level(m, g, 0, rels, DecodeStrategy::greedy()), std::invalid_argument);
}

TEST(Graph, StoryTaskDefaultsToFiveRelations) {
  auto m = flat_model();
  GraphOptions opt;
  opt.levels = 1;
  opt.task = Task::StoryCommonsense;
  opt.prune.enabled = false;
  auto g = build_graph(m, "ctx", opt);
  EXPECT_EQ(g.num_inferences(), 5u);
  opt.relations = {Relation::xWant};
  EXPECT_THROW(build_graph(m, "ctx", opt), std::invalid_argument);
}

// Structural invariants on random models: monotone path scores, forest shape,
// dense ids, JSON round trip.
TEST(Graph, RandomGraphInvariants) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto root = oracle::random_root(seed);
    oracle::RandomSpecOptions o;
    o.relations = {Relation::xWant, Relation::xReact, Relation::oEffect};
    TableModel m(oracle::random_spec(seed, root, o));
    GraphOptions opt;
    opt.relations = o.relations;
    opt.strategy = seed % 2 ? DecodeStrategy::beam(3, 6) : DecodeStrategy::top_k(3, seed, 6);
    auto g = build_graph(m, root, opt);
    for (const auto& n : g.nodes()) {
      const double parent_score = n.parent == kRootId ? 0.0 : g.node(n.parent).path_score;
      EXPECT_LE(n.path_score, parent_score);
      EXPECT_LE(n.hop_score, 0.0);
      EXPECT_LT(n.parent, n.id);
      if (n.level == 1) {
        EXPECT_EQ(n.parent, kRootId);
      } else {
        EXPECT_EQ(g.node(n.parent).level, n.level - 1);
      }
    }
    attach_answers(g, oracle::random_answers(seed, 3));
    Scorer scorer(m);
    fill_factors(g, [&](const std::string& text, const AnswerLeaf& a) {
      return scorer.answer_factor(text, Relation::xReact, a);
    });
    const auto doc = graph_to_json(g);
    EXPECT_EQ(graph_from_json(nlohmann::json::parse(doc.dump())), g) << "seed " << seed;
    EXPECT_EQ(dump_graph(graph_from_json(nlohmann::json::parse(dump_graph(g)))), dump_graph(g));
  }
}

TEST(GraphJson, FieldOrderIsStable) {
  ReasoningGraph g("ctx");
  g.add_level({Relation::xWant});
  g.add_node(1, kRootId, gen({"x"}, -1, Relation::xWant));
  attach_answers(g, {"a"});
  auto j = graph_to_json(g);
  std::vector<std::string> keys;
  for (auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"root", "levels", "nodes", "answers", "factors", "stats"}));
  EXPECT_TRUE(j["factors"].empty());
}

TEST(GraphJson, RejectsInconsistentDocuments) {
  ReasoningGraph g("ctx");
  g.add_level({Relation::xWant});
  g.add_node(1, kRootId, gen({"x"}, -1, Relation::xWant));
  auto j = nlohmann::json::parse(graph_to_json(g).dump());
  auto bad = j;
  bad["nodes"][0]["path_score"] = -2.0;
  EXPECT_THROW(graph_from_json(bad), std::invalid_argument);
  bad = j;
  bad["nodes"][0]["relation"] = "xHope";
  EXPECT_THROW(graph_from_json(bad), std::invalid_argument);
  bad = j;
  bad["nodes"][0]["parent"] = 5;
  EXPECT_THROW(graph_from_json(bad), std::invalid_argument);
  bad = j;
  bad.erase("levels");
  EXPECT_THROW(graph_from_json(bad), std::invalid_argument);
}

// The shipped golden graph is checked against the brute-force oracle: every
// node is the oracle's greedy inference for its (parent, relation), every
// missing (parent, relation) pair is one the pruning rules remove, and every
// factor equals the oracle's PMI value.
TEST(GoldenGraph, AgreesWithOracle) {
  const std::string fixtures = KGQA_FIXTURE_DIR;
  const std::string golden = KGQA_GOLDEN_DIR;
  const auto spec = load_table_spec(fixtures + "/demo_model.json");
  oracle::Oracle o(spec);
  std::ifstream in(golden + "/demo_graph.json");
  ASSERT_TRUE(in) << "missing golden graph";
  const auto g = graph_from_json(nlohmann::json::parse(in));
  ASSERT_EQ(g.num_levels(), 2);
  EXPECT_EQ(g.root_text(), "PersonX drove PersonY to the airport.");
  ASSERT_EQ(g.answers().size(), 3u);
  EXPECT_GT(g.num_inferences(), 0u);

  std::vector<NodeId> parents{kRootId};
  for (int level = 1; level <= 2; ++level) {
    for (NodeId parent : parents) {
      for (Relation r : kAllRelations) {
        const auto want = o.greedy(g.generation_context(parent), r, 16);
        const InferenceNode* got = nullptr;
        for (NodeId id : g.level(level)) {
          if (g.node(id).parent == parent && g.node(id).relation == r) got = &g.node(id);
        }
        if (got) {
          EXPECT_EQ(got->tokens, want.tokens) << to_string(r) << " under " << parent;
          EXPECT_NEAR(got->hop_score, want.avg(), 1e-9);
        } else {
          auto pruned = prune({gen(want.tokens, want.avg(), r)}, r, Task::SocialIQA);
          EXPECT_TRUE(pruned.empty()) << to_string(r) << " under " << parent << " lost "
                                      << detokenize(want.tokens);
        }
      }
    }
    parents = g.level(level);
  }
  for (NodeId id = kRootId; id <= static_cast<NodeId>(g.num_inferences()); ++id) {
    const TokenSeq ctx = id == kRootId
                             ? g.root_tokens()
                             : tokenize(oracle::scoring_prefix(g.node(id).relation) + " " + g.node(id).text);
    for (const auto& a : g.answers()) {
      ASSERT_TRUE(g.factor(id, a.id).has_value());
      EXPECT_NEAR(g.factor(id, a.id)->value,
                  static_cast<double>(o.factor(ctx, Relation::xReact, a.tokens, true)), 1e-9);
    }
  }
}

TEST(GoldenGraph, EngineRebuildIsByteIdentical) {
  const std::string fixtures = KGQA_FIXTURE_DIR;
  const std::string golden = KGQA_GOLDEN_DIR;
  auto m = TableModel::load(fixtures + "/demo_model.json");
  GraphOptions opt;
  auto g = build_graph(m, "PersonX drove PersonY to the airport.", opt);
  attach_answers(g, {"grateful", "tired", "sad"});
  Scorer scorer(m);
  fill_factors(g, [&](const std::string& text, const AnswerLeaf& a) {
    return scorer.answer_factor(text, Relation::xReact, a);
  });
  std::ifstream in(golden + "/demo_graph.json");
  std::string want((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(dump_graph(g), want);
}

}  // namespace
}  // namespace kgqa

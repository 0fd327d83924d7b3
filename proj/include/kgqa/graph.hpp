#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kgqa/decoding.hpp"
#include "kgqa/knowledge_model.hpp"
#include "kgqa/pruning.hpp"

namespace kgqa {

using NodeId = int;
inline constexpr NodeId kRootId = 0;

// A generated inference. path_score accumulates the average token
// log-probability of every hop from the root, so it never increases with depth.
struct InferenceNode {
  NodeId id = 0;
  std::string text;
  TokenSeq tokens;
  Relation relation = Relation::xWant;
  int level = 1;
  NodeId parent = kRootId;
  double hop_score = 0.0;
  double path_score = 0.0;

  bool operator==(const InferenceNode&) const = default;
};

struct AnswerLeaf {
  int id = 0;
  std::string text;
  TokenSeq tokens;

  bool operator==(const AnswerLeaf&) const = default;
};

// Score on the edge between a graph node and an answer. With PMI on,
// value = conditional_part - marginal_part; otherwise value = conditional_part.
struct FactorValue {
  double value = 0.0;
  double conditional_part = 0.0;
  double marginal_part = 0.0;

  bool operator==(const FactorValue&) const = default;
};

// Root context, L levels of inferences, answer leaves, and one factor slot per
// (graph node, answer) including the root. Node ids are dense: the root is 0
// and inference nodes are numbered 1..n in creation order.
class ReasoningGraph {
 public:
  explicit ReasoningGraph(std::string context = {});

  const std::string& root_text() const { return root_text_; }
  const TokenSeq& root_tokens() const { return root_tokens_; }

  int num_levels() const { return static_cast<int>(levels_.size()); }
  // Nodes of level 1..num_levels(); each level holds node ids.
  const std::vector<NodeId>& level(int level) const;
  const std::vector<Relation>& level_relations(int level) const;
  std::size_t num_inferences() const { return nodes_.size(); }
  const std::vector<InferenceNode>& nodes() const { return nodes_; }
  const InferenceNode& node(NodeId id) const;

  // Text a node contributes when scoring answers: the raw root context, or the
  // inference with its relation prefix.
  std::string scoring_text(NodeId id) const;
  // Tokens a node contributes as context when generating its children.
  const TokenSeq& generation_context(NodeId id) const;

  // Appends an empty level using the given relation set and returns its index.
  int add_level(std::vector<Relation> relations);
  NodeId add_node(int level, NodeId parent, const Generation& generation);

  const std::vector<AnswerLeaf>& answers() const { return answers_; }
  void set_answers(std::vector<AnswerLeaf> answers);

  std::size_t num_factor_slots() const;
  const std::optional<FactorValue>& factor(NodeId node, int answer) const;
  void set_factor(NodeId node, int answer, FactorValue value);
  bool factors_complete() const;

  bool operator==(const ReasoningGraph&) const = default;

 private:
  std::string root_text_;
  TokenSeq root_tokens_;
  std::vector<InferenceNode> nodes_;
  std::vector<std::vector<NodeId>> levels_;
  std::vector<std::vector<Relation>> relation_sets_;
  std::vector<AnswerLeaf> answers_;
  std::vector<std::vector<std::optional<FactorValue>>> factors_;  // [answer][node id]
};

struct GraphOptions {
  int levels = 2;
  DecodeStrategy strategy;
  // Relations expanded at every level; empty means the task default.
  std::vector<Relation> relations;
  PruneOptions prune;
  Task task = Task::SocialIQA;
};

// Expands every node of level-1 (the root for level 1) along each relation:
// decode, prune, and attach survivors with path_score = parent + avg_logprob.
// Appends the new level to `graph`. TopK seeds are derived per (parent,
// relation) from strategy.seed.
void expand_level(const KnowledgeModel& model, ReasoningGraph& graph, int level,
                  std::span<const Relation> relations, const DecodeStrategy& strategy,
                  Task task = Task::SocialIQA, const PruneOptions& prune_options = {});

ReasoningGraph build_graph(const KnowledgeModel& model, std::string context,
                           const GraphOptions& options);

// Adds one leaf per answer with an empty factor slot to the root and to every
// inference node. Throws std::invalid_argument for an empty answer set.
void attach_answers(ReasoningGraph& graph, const std::vector<std::string>& answers);

// Fills every factor slot from `factor(scoring_text, answer)`.
void fill_factors(ReasoningGraph& graph,
                  const std::function<FactorValue(const std::string&, const AnswerLeaf&)>& factor);

// Reporting convention: nodes = 1 + n + |A|; edges = n + |A| * n, where n is
// the number of inferences. Root-to-answer factor edges exist in the graph
// but are not counted.
struct GraphStats {
  double nodes = 0;
  double edges = 0;
};

GraphStats graph_stats(const ReasoningGraph& graph);
GraphStats graph_stats(double inferences, double answers);

}  // namespace kgqa

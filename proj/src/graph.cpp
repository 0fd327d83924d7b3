#include "kgqa/graph.hpp"

#include <stdexcept>

#include "kgqa/scoring.hpp"

namespace kgqa {

ReasoningGraph::ReasoningGraph(std::string context)
    : root_text_(std::move(context)), root_tokens_(tokenize(root_text_)) {}

const std::vector<NodeId>& ReasoningGraph::level(int level) const {
  if (level < 1 || level > num_levels()) throw std::out_of_range("no such level");
  return levels_[level - 1];
}

const std::vector<Relation>& ReasoningGraph::level_relations(int level) const {
  if (level < 1 || level > num_levels()) throw std::out_of_range("no such level");
  return relation_sets_[level - 1];
}

const InferenceNode& ReasoningGraph::node(NodeId id) const {
  if (id < 1 || id > static_cast<NodeId>(nodes_.size())) throw std::out_of_range("no such node");
  return nodes_[id - 1];
}

std::string ReasoningGraph::scoring_text(NodeId id) const {
  if (id == kRootId) return root_text_;
  const auto& n = node(id);
  return prefix_inference(n.text, n.relation);
}

const TokenSeq& ReasoningGraph::generation_context(NodeId id) const {
  return id == kRootId ? root_tokens_ : node(id).tokens;
}

int ReasoningGraph::add_level(std::vector<Relation> relations) {
  levels_.emplace_back();
  relation_sets_.push_back(std::move(relations));
  return num_levels();
}

NodeId ReasoningGraph::add_node(int level, NodeId parent, const Generation& generation) {
  if (level < 1 || level > num_levels()) throw std::out_of_range("no such level");
  if (!answers_.empty()) throw std::logic_error("graph already has answers attached");
  const double parent_score = parent == kRootId ? 0.0 : node(parent).path_score;
  InferenceNode n;
  n.id = static_cast<NodeId>(nodes_.size()) + 1;
  n.text = generation.text();
  n.tokens = generation.tokens;
  n.relation = generation.relation;
  n.level = level;
  n.parent = parent;
  n.hop_score = generation.avg_logprob;
  n.path_score = parent_score + generation.avg_logprob;
  nodes_.push_back(n);
  levels_[level - 1].push_back(n.id);
  return n.id;
}

void ReasoningGraph::set_answers(std::vector<AnswerLeaf> answers) {
  answers_ = std::move(answers);
  factors_.assign(answers_.size(), std::vector<std::optional<FactorValue>>(nodes_.size() + 1));
}

std::size_t ReasoningGraph::num_factor_slots() const {
  return answers_.size() * (nodes_.size() + 1);
}

const std::optional<FactorValue>& ReasoningGraph::factor(NodeId node, int answer) const {
  return factors_.at(answer).at(node);
}

void ReasoningGraph::set_factor(NodeId node, int answer, FactorValue value) {
  factors_.at(answer).at(node) = value;
}

bool ReasoningGraph::factors_complete() const {
  for (const auto& row : factors_) {
    for (const auto& f : row) {
      if (!f) return false;
    }
  }
  return !answers_.empty();
}

void expand_level(const KnowledgeModel& model, ReasoningGraph& graph, int level,
                  std::span<const Relation> relations, const DecodeStrategy& strategy,
                  Task task, const PruneOptions& prune_options) {
  if (level < 1) throw std::invalid_argument("levels are numbered from 1");
  if (level != graph.num_levels() + 1) {
    throw std::invalid_argument("level " + std::to_string(level) + " expanded out of order");
  }
  std::vector<NodeId> parents =
      level == 1 ? std::vector<NodeId>{kRootId} : graph.level(level - 1);
  graph.add_level({relations.begin(), relations.end()});
  for (NodeId parent : parents) {
    for (std::size_t r = 0; r < relations.size(); ++r) {
      DecodeStrategy s = strategy;
      if (s.kind == DecodeKind::TopK) {
        s.seed = mix64(strategy.seed ^ mix64((static_cast<std::uint64_t>(parent) << 4) |
                                             static_cast<std::uint64_t>(relations[r])));
      }
      auto candidates = decode(model, graph.generation_context(parent), relations[r], s);
      for (const auto& g : prune(candidates, relations[r], task, prune_options)) {
        graph.add_node(level, parent, g);
      }
    }
  }
}

ReasoningGraph build_graph(const KnowledgeModel& model, std::string context,
                           const GraphOptions& options) {
  if (options.levels < 0) throw std::invalid_argument("levels must be non-negative");
  ReasoningGraph graph(std::move(context));
  const auto relations = options.relations.empty() ? task_relations(options.task) : options.relations;
  for (int level = 1; level <= options.levels; ++level) {
    expand_level(model, graph, level, relations, options.strategy, options.task, options.prune);
  }
  return graph;
}

void attach_answers(ReasoningGraph& graph, const std::vector<std::string>& answers) {
  if (answers.empty()) throw std::invalid_argument("empty answer set");
  std::vector<AnswerLeaf> leaves;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    AnswerLeaf leaf{static_cast<int>(i), answers[i], tokenize(answers[i])};
    if (leaf.tokens.empty()) throw std::invalid_argument("empty answer text");
    leaves.push_back(std::move(leaf));
  }
  graph.set_answers(std::move(leaves));
}

void fill_factors(ReasoningGraph& graph,
                  const std::function<FactorValue(const std::string&, const AnswerLeaf&)>& factor) {
  const auto answers = graph.answers();
  for (NodeId id = kRootId; id <= static_cast<NodeId>(graph.num_inferences()); ++id) {
    const std::string text = graph.scoring_text(id);
    for (const auto& a : answers) graph.set_factor(id, a.id, factor(text, a));
  }
}

GraphStats graph_stats(double inferences, double answers) {
  return {1.0 + inferences + answers, inferences + answers * inferences};
}

GraphStats graph_stats(const ReasoningGraph& graph) {
  return graph_stats(static_cast<double>(graph.num_inferences()),
                     static_cast<double>(graph.answers().size()));
}

}  // namespace kgqa

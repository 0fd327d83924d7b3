#include "kgqa/graph_json.hpp"

#include <stdexcept>

#include "kgqa/json_util.hpp"

namespace kgqa {
namespace {

Relation relation_from(const nlohmann::json& j) {
  auto r = parse_relation(j.get<std::string>());
  if (!r) throw std::invalid_argument("unknown relation " + j.dump());
  return *r;
}

}  // namespace

nlohmann::ordered_json graph_to_json(const ReasoningGraph& graph) {
  using oj = nlohmann::ordered_json;
  oj j;
  oj root;
  root["id"] = kRootId;
  root["text"] = graph.root_text();
  root["path_score"] = 0.0;
  j["root"] = root;

  auto levels = oj::array();
  for (int l = 1; l <= graph.num_levels(); ++l) {
    oj level;
    level["level"] = l;
    auto rels = oj::array();
    for (Relation r : graph.level_relations(l)) rels.push_back(to_string(r));
    level["relations"] = rels;
    level["node_ids"] = graph.level(l);
    levels.push_back(level);
  }
  j["levels"] = levels;

  auto nodes = oj::array();
  for (const auto& n : graph.nodes()) {
    oj node;
    node["id"] = n.id;
    node["text"] = n.text;
    node["tokens"] = n.tokens;
    node["relation"] = to_string(n.relation);
    node["level"] = n.level;
    node["parent"] = n.parent;
    node["hop_score"] = encode_real(n.hop_score);
    node["path_score"] = encode_real(n.path_score);
    nodes.push_back(node);
  }
  j["nodes"] = nodes;

  auto answers = oj::array();
  for (const auto& a : graph.answers()) {
    oj answer;
    answer["id"] = a.id;
    answer["text"] = a.text;
    answers.push_back(answer);
  }
  j["answers"] = answers;

  auto factors = oj::array();
  for (NodeId id = kRootId; id <= static_cast<NodeId>(graph.num_inferences()); ++id) {
    for (const auto& a : graph.answers()) {
      const auto& f = graph.factor(id, a.id);
      if (!f) continue;
      oj factor;
      factor["node_id"] = id;
      factor["answer_id"] = a.id;
      factor["value"] = encode_real(f->value);
      factor["conditional"] = encode_real(f->conditional_part);
      factor["marginal"] = encode_real(f->marginal_part);
      factors.push_back(factor);
    }
  }
  j["factors"] = factors;

  const auto stats = graph_stats(graph);
  j["stats"] = oj{{"nodes", stats.nodes}, {"edges", stats.edges}};
  return j;
}

ReasoningGraph graph_from_json(const nlohmann::json& j) {
  try {
    ReasoningGraph graph(j.at("root").at("text").get<std::string>());
    const auto& levels = j.at("levels");
    const auto& nodes = j.at("nodes");
    std::size_t next = 0;
    for (const auto& level : levels) {
      std::vector<Relation> rels;
      for (const auto& r : level.at("relations")) rels.push_back(relation_from(r));
      const int l = graph.add_level(std::move(rels));
      if (level.at("level").get<int>() != l) throw std::invalid_argument("levels out of order");
      for (NodeId expected : level.at("node_ids").get<std::vector<NodeId>>()) {
        if (next >= nodes.size()) throw std::invalid_argument("missing node " + std::to_string(expected));
        const auto& n = nodes.at(next++);
        if (n.at("id").get<NodeId>() != expected || n.at("level").get<int>() != l) {
          throw std::invalid_argument("node order does not match level listing");
        }
        Generation g;
        g.tokens = n.at("tokens").get<TokenSeq>();
        g.avg_logprob = decode_real(n.at("hop_score"));
        g.relation = relation_from(n.at("relation"));
        const NodeId parent = n.at("parent").get<NodeId>();
        if (parent != kRootId && (parent >= expected || graph.node(parent).level != l - 1)) {
          throw std::invalid_argument("node " + std::to_string(expected) + " has a bad parent");
        }
        if (l > 1 && parent == kRootId) throw std::invalid_argument("deep node attached to root");
        const NodeId id = graph.add_node(l, parent, g);
        if (graph.node(id).path_score != decode_real(n.at("path_score"))) {
          throw std::invalid_argument("path score of node " + std::to_string(id) +
                                      " is not parent + hop");
        }
      }
    }
    if (next != nodes.size()) throw std::invalid_argument("nodes not listed in any level");
    std::vector<std::string> answers;
    for (const auto& a : j.at("answers")) {
      if (a.at("id").get<int>() != static_cast<int>(answers.size())) {
        throw std::invalid_argument("answer ids must be 0..n-1");
      }
      answers.push_back(a.at("text").get<std::string>());
    }
    if (!answers.empty()) attach_answers(graph, answers);
    for (const auto& f : j.at("factors")) {
      graph.set_factor(f.at("node_id").get<NodeId>(), f.at("answer_id").get<int>(),
                       {decode_real(f.at("value")), decode_real(f.at("conditional")),
                        decode_real(f.at("marginal"))});
    }
    return graph;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("graph document: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(std::string("graph document: ") + e.what());
  }
}

std::string dump_graph(const ReasoningGraph& graph) { return graph_to_json(graph).dump(2) + "\n"; }

}  // namespace kgqa

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "kgqa/graph.hpp"

namespace kgqa {

// Graph dump with a stable field order:
//   root, levels, nodes, answers, factors, stats
// Non-finite reals follow encode_real (-inf as null).
nlohmann::ordered_json graph_to_json(const ReasoningGraph& graph);

// Inverse of graph_to_json. Throws std::invalid_argument when the document is
// inconsistent (unknown relation, dangling parent, path scores that do not add
// up).
ReasoningGraph graph_from_json(const nlohmann::json& j);

// Two-space indented dump with a trailing newline.
std::string dump_graph(const ReasoningGraph& graph);

}  // namespace kgqa

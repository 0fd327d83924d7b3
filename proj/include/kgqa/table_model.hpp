#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgqa/knowledge_model.hpp"

namespace kgqa {

// One conditional distribution, keyed by context, relation and the trailing
// tokens of the generated prefix.
struct TableRule {
  std::string context;
  std::optional<Relation> relation;
  TokenSeq prefix;
  std::map<Token, double> logprobs;
};

// Plain description of a table model, mirroring the JSON file layout.
struct TableModelSpec {
  std::vector<Token> vocabulary;
  int max_order = 1;
  double smoothing_mass = 0.0;
  Token end_token = "<eos>";
  std::vector<TableRule> rules;
};

TableModelSpec table_spec_from_json(const nlohmann::json& j);
nlohmann::json table_spec_to_json(const TableModelSpec& spec);
TableModelSpec load_table_spec(const std::filesystem::path& path);

// Deterministic n-gram style knowledge model. Lookup finds the rule with the
// longest matching suffix of the generated prefix (up to max_order tokens) for
// the query's context and relation. A matched rule is mixed with the uniform
// distribution by smoothing_mass; with no matching rule the distribution is
// uniform over the vocabulary. Immutable after construction.
class TableModel final : public KnowledgeModel {
 public:
  // Throws std::invalid_argument on an inconsistent spec.
  explicit TableModel(TableModelSpec spec);

  static TableModel load(const std::filesystem::path& path);

  TokenDistribution next_token_logprobs(const ConditionalQuery& query) const override;
  std::vector<double> token_logprobs(std::span<const Token> context,
                                     std::optional<Relation> relation,
                                     std::span<const Token> target) const override;
  const Token& end_token() const override { return spec_.end_token; }

  const TableModelSpec& spec() const { return spec_; }
  bool in_vocabulary(const Token& t) const { return vocab_.contains(t); }

 private:
  void check_tokens(std::span<const Token> tokens, std::string_view what) const;
  TokenDistribution smoothed(const TokenDistribution& rule) const;

  TableModelSpec spec_;
  std::set<Token> vocab_;
  std::unordered_map<std::string, TokenDistribution> rules_;
  TokenDistribution uniform_;
};

}  // namespace kgqa

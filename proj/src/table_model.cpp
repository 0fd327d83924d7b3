#include "kgqa/table_model.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "kgqa/errors.hpp"
#include "kgqa/json_util.hpp"

namespace kgqa {
namespace {

constexpr double kRuleTolerance = 1e-9;

std::string canonical_context(std::string_view text) { return detokenize(tokenize(text)); }

std::string rule_key(std::string_view context, std::optional<Relation> relation,
                     std::span<const Token> prefix) {
  std::string key(context);
  key += '\x1f';
  key += relation ? to_string(*relation) : "-";
  for (const auto& t : prefix) {
    key += '\x1e';
    key += t;
  }
  return key;
}

}  // namespace

TableModelSpec table_spec_from_json(const nlohmann::json& j) {
  TableModelSpec spec;
  try {
    spec.vocabulary = j.at("vocabulary").get<std::vector<Token>>();
    spec.max_order = j.at("max_order").get<int>();
    spec.smoothing_mass = j.at("smoothing_mass").get<double>();
    spec.end_token = j.at("end_token").get<Token>();
    for (const auto& r : j.at("rules")) {
      TableRule rule;
      rule.context = r.at("context").get<std::string>();
      const auto& rel = r.at("relation");
      if (!rel.is_null()) {
        auto parsed = parse_relation(rel.get<std::string>());
        if (!parsed) throw std::invalid_argument("unknown relation " + rel.dump());
        rule.relation = *parsed;
      }
      rule.prefix = r.at("prefix").get<TokenSeq>();
      for (const auto& [tok, lp] : r.at("logprobs").items()) rule.logprobs[tok] = decode_real(lp);
      spec.rules.push_back(std::move(rule));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("table model: ") + e.what());
  }
  return spec;
}

nlohmann::json table_spec_to_json(const TableModelSpec& spec) {
  nlohmann::ordered_json j;
  j["vocabulary"] = spec.vocabulary;
  j["max_order"] = spec.max_order;
  j["smoothing_mass"] = spec.smoothing_mass;
  j["end_token"] = spec.end_token;
  auto rules = nlohmann::ordered_json::array();
  for (const auto& r : spec.rules) {
    nlohmann::ordered_json jr;
    jr["context"] = r.context;
    jr["relation"] = r.relation ? nlohmann::ordered_json(to_string(*r.relation)) : nlohmann::ordered_json(nullptr);
    jr["prefix"] = r.prefix;
    nlohmann::ordered_json lps = nlohmann::ordered_json::object();
    for (const auto& [tok, lp] : r.logprobs) lps[tok] = encode_real(lp);
    jr["logprobs"] = std::move(lps);
    rules.push_back(std::move(jr));
  }
  j["rules"] = std::move(rules);
  return nlohmann::json::parse(j.dump());
}

TableModelSpec load_table_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open table model " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("table model " + path.string() + ": " + e.what());
  }
  try {
    return table_spec_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

TableModel::TableModel(TableModelSpec spec) : spec_(std::move(spec)) {
  if (spec_.max_order < 0) throw std::invalid_argument("max_order must be non-negative");
  if (!(spec_.smoothing_mass >= 0.0 && spec_.smoothing_mass <= 1.0)) {
    throw std::invalid_argument("smoothing_mass must lie in [0, 1]");
  }
  for (const auto& t : spec_.vocabulary) {
    if (t.empty()) throw std::invalid_argument("empty vocabulary token");
    if (!vocab_.insert(t).second) throw std::invalid_argument("duplicate vocabulary token " + t);
  }
  if (!vocab_.empty() && !vocab_.contains(spec_.end_token)) {
    throw std::invalid_argument("end token not in vocabulary");
  }
  for (const auto& rule : spec_.rules) {
    if (static_cast<int>(rule.prefix.size()) > spec_.max_order) {
      throw std::invalid_argument("rule prefix longer than max_order");
    }
    for (const auto& t : rule.prefix) {
      if (!vocab_.contains(t)) throw std::invalid_argument("rule prefix token not in vocabulary: " + t);
    }
    for (const auto& [t, lp] : rule.logprobs) {
      if (!vocab_.contains(t)) throw std::invalid_argument("rule token not in vocabulary: " + t);
    }
    TokenDistribution dist(rule.logprobs);
    dist.validate(kRuleTolerance);
    auto key = rule_key(canonical_context(rule.context), rule.relation, rule.prefix);
    if (!rules_.emplace(std::move(key), std::move(dist)).second) {
      throw std::invalid_argument("duplicate rule for context '" + rule.context + "'");
    }
  }
  std::map<Token, double> uni;
  if (!vocab_.empty()) {
    const double lp = std::log(1.0 / static_cast<double>(vocab_.size()));
    for (const auto& t : vocab_) uni[t] = lp;
  }
  uniform_ = TokenDistribution(std::move(uni));
}

TableModel TableModel::load(const std::filesystem::path& path) {
  auto spec = load_table_spec(path);
  try {
    return TableModel(std::move(spec));
  } catch (const std::invalid_argument& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void TableModel::check_tokens(std::span<const Token> tokens, std::string_view what) const {
  for (const auto& t : tokens) {
    if (!vocab_.contains(t)) {
      throw UnknownTokenError("unknown " + std::string(what) + " token '" + t + "'");
    }
  }
}

TokenDistribution TableModel::smoothed(const TokenDistribution& rule) const {
  const double m = spec_.smoothing_mass;
  if (m == 0.0) return rule;
  const double floor = m / static_cast<double>(vocab_.size());
  std::map<Token, double> out;
  for (const auto& t : vocab_) out[t] = std::log((1.0 - m) * std::exp(rule.logprob(t)) + floor);
  return TokenDistribution(std::move(out));
}

TokenDistribution TableModel::next_token_logprobs(const ConditionalQuery& query) const {
  check_tokens(query.context_tokens, "context");
  check_tokens(query.generated_prefix, "prefix");
  const std::string context = detokenize(query.context_tokens);
  const auto& prefix = query.generated_prefix;
  const std::size_t longest =
      std::min(prefix.size(), static_cast<std::size_t>(spec_.max_order));
  for (std::size_t n = longest + 1; n-- > 0;) {
    std::span<const Token> suffix(prefix.data() + prefix.size() - n, n);
    auto it = rules_.find(rule_key(context, query.relation, suffix));
    if (it != rules_.end()) return smoothed(it->second);
  }
  return uniform_;
}

std::vector<double> TableModel::token_logprobs(std::span<const Token> context,
                                               std::optional<Relation> relation,
                                               std::span<const Token> target) const {
  check_tokens(target, "target");
  return KnowledgeModel::token_logprobs(context, relation, target);
}

}  // namespace kgqa

#include "kgqa/knowledge_model.hpp"

#include <cmath>
#include <stdexcept>

namespace kgqa {

double TokenDistribution::logprob(const Token& token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? -INFINITY : it->second;
}

double TokenDistribution::total_probability() const {
  double total = 0.0;
  for (const auto& [tok, lp] : entries_) total += std::exp(lp);
  return total;
}

void TokenDistribution::validate(double tolerance) const {
  for (const auto& [tok, lp] : entries_) {
    if (std::isnan(lp) || lp == INFINITY) {
      throw std::invalid_argument("log-probability of '" + tok + "' is not finite or -inf");
    }
  }
  double total = total_probability();
  if (!(std::abs(total - 1.0) <= tolerance)) {
    throw std::invalid_argument("distribution mass " + std::to_string(total) +
                                " differs from 1");
  }
}

TokenDistribution TokenDistribution::without(const Token& token) const {
  auto copy = entries_;
  copy.erase(token);
  return TokenDistribution(std::move(copy));
}

std::vector<double> KnowledgeModel::token_logprobs(std::span<const Token> context,
                                                   std::optional<Relation> relation,
                                                   std::span<const Token> target) const {
  ConditionalQuery query{TokenSeq(context.begin(), context.end()), relation, {}};
  std::vector<double> out;
  out.reserve(target.size());
  for (const auto& tok : target) {
    out.push_back(next_token_logprobs(query).logprob(tok));
    query.generated_prefix.push_back(tok);
  }
  return out;
}

double sequence_logprob(const KnowledgeModel& model, std::span<const Token> context,
                        std::optional<Relation> relation, std::span<const Token> target) {
  if (target.empty()) throw std::invalid_argument("sequence_logprob: empty target");
  double total = 0.0;
  for (double lp : model.token_logprobs(context, relation, target)) total += lp;
  return total;
}

TokenSeq marginal_context(std::string_view configured) { return tokenize(configured); }

ConditionalQuery marginal_query(Relation question_relation, TokenSeq generated_prefix,
                                std::string_view configured) {
  return {marginal_context(configured), question_relation, std::move(generated_prefix)};
}

}  // namespace kgqa

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgqa/relation.hpp"
#include "kgqa/token.hpp"

namespace kgqa {

// The conditioning tuple handed to a knowledge model: the context tokens and
// relation concatenated with the tokens generated so far.
struct ConditionalQuery {
  TokenSeq context_tokens;
  std::optional<Relation> relation;
  TokenSeq generated_prefix;
};

// Next-token log-probabilities. Tokens not present carry probability zero.
class TokenDistribution {
 public:
  TokenDistribution() = default;
  explicit TokenDistribution(std::map<Token, double> entries) : entries_(std::move(entries)) {}

  const std::map<Token, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // -inf for tokens outside the support.
  double logprob(const Token& token) const;

  // Sum of exp(entries), accumulated in sorted-key order.
  double total_probability() const;

  // Throws std::invalid_argument unless every entry is finite or -inf and the
  // mass sums to one within `tolerance`.
  void validate(double tolerance) const;

  // Copy without `token`.
  TokenDistribution without(const Token& token) const;

  bool operator==(const TokenDistribution&) const = default;

 private:
  std::map<Token, double> entries_;
};

// Interface to a generative commonsense knowledge model. Implementations must
// tolerate concurrent const calls from multiple threads.
class KnowledgeModel {
 public:
  virtual ~KnowledgeModel() = default;

  virtual TokenDistribution next_token_logprobs(const ConditionalQuery& query) const = 0;

  // Per-token log P(target_t | target_<t, context, relation). The default
  // walks next_token_logprobs; backends with a batched scoring call override.
  virtual std::vector<double> token_logprobs(std::span<const Token> context,
                                             std::optional<Relation> relation,
                                             std::span<const Token> target) const;

  virtual const Token& end_token() const = 0;
};

// Sum over target tokens of log P(x_t | x_<t, c, r). Throws
// std::invalid_argument for an empty target.
double sequence_logprob(const KnowledgeModel& model, std::span<const Token> context,
                        std::optional<Relation> relation, std::span<const Token> target);

inline constexpr std::string_view kDefaultMarginalContext = "PersonX";

// Context used to approximate the answer prior log P(y_s | y_<s, q).
TokenSeq marginal_context(std::string_view configured = kDefaultMarginalContext);

// Marginal query for the given question relation.
ConditionalQuery marginal_query(Relation question_relation, TokenSeq generated_prefix = {},
                                std::string_view configured = kDefaultMarginalContext);

}  // namespace kgqa

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kgqa/knowledge_model.hpp"
#include "kgqa/rng.hpp"

namespace kgqa {

enum class DecodeKind { Greedy, Beam, TopK };

struct DecodeStrategy {
  DecodeKind kind = DecodeKind::Greedy;
  int width_or_k = 1;
  int max_length = 16;
  std::uint64_t seed = 0;

  static DecodeStrategy greedy(int max_length = 16) { return {DecodeKind::Greedy, 1, max_length, 0}; }
  static DecodeStrategy beam(int width, int max_length = 16) {
    return {DecodeKind::Beam, width, max_length, 0};
  }
  static DecodeStrategy top_k(int k, std::uint64_t seed, int max_length = 16) {
    return {DecodeKind::TopK, k, max_length, seed};
  }

  // Throws std::invalid_argument when the fields are inconsistent.
  void validate() const;
};

// "greedy", "beam:B" or "topk:K". Throws std::invalid_argument.
DecodeStrategy parse_strategy(std::string_view text, std::uint64_t seed = 0);
std::string to_string(const DecodeStrategy& s);

// One decoded inference. Tokens exclude the end token.
struct Generation {
  TokenSeq tokens;
  double sum_logprob = 0.0;  // log-probabilities of `tokens` only
  double avg_logprob = 0.0;  // sum_logprob / tokens.size()
  Relation relation = Relation::xWant;

  std::string text() const { return detokenize(tokens); }
};

// Candidate inferences for (context, relation). Greedy yields one candidate,
// Beam up to width_or_k completed hypotheses ordered by total log-probability
// (end token included), TopK exactly width_or_k independent samples. The end
// token is never chosen as the first token. A hypothesis that reaches
// max_length without emitting the end token is complete.
std::vector<Generation> decode(const KnowledgeModel& model, std::span<const Token> context,
                               Relation relation, const DecodeStrategy& strategy);

// Draws from the k most likely entries (ties ordered by token), renormalized.
// k beyond the support uses the whole support. Throws DecodeError when no
// entry has finite log-probability.
std::pair<Token, RngState> sample_topk(const TokenDistribution& distribution, int k,
                                       RngState rng);

// Entries with finite log-probability, most likely first, ties by token.
std::vector<std::pair<Token, double>> ranked_entries(const TokenDistribution& distribution);

}  // namespace kgqa

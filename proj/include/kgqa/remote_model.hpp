#pragma once

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

#include "kgqa/knowledge_model.hpp"

namespace kgqa {

// Client for a knowledge model served over HTTP+JSON:
//
//   POST /v1/logprobs {context, relation, prefix} -> {logprobs: {token: lp}}
//   POST /v1/score    {context, relation, target} -> {token_logprobs: [lp]}
//
// The context goes over the wire as detokenized text; the server applies its
// own tokenization. Log-probabilities of -inf travel as null.
//
// Each request opens its own connection, so concurrent calls share no state
// and every request is answered independently of the others.
class RemoteModel final : public KnowledgeModel {
 public:
  // `base_url` like "http://127.0.0.1:8080". Throws ConfigError when the URL
  // cannot be parsed.
  explicit RemoteModel(std::string base_url, Token end_token = "<eos>",
                       std::chrono::milliseconds timeout = std::chrono::seconds(30));

  TokenDistribution next_token_logprobs(const ConditionalQuery& query) const override;
  std::vector<double> token_logprobs(std::span<const Token> context,
                                     std::optional<Relation> relation,
                                     std::span<const Token> target) const override;
  const Token& end_token() const override { return end_token_; }

  // Tolerance applied to the mass of every reported distribution.
  static constexpr double kNormalizationTolerance = 1e-6;

 private:
  nlohmann::json post(const std::string& path, const nlohmann::json& body) const;

  std::string scheme_host_port_;
  std::string base_path_;
  Token end_token_;
  std::chrono::milliseconds timeout_;
};

// Request bodies, shared with the fixture server.
nlohmann::json logprobs_request(const ConditionalQuery& query);
nlohmann::json score_request(std::span<const Token> context, std::optional<Relation> relation,
                             std::span<const Token> target);

}  // namespace kgqa

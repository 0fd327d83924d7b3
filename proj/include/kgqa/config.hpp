#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kgqa/calibration.hpp"
#include "kgqa/decoding.hpp"
#include "kgqa/inference.hpp"
#include "kgqa/knowledge_model.hpp"
#include "kgqa/relation.hpp"

namespace kgqa {

struct RunConfig {
  std::string backend;  // "table:PATH" or "remote:URL"
  Task task = Task::SocialIQA;
  int levels = 2;
  std::string decode = "greedy";
  int max_length = 16;
  std::uint64_t seed = 0;
  // Unset means the task default: 1 for SocialIQA, 0 for StoryCommonsense.
  std::optional<double> gamma_g;
  double gamma_ga = 1.0;
  std::vector<double> betas{1.0};
  Aggregator aggregator = Aggregator::VariableElimination;
  bool pmi = true;
  bool prune = true;
  bool anonymize = true;
  std::string marginal_context{kDefaultMarginalContext};
  std::string remote_end_token = "<eos>";
  ThresholdStrategy thresholds;
  unsigned jobs = 1;

  DecodeStrategy strategy() const;
  AggregationConfig aggregation() const;
  // Throws ConfigError describing the first invalid field.
  void validate() const;
};

// Builds the backend named by a "table:PATH" or "remote:URL" spec. Throws
// ConfigError for an unknown scheme.
std::unique_ptr<KnowledgeModel> make_model(const std::string& backend,
                                           const std::string& remote_end_token = "<eos>");

}  // namespace kgqa

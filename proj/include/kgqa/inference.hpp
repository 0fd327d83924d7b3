#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "kgqa/graph.hpp"

namespace kgqa {

enum class Aggregator { VariableElimination, Extremum };

struct AggregationConfig {
  double gamma_g = 1.0;   // weight of the path score
  double gamma_ga = 1.0;  // weight of the answer factor
  std::vector<double> betas;  // one weight per level 0..L; empty means all 1
  Aggregator aggregator = Aggregator::VariableElimination;

  // Betas expanded to `levels + 1` entries. A single value is broadcast.
  // Throws std::invalid_argument on any other length mismatch.
  std::vector<double> betas_for(int levels) const;
};

// log(sum(exp(x))) with the max-subtraction trick. -inf for an empty span or
// when every term is -inf.
double log_sum_exp(std::span<const double> terms);

// Path-to-answer terms gamma_g * phi_g + gamma_ga * phi_ga for every node of
// a level. Level 0 is the root alone with phi_g = 0.
std::vector<double> level_terms(const ReasoningGraph& graph, int answer, int level,
                                const AggregationConfig& config);

// Aggregates level_terms with LogSumExp or max. -inf for an empty level.
double level_score(const ReasoningGraph& graph, int answer, int level,
                   const AggregationConfig& config);

struct AnswerScoreBreakdown {
  std::vector<double> per_level;      // index 0..L; -inf marks an empty level
  std::vector<bool> level_present;    // false for levels without inferences
  double total = 0.0;
  bool chosen = false;
};

// Level-weighted totals. Levels without inferences are skipped in the sum, so
// a graph with every inference pruned scores answers by the root alone. The
// highest total is chosen, ties going to the lowest answer index.
std::vector<AnswerScoreBreakdown> answer_scores(const ReasoningGraph& graph,
                                                const AggregationConfig& config);

// Index of the highest score, ties to the lowest index.
int argmax(std::span<const double> scores);

// Label j is positive iff score_j >= kappa_j. Throws std::invalid_argument if
// the two label sets differ.
std::map<std::string, bool> threshold_decide(const std::map<std::string, double>& scores,
                                             const std::map<std::string, double>& kappas);

}  // namespace kgqa

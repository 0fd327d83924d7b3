#include "kgqa/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kgqa {
namespace {

// 0 * -inf would be NaN; a zero weight removes the term instead.
double weighted(double gamma, double x) { return gamma == 0.0 ? 0.0 : gamma * x; }

}  // namespace

std::vector<double> AggregationConfig::betas_for(int levels) const {
  const auto n = static_cast<std::size_t>(levels + 1);
  if (betas.empty()) return std::vector<double>(n, 1.0);
  if (betas.size() == 1) return std::vector<double>(n, betas.front());
  if (betas.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " level weights, got " +
                                std::to_string(betas.size()));
  }
  return betas;
}

double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) return -INFINITY;
  const double m = *std::max_element(terms.begin(), terms.end());
  if (m == -INFINITY || m == INFINITY) return m;
  if (terms.size() == 1) return m;
  double sum = 0.0;
  for (double x : terms) sum += std::exp(x - m);
  return m + std::log(sum);
}

std::vector<double> level_terms(const ReasoningGraph& graph, int answer, int level,
                                const AggregationConfig& config) {
  auto factor_of = [&](NodeId id) {
    const auto& f = graph.factor(id, answer);
    if (!f) throw std::logic_error("factor slot not filled");
    return f->value;
  };
  if (level == 0) return {weighted(config.gamma_ga, factor_of(kRootId))};
  std::vector<double> terms;
  for (NodeId id : graph.level(level)) {
    terms.push_back(weighted(config.gamma_g, graph.node(id).path_score) +
                    weighted(config.gamma_ga, factor_of(id)));
  }
  return terms;
}

double level_score(const ReasoningGraph& graph, int answer, int level,
                   const AggregationConfig& config) {
  if (level < 0 || level > graph.num_levels()) throw std::out_of_range("no such level");
  const auto terms = level_terms(graph, answer, level, config);
  if (terms.empty()) return -INFINITY;
  if (config.aggregator == Aggregator::Extremum) {
    return *std::max_element(terms.begin(), terms.end());
  }
  return log_sum_exp(terms);
}

int argmax(std::span<const double> scores) {
  int best = -1;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (best < 0 || scores[i] > scores[best]) best = static_cast<int>(i);
  }
  return best;
}

std::vector<AnswerScoreBreakdown> answer_scores(const ReasoningGraph& graph,
                                                const AggregationConfig& config) {
  const int levels = graph.num_levels();
  const auto betas = config.betas_for(levels);
  std::vector<AnswerScoreBreakdown> out;
  std::vector<double> totals;
  for (const auto& a : graph.answers()) {
    AnswerScoreBreakdown b;
    for (int l = 0; l <= levels; ++l) {
      const bool present = l == 0 || !graph.level(l).empty();
      b.level_present.push_back(present);
      b.per_level.push_back(present ? level_score(graph, a.id, l, config) : -INFINITY);
      if (present) b.total += weighted(betas[l], b.per_level.back());
    }
    if (std::isnan(b.total)) b.total = -INFINITY;
    totals.push_back(b.total);
    out.push_back(std::move(b));
  }
  if (!out.empty()) out[argmax(totals)].chosen = true;
  return out;
}

std::map<std::string, bool> threshold_decide(const std::map<std::string, double>& scores,
                                             const std::map<std::string, double>& kappas) {
  std::map<std::string, bool> out;
  if (scores.size() != kappas.size()) throw std::invalid_argument("label sets differ");
  for (const auto& [label, score] : scores) {
    auto it = kappas.find(label);
    if (it == kappas.end()) throw std::invalid_argument("no threshold for label '" + label + "'");
    out[label] = score >= it->second;
  }
  return out;
}

}  // namespace kgqa

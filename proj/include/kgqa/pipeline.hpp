#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgqa/config.hpp"
#include "kgqa/datasets.hpp"
#include "kgqa/graph.hpp"
#include "kgqa/inference.hpp"
#include "kgqa/question.hpp"

namespace kgqa {

struct QAPrediction {
  std::string id;
  QuestionSpec question;
  std::vector<std::string> answers;  // as scored (after anonymization)
  std::vector<AnswerScoreBreakdown> scores;
  int chosen = 0;
  std::optional<int> gold;
  ReasoningGraph graph;
};

struct StoryPrediction {
  std::string id;
  std::array<double, 8> scores{};  // per emotion label, label order
  std::vector<AnswerScoreBreakdown> breakdown;
  std::optional<std::set<std::string>> gold;
  ReasoningGraph graph;
};

GraphOptions graph_options(const RunConfig& config);

// Build, score and aggregate one multiple-choice example.
QAPrediction predict_qa(const KnowledgeModel& model, const RunConfig& config,
                        const SocialIQAExample& example);

// Build, score and aggregate one story example; decisions need thresholds
// and are made separately.
StoryPrediction score_story(const KnowledgeModel& model, const RunConfig& config,
                            const StoryExample& story);
// Same for raw story text; `character` (optional) is anonymized first so it
// becomes PersonX.
StoryPrediction score_story_text(const KnowledgeModel& model, const RunConfig& config,
                                 std::string id, const std::string& context,
                                 const std::string& character = {});

std::array<bool, 8> decide_story(const std::array<double, 8>& scores,
                                 const std::map<std::string, double>& kappas);

// Output records. Graphs are not included.
nlohmann::ordered_json to_json(const QAPrediction& p);
nlohmann::ordered_json to_json(const StoryPrediction& p,
                               const std::optional<std::array<bool, 8>>& decisions,
                               const std::map<std::string, double>& kappas);

// Runs fn(i) for i in [0, n) on up to `jobs` threads and returns the results
// in index order. The first exception thrown (lowest index) is rethrown
// after all workers stop.
template <typename Fn>
auto parallel_map(std::size_t n, unsigned jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next++) < n;) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace kgqa

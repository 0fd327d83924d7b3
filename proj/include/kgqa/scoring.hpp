#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "kgqa/graph.hpp"
#include "kgqa/knowledge_model.hpp"
#include "kgqa/question.hpp"

namespace kgqa {

// Relation-specific prefix that turns an inference into a statement usable as
// scoring context: ("happy", xAttr) -> "PersonX is happy".
std::string_view relation_prefix(Relation relation);
std::string prefix_inference(std::string_view text, Relation relation);

// The eight Plutchik emotions in their fixed order.
inline constexpr std::array<std::string_view, 8> kEmotionLabels = {
    "disgust", "surprise", "fear", "anger", "trust", "anticipation", "sadness", "joy"};

// Adjective scored as the answer for an emotion label (fear -> afraid).
// Throws std::invalid_argument for labels outside the eight.
std::string_view emotion_answer_text(std::string_view label);
bool is_emotion_label(std::string_view label);

struct ScoringOptions {
  bool pmi = true;
  std::string marginal_context{kDefaultMarginalContext};
  // Reuse the marginal term across parent nodes. Results are bit-identical
  // either way.
  bool cache_marginals = true;
};

// Computes answer factors against one knowledge model. The marginal term
// depends only on (relation, answer) and is cached per Scorer instance, so use
// one Scorer per example. Not thread-safe.
class Scorer {
 public:
  Scorer(const KnowledgeModel& model, ScoringOptions options = {});

  // conditional = mean_s log P(y_s | y_<s, parent_text, relation)
  // marginal    = the same with the marginal context in place of parent_text
  FactorValue answer_factor(std::string_view parent_text, Relation relation,
                            const AnswerLeaf& answer);
  FactorValue answer_factor(std::string_view parent_text, const QuestionSpec& question,
                            const AnswerLeaf& answer) {
    return answer_factor(parent_text, question.relation, answer);
  }

  // Mean of the xReact and oReact factors for the label's adjective.
  FactorValue story_emotion_factor(std::string_view parent_text, std::string_view label);

  const ScoringOptions& options() const { return options_; }

 private:
  double mean_logprob(const TokenSeq& context, Relation relation, const TokenSeq& target) const;
  double marginal(Relation relation, const TokenSeq& target);

  const KnowledgeModel& model_;
  ScoringOptions options_;
  TokenSeq marginal_tokens_;
  std::map<std::pair<Relation, TokenSeq>, double> marginal_cache_;
};

// Fills the factors of a graph whose answers are the candidate answers to
// `question`.
void score_question_graph(Scorer& scorer, ReasoningGraph& graph, const QuestionSpec& question);

// Fills the factors of a graph whose answers are emotion adjectives (as
// produced by story_answer_texts()).
void score_story_graph(Scorer& scorer, ReasoningGraph& graph);

// The eight emotion adjectives in label order.
std::vector<std::string> story_answer_texts();

}  // namespace kgqa

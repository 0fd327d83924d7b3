#include "kgqa/scoring.hpp"

#include <cmath>
#include <stdexcept>

namespace kgqa {

std::string_view relation_prefix(Relation relation) {
  switch (relation) {
    case Relation::xWant: return "PersonX wants";
    case Relation::xReact: return "PersonX is";
    case Relation::xNeed: return "PersonX needs";
    case Relation::xIntent: return "PersonX wants";
    case Relation::xAttr: return "PersonX is";
    case Relation::xEffect: return "PersonX";
    case Relation::oReact: return "PersonX is";
    case Relation::oEffect: return "PersonX";
    case Relation::oWant: return "PersonX wants";
  }
  return "";
}

std::string prefix_inference(std::string_view text, Relation relation) {
  std::string out(relation_prefix(relation));
  out += ' ';
  out += text;
  return out;
}

std::string_view emotion_answer_text(std::string_view label) {
  static constexpr std::array<std::string_view, 8> kAdjectives = {
      "disgusted", "surprised", "afraid", "angry", "trusting", "excited", "sad", "happy"};
  for (std::size_t i = 0; i < kEmotionLabels.size(); ++i) {
    if (kEmotionLabels[i] == label) return kAdjectives[i];
  }
  throw std::invalid_argument("unknown emotion label '" + std::string(label) + "'");
}

bool is_emotion_label(std::string_view label) {
  for (auto l : kEmotionLabels) {
    if (l == label) return true;
  }
  return false;
}

std::vector<std::string> story_answer_texts() {
  std::vector<std::string> out;
  for (auto label : kEmotionLabels) out.emplace_back(emotion_answer_text(label));
  return out;
}

Scorer::Scorer(const KnowledgeModel& model, ScoringOptions options)
    : model_(model),
      options_(std::move(options)),
      marginal_tokens_(marginal_context(options_.marginal_context)) {}

double Scorer::mean_logprob(const TokenSeq& context, Relation relation,
                            const TokenSeq& target) const {
  if (target.empty()) throw std::invalid_argument("empty answer");
  double sum = 0.0;
  for (double lp : model_.token_logprobs(context, relation, target)) sum += lp;
  return sum / static_cast<double>(target.size());
}

double Scorer::marginal(Relation relation, const TokenSeq& target) {
  if (!options_.cache_marginals) return mean_logprob(marginal_tokens_, relation, target);
  auto key = std::make_pair(relation, target);
  auto it = marginal_cache_.find(key);
  if (it != marginal_cache_.end()) return it->second;
  double v = mean_logprob(marginal_tokens_, relation, target);
  marginal_cache_.emplace(std::move(key), v);
  return v;
}

FactorValue Scorer::answer_factor(std::string_view parent_text, Relation relation,
                                  const AnswerLeaf& answer) {
  FactorValue f;
  f.conditional_part = mean_logprob(tokenize(parent_text), relation, answer.tokens);
  if (!options_.pmi) {
    f.value = f.conditional_part;
    return f;
  }
  f.marginal_part = marginal(relation, answer.tokens);
  f.value = f.conditional_part - f.marginal_part;
  // -inf - -inf: no evidence either way; treat as impossible.
  if (std::isnan(f.value)) f.value = -INFINITY;
  return f;
}

FactorValue Scorer::story_emotion_factor(std::string_view parent_text, std::string_view label) {
  AnswerLeaf leaf{0, std::string(emotion_answer_text(label)), {}};
  leaf.tokens = tokenize(leaf.text);
  const auto self = answer_factor(parent_text, Relation::xReact, leaf);
  const auto others = answer_factor(parent_text, Relation::oReact, leaf);
  return {(self.value + others.value) / 2.0,
          (self.conditional_part + others.conditional_part) / 2.0,
          (self.marginal_part + others.marginal_part) / 2.0};
}

void score_question_graph(Scorer& scorer, ReasoningGraph& graph, const QuestionSpec& question) {
  fill_factors(graph, [&](const std::string& text, const AnswerLeaf& a) {
    return scorer.answer_factor(text, question.relation, a);
  });
}

void score_story_graph(Scorer& scorer, ReasoningGraph& graph) {
  fill_factors(graph, [&](const std::string& text, const AnswerLeaf& a) {
    if (a.id < 0 || a.id >= static_cast<int>(kEmotionLabels.size())) {
      throw std::invalid_argument("story graph must carry the eight emotion answers");
    }
    return scorer.story_emotion_factor(text, kEmotionLabels[a.id]);
  });
}

}  // namespace kgqa

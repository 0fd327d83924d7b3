#include "kgqa/pipeline.hpp"

#include "kgqa/errors.hpp"
#include "kgqa/json_util.hpp"
#include "kgqa/scoring.hpp"

namespace kgqa {
namespace {

nlohmann::ordered_json per_level_json(const AnswerScoreBreakdown& b) {
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < b.per_level.size(); ++l) {
    arr.push_back(b.level_present[l] ? nlohmann::ordered_json(encode_real(b.per_level[l]))
                                     : nlohmann::ordered_json("skipped"));
  }
  return arr;
}

}  // namespace

GraphOptions graph_options(const RunConfig& config) {
  GraphOptions o;
  o.levels = config.levels;
  o.strategy = config.strategy();
  o.task = config.task;
  o.prune.enabled = config.prune;
  return o;
}

QAPrediction predict_qa(const KnowledgeModel& model, const RunConfig& config,
                        const SocialIQAExample& example) {
  QAPrediction p;
  p.id = example.id;
  p.gold = example.gold_index;
  p.question = map_question_to_relation(example.question);
  std::string context = example.context;
  p.answers.assign(example.answers.begin(), example.answers.end());
  if (config.anonymize) {
    Anonymizer anon;
    context = anon(context);
    for (auto& a : p.answers) a = anon(a);
  }
  p.graph = build_graph(model, context, graph_options(config));
  attach_answers(p.graph, p.answers);
  Scorer scorer(model, {config.pmi, config.marginal_context, true});
  score_question_graph(scorer, p.graph, p.question);
  p.scores = answer_scores(p.graph, config.aggregation());
  for (std::size_t i = 0; i < p.scores.size(); ++i) {
    if (p.scores[i].chosen) p.chosen = static_cast<int>(i);
  }
  return p;
}

StoryPrediction score_story(const KnowledgeModel& model, const RunConfig& config,
                            const StoryExample& story) {
  auto p = score_story_text(model, config, story.id, story_context(story), story.character);
  p.gold = story.gold_labels;
  return p;
}

StoryPrediction score_story_text(const KnowledgeModel& model, const RunConfig& config,
                                 std::string id, const std::string& text,
                                 const std::string& character) {
  StoryPrediction p;
  p.id = std::move(id);
  std::string context = text;
  if (config.anonymize) {
    Anonymizer anon;
    if (!character.empty()) anon(character);
    context = anon(context);
  }
  p.graph = build_graph(model, context, graph_options(config));
  attach_answers(p.graph, story_answer_texts());
  Scorer scorer(model, {config.pmi, config.marginal_context, true});
  score_story_graph(scorer, p.graph);
  p.breakdown = answer_scores(p.graph, config.aggregation());
  for (std::size_t i = 0; i < p.scores.size(); ++i) p.scores[i] = p.breakdown[i].total;
  return p;
}

std::array<bool, 8> decide_story(const std::array<double, 8>& scores,
                                 const std::map<std::string, double>& kappas) {
  std::map<std::string, double> by_label;
  for (std::size_t i = 0; i < scores.size(); ++i) by_label[std::string(kEmotionLabels[i])] = scores[i];
  const auto decisions = threshold_decide(by_label, kappas);
  std::array<bool, 8> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = decisions.at(std::string(kEmotionLabels[i]));
  return out;
}

nlohmann::ordered_json to_json(const QAPrediction& p) {
  nlohmann::ordered_json j;
  j["id"] = p.id;
  j["relation"] = std::string(to_string(p.question.relation));
  auto& answers = j["answers"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < p.scores.size(); ++i) {
    nlohmann::ordered_json a;
    a["text"] = p.answers[i];
    a["total"] = encode_real(p.scores[i].total);
    a["per_level"] = per_level_json(p.scores[i]);
    answers.push_back(std::move(a));
  }
  j["chosen"] = p.chosen;
  if (p.gold) j["gold"] = *p.gold;
  return j;
}

nlohmann::ordered_json to_json(const StoryPrediction& p,
                               const std::optional<std::array<bool, 8>>& decisions,
                               const std::map<std::string, double>& kappas) {
  nlohmann::ordered_json j;
  j["id"] = p.id;
  auto& labels = j["labels"] = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < kEmotionLabels.size(); ++i) {
    const std::string label(kEmotionLabels[i]);
    nlohmann::ordered_json l;
    l["total"] = encode_real(p.scores[i]);
    l["per_level"] = per_level_json(p.breakdown[i]);
    if (auto k = kappas.find(label); k != kappas.end()) l["kappa"] = encode_real(k->second);
    if (decisions) l["positive"] = (*decisions)[i];
    labels[label] = std::move(l);
  }
  if (p.gold) j["gold"] = *p.gold;
  return j;
}

}  // namespace kgqa

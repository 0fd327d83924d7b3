#include "kgqa/pruning.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "kgqa/lexicons.hpp"

namespace kgqa {
namespace {

bool known_verb(const std::string& w) {
  return lexicon::is_closed_class_verb(w) || lexicon::is_base_verb(w);
}

// "stopp" -> "stop"
bool undoubled_verb(const std::string& stem) {
  const auto n = stem.size();
  return n >= 2 && stem[n - 1] == stem[n - 2] && known_verb(stem.substr(0, n - 1));
}

bool is_none(const Generation& g) { return duplicate_key(g.text()) == "none"; }

bool mentions_person_y(const Generation& g) {
  return std::any_of(g.tokens.begin(), g.tokens.end(),
                     [](const Token& t) { return t.find("PersonY") != std::string::npos; });
}

}  // namespace

bool default_is_verb(std::string_view token) {
  const std::string w = to_lower(token);
  if (w.empty()) return false;
  if (known_verb(w)) return true;
  auto ends = [&](std::string_view suffix) { return w.size() > suffix.size() + 1 && w.ends_with(suffix); };
  auto cut = [&](std::size_t n) { return w.substr(0, w.size() - n); };
  if (ends("ing")) {
    auto stem = cut(3);
    if (known_verb(stem) || known_verb(stem + "e") || undoubled_verb(stem)) return true;
  }
  if (ends("ied") && known_verb(cut(3) + "y")) return true;
  if (ends("ies") && known_verb(cut(3) + "y")) return true;
  if (ends("ed")) {
    auto stem = cut(2);
    if (known_verb(stem) || known_verb(cut(1)) || undoubled_verb(stem)) return true;
  }
  if (ends("es") && known_verb(cut(2))) return true;
  if (ends("s") && known_verb(cut(1))) return true;
  return false;
}

std::vector<Relation> task_relations(Task task) {
  if (task == Task::StoryCommonsense) return {kStoryRelations.begin(), kStoryRelations.end()};
  return {kAllRelations.begin(), kAllRelations.end()};
}

std::string duplicate_key(std::string_view text) {
  std::string key = to_lower(text);
  while (!key.empty() && (key.back() == '.' || key.back() == '!' || key.back() == '?' ||
                          key.back() == ' ')) {
    key.pop_back();
  }
  return key;
}

std::vector<Generation> prune(const std::vector<Generation>& candidates, Relation relation,
                              Task task, const PruneOptions& options) {
  if (task == Task::StoryCommonsense &&
      std::find(kStoryRelations.begin(), kStoryRelations.end(), relation) ==
          kStoryRelations.end()) {
    throw std::invalid_argument("relation " + std::string(to_string(relation)) +
                                " is not expanded for story tasks");
  }
  if (!options.enabled) return candidates;

  // Rule 5 threshold: the best score among "none" candidates.
  std::optional<double> none_score;
  if (candidates.size() > 1) {
    for (const auto& g : candidates) {
      if (is_none(g) && (!none_score || g.avg_logprob > *none_score)) none_score = g.avg_logprob;
    }
  }

  const bool check_person_y = relation == Relation::oEffect || relation == Relation::oReact ||
                              relation == Relation::oWant;
  const bool check_verb = relation == Relation::xEffect || relation == Relation::oEffect;

  std::vector<Generation> out;
  std::set<std::string> seen;
  for (const auto& g : candidates) {
    if (is_none(g)) continue;
    if (!seen.insert(duplicate_key(g.text())).second) continue;
    if (check_person_y && mentions_person_y(g)) continue;
    if (check_verb && std::none_of(g.tokens.begin(), g.tokens.end(),
                                   [&](const Token& t) { return options.is_verb(t); })) {
      continue;
    }
    if (none_score && g.avg_logprob < *none_score) continue;
    out.push_back(g);
  }
  return out;
}

}  // namespace kgqa

#include "kgqa/relation.hpp"

namespace kgqa {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::xWant: return "xWant";
    case Relation::xReact: return "xReact";
    case Relation::xNeed: return "xNeed";
    case Relation::xIntent: return "xIntent";
    case Relation::xAttr: return "xAttr";
    case Relation::xEffect: return "xEffect";
    case Relation::oReact: return "oReact";
    case Relation::oEffect: return "oEffect";
    case Relation::oWant: return "oWant";
  }
  return "?";
}

std::optional<Relation> parse_relation(std::string_view name) {
  for (Relation r : kAllRelations) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::string_view describe(Relation r) {
  switch (r) {
    case Relation::oEffect: return "The effect the event has on others besides Person X";
    case Relation::oReact: return "The reaction of others besides Person X to the event";
    case Relation::oWant: return "What others besides Person X may want to do after the event";
    case Relation::xAttr: return "How Person X might be described given their part in the event";
    case Relation::xEffect: return "The effect that the event would have on Person X";
    case Relation::xIntent: return "The reason why X would cause the event";
    case Relation::xNeed: return "What Person X might need to do before the event";
    case Relation::xReact: return "The reaction that Person X would have to the event";
    case Relation::xWant: return "What Person X may want to do after the event";
  }
  return "";
}

std::string_view to_string(Task t) {
  return t == Task::SocialIQA ? "socialiqa" : "storycs";
}

std::optional<Task> parse_task(std::string_view name) {
  if (name == "socialiqa") return Task::SocialIQA;
  if (name == "storycs") return Task::StoryCommonsense;
  return std::nullopt;
}

}  // namespace kgqa

#include "kgqa/question.hpp"

#include <regex>
#include <vector>

#include "kgqa/errors.hpp"
#include "kgqa/token.hpp"

namespace kgqa {
namespace {

struct Pattern {
  std::regex re;
  Relation relation;
  bool others;  // subject is "Others" rather than a captured character
};

const std::vector<Pattern>& patterns() {
  using std::regex;
  constexpr auto flags = regex::ECMAScript | regex::icase;
  static const std::vector<Pattern> p = {
      {regex(R"(^how (would|will|does|did) others feel( as a result| afterwards| after)?\s*\??$)", flags), Relation::oReact, true},
      {regex(R"(^what will others want to do( next)?\s*\??$)", flags), Relation::oWant, true},
      {regex(R"(^what will happen to others\s*\??$)", flags), Relation::oEffect, true},
      {regex(R"(^how would you describe (.+?)\s*\??$)", flags), Relation::xAttr, false},
      {regex(R"(^what will happen to (.+?)\s*\??$)", flags), Relation::xEffect, false},
      {regex(R"(^what (does|did|will|would) (.+?) need to do( before( this| that)?)?\s*\??$)", flags), Relation::xNeed, false},
      {regex(R"(^why did (.+?) do (this|that)\s*\??$)", flags), Relation::xIntent, false},
      {regex(R"(^how (would|will|does|did) (.+?) feel( afterwards| after| as a result)?\s*\??$)", flags), Relation::xReact, false},
      {regex(R"(^what will (.+?) want to do( next)?\s*\??$)", flags), Relation::xWant, false},
  };
  return p;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Index of the capture group holding the character for each pattern.
int character_group(Relation r) {
  switch (r) {
    case Relation::xNeed:
    case Relation::xReact: return 2;
    default: return 1;
  }
}

std::string template_for(Relation r) {
  switch (r) {
    case Relation::oEffect: return "The effect on others will be ___";
    case Relation::oReact: return "Others feel ___";
    case Relation::oWant: return "After, others will want to ___";
    case Relation::xAttr: return "CHARACTER is ___";
    case Relation::xEffect: return "The effect on CHARACTER will be ___";
    case Relation::xNeed: return "Before, CHARACTER needs to ___";
    case Relation::xIntent: return "CHARACTER did this because ___";
    case Relation::xReact: return "CHARACTER feels ___";
    case Relation::xWant: return "After, CHARACTER will want to ___";
  }
  return "___";
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

}  // namespace

QuestionSpec map_question_to_relation(std::string_view question_text) {
  const std::string q = std::regex_replace(trim(question_text), std::regex(R"(\s+)"), " ");
  std::smatch m;
  for (const auto& p : patterns()) {
    if (!std::regex_match(q, m, p.re)) continue;
    QuestionSpec spec{q, p.relation, "Others"};
    if (!p.others) spec.character = m[character_group(p.relation)].str();
    if (!p.others && to_lower(spec.character) == "others") continue;
    return spec;
  }
  throw ClassificationError("unrecognized question form: '" + q + "'");
}

std::string apply_template(std::string_view question, std::string_view character,
                           std::string_view answer) {
  const auto spec = map_question_to_relation(question);
  std::string out = template_for(spec.relation);
  replace_all(out, "CHARACTER", character);
  replace_all(out, "___", answer);
  return out;
}

}  // namespace kgqa

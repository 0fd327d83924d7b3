#pragma once

#include <string>
#include <string_view>

#include "kgqa/relation.hpp"

namespace kgqa {

// A question reduced to the relation handed to the knowledge model.
struct QuestionSpec {
  std::string raw_text;
  Relation relation = Relation::xReact;
  std::string character;  // grounded subject, or "Others"
};

// Recognizes the nine question forms:
//   How would X feel afterwards?          -> xReact
//   How would Others feel as a result?    -> oReact
//   What will X want to do next?          -> xWant
//   What will Others want to do next?     -> oWant
//   How would you describe X?             -> xAttr
//   What does X need to do before this?   -> xNeed
//   Why did X do this?                    -> xIntent
//   What will happen to X?                -> xEffect
//   What will happen to Others?           -> oEffect
// Minor wording variants (does/would/will, after/afterwards) are accepted.
// Throws ClassificationError for anything else.
QuestionSpec map_question_to_relation(std::string_view question_text);

// Declarative template for the question with `character` substituted and
// `answer` filled into the blank, e.g. "Alice feels drained".
std::string apply_template(std::string_view question, std::string_view character,
                           std::string_view answer);

}  // namespace kgqa

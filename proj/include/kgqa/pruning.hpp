#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "kgqa/decoding.hpp"
#include "kgqa/relation.hpp"

namespace kgqa {

// Decides whether a token is a verb. Swappable because the heuristic below is
// only an approximation of part-of-speech tagging.
using VerbPredicate = std::function<bool(std::string_view token)>;

// Closed-class list, base-verb lexicon, and -s/-es/-ed/-ing stems checked
// against the lexicon.
bool default_is_verb(std::string_view token);

struct PruneOptions {
  bool enabled = true;
  VerbPredicate is_verb = default_is_verb;
};

// Relations expanded for a task.
std::vector<Relation> task_relations(Task task);

// Filters generations for one (input, relation) pair, applying in order:
//  1. drop the literal "none";
//  2. drop a candidate equal to an earlier one up to trailing . ! ? and case;
//  3. drop candidates mentioning PersonY for oEffect, oReact, oWant;
//  4. drop candidates without a verb for xEffect, oEffect;
//  5. with more than one candidate, drop everything scored below a "none";
//  6. for story tasks, only the five story relations may reach this point.
// Throws std::invalid_argument if rule 6 is violated.
std::vector<Generation> prune(const std::vector<Generation>& candidates, Relation relation,
                              Task task, const PruneOptions& options = {});

// Text used for duplicate detection: lower case, trailing . ! ? and spaces removed.
std::string duplicate_key(std::string_view text);

}  // namespace kgqa

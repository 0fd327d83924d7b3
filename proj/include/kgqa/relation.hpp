#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace kgqa {

// The nine ATOMIC commonsense dimensions.
enum class Relation { xWant, xReact, xNeed, xIntent, xAttr, xEffect, oReact, oEffect, oWant };

inline constexpr std::array<Relation, 9> kAllRelations = {
    Relation::xWant,  Relation::xReact,  Relation::xNeed,   Relation::xIntent, Relation::xAttr,
    Relation::xEffect, Relation::oReact, Relation::oEffect, Relation::oWant};

// Relations expanded for story emotion tasks.
inline constexpr std::array<Relation, 5> kStoryRelations = {
    Relation::xReact, Relation::oReact, Relation::xEffect, Relation::oEffect, Relation::xIntent};

std::string_view to_string(Relation r);
std::optional<Relation> parse_relation(std::string_view name);

// Human-readable gloss of the dimension.
std::string_view describe(Relation r);

enum class Task { SocialIQA, StoryCommonsense };

std::string_view to_string(Task t);
std::optional<Task> parse_task(std::string_view name);

}  // namespace kgqa

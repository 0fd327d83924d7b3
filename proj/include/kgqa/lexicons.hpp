#pragma once

#include <optional>
#include <span>
#include <string_view>

// Word lists compiled into the library: a base-form verb lexicon, closed-class
// and irregular verb forms, an English stopword list and a first-name list.
namespace kgqa::lexicon {

// Auxiliaries and irregular inflections (lower case).
bool is_closed_class_verb(std::string_view word);
// Base-form verbs (lower case).
bool is_base_verb(std::string_view word);
bool is_stopword(std::string_view word);
// Case-sensitive; names are capitalized.
bool is_first_name(std::string_view word);
// Base form of an irregular verb inflection (went -> go), if known.
std::optional<std::string_view> irregular_base(std::string_view word);

std::span<const std::string_view> first_names();
std::span<const std::string_view> stopwords();

}  // namespace kgqa::lexicon

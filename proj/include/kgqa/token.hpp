#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kgqa {

using Token = std::string;
using TokenSeq = std::vector<Token>;

// Whitespace tokenization with the characters . , ! ? ; : " ( ) split off as
// tokens of their own. Apostrophes and hyphens stay inside words.
TokenSeq tokenize(std::string_view text);

// Inverse of tokenize up to whitespace: tokenize(detokenize(t)) == t for any
// t produced by tokenize.
std::string detokenize(std::span<const Token> tokens);

bool is_punctuation_token(std::string_view token);

std::string to_lower(std::string_view s);

}  // namespace kgqa

#include "kgqa/token.hpp"

#include <algorithm>
#include <cctype>

namespace kgqa {
namespace {

constexpr std::string_view kSplitChars = ".,!?;:\"()";

bool is_split_char(char c) { return kSplitChars.find(c) != std::string_view::npos; }

// Tokens that attach to the preceding word when detokenizing.
bool attaches_left(std::string_view tok) {
  return tok == "." || tok == "," || tok == "!" || tok == "?" || tok == ";" || tok == ":" ||
         tok == ")";
}

}  // namespace

TokenSeq tokenize(std::string_view text) {
  TokenSeq out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (is_split_char(c)) {
      flush();
      out.emplace_back(1, c);
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  bool glue_next = false;
  for (const auto& tok : tokens) {
    if (!out.empty() && !glue_next && !attaches_left(tok)) out.push_back(' ');
    out += tok;
    glue_next = tok == "(";
  }
  return out;
}

bool is_punctuation_token(std::string_view token) {
  return token.size() == 1 && is_split_char(token.front());
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace kgqa

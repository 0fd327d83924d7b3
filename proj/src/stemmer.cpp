#include "kgqa/stemmer.hpp"

#include <array>
#include <utility>

namespace kgqa {
namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view w) : b_(w) {}

  std::string run() {
    if (b_.size() <= 2) return b_;
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5();
    return b_;
  }

 private:
  bool consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 || !consonant(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
  }

  // consonant-vowel-consonant ending, last consonant not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
    char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view s) const { return b_.size() >= s.size() && b_.ends_with(s); }
  std::size_t stem_len(std::string_view suffix) const { return b_.size() - suffix.size(); }
  void replace_suffix(std::string_view suffix, std::string_view with) {
    b_.resize(stem_len(suffix));
    b_ += with;
  }

  // Replaces the first matching suffix when the stem measure exceeds `min_m`.
  template <std::size_t N>
  void rules(const std::array<std::pair<std::string_view, std::string_view>, N>& table, int min_m) {
    for (const auto& [suffix, with] : table) {
      if (ends(suffix)) {
        if (measure(stem_len(suffix)) > min_m) replace_suffix(suffix, with);
        return;
      }
    }
  }

  void step1a() {
    if (ends("sses")) replace_suffix("sses", "ss");
    else if (ends("ies")) replace_suffix("ies", "i");
    else if (ends("ss")) return;
    else if (ends("s")) b_.pop_back();
  }

  void step1b() {
    if (ends("eed")) {
      if (measure(stem_len("eed")) > 0) b_.pop_back();
      return;
    }
    bool stripped = false;
    for (std::string_view suffix : {std::string_view("ed"), std::string_view("ing")}) {
      if (ends(suffix) && has_vowel(stem_len(suffix))) {
        b_.resize(stem_len(suffix));
        stripped = true;
        break;
      }
    }
    if (!stripped) return;
    if (ends("at") || ends("bl") || ends("iz")) {
      b_ += 'e';
    } else if (double_consonant(b_.size())) {
      char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else if (measure(b_.size()) == 1 && cvc(b_.size())) {
      b_ += 'e';
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(b_.size() - 1)) b_.back() = 'i';
  }

  void step2() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 20> kTable = {{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
    }};
    // Longest suffixes are listed before their own tails where it matters
    // ("ational" before "tional", "ization" before "ation").
    for (const auto& [suffix, with] : kTable) {
      if (ends(suffix)) {
        if (measure(stem_len(suffix)) > 0) replace_suffix(suffix, with);
        return;
      }
    }
  }

  void step3() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kTable = {{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    rules(kTable, 0);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> kSuffixes = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
    // Longest match first among overlapping endings.
    std::string_view match;
    for (auto s : kSuffixes) {
      if (ends(s) && s.size() > match.size()) match = s;
    }
    if (match.empty()) return;
    const auto len = stem_len(match);
    if (measure(len) <= 1) return;
    if (match == "ion" && !(len > 0 && (b_[len - 1] == 's' || b_[len - 1] == 't'))) return;
    b_.resize(len);
  }

  void step5() {
    if (ends("e")) {
      const auto len = b_.size() - 1;
      const int m = measure(len);
      if (m > 1 || (m == 1 && !cvc(len))) b_.pop_back();
    }
    if (ends("ll") && measure(b_.size()) > 1) b_.pop_back();
  }

  std::string b_;
};

}  // namespace

std::string porter_stem(std::string_view word) { return Stemmer(word).run(); }

}  // namespace kgqa

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kgqa {

struct SocialIQAExample {
  std::string id;  // 1-based line number in the source file
  std::string context;
  std::string question;
  std::array<std::string, 3> answers;
  std::optional<int> gold_index;  // 0..2
};

struct SocialIQALoad {
  std::vector<SocialIQAExample> examples;
  std::size_t dropped_spam = 0;
};

// 1-based line numbers of rows to drop. File format: one number per line,
// '#' starts a comment.
using SpamBlocklist = std::set<std::size_t>;
SpamBlocklist load_blocklist(const std::filesystem::path& path);

// JSON lines with context, question, answerA, answerB, answerC and an
// optional label ("1".."3", 1..3, or "A".."C"). Blank lines are skipped.
// Throws DataError naming the offending line.
SocialIQALoad load_socialiqa(const std::filesystem::path& path,
                             const SpamBlocklist& blocklist = {});
SocialIQALoad parse_socialiqa(std::string_view text, const SpamBlocklist& blocklist = {},
                              std::string_view source = "<input>");

// Separate label file, one label per line; applied in order to `examples`.
void attach_socialiqa_labels(std::vector<SocialIQAExample>& examples,
                             const std::filesystem::path& labels_path);

struct StoryExample {
  std::string id;  // storyid:linenum:character
  std::array<std::string, 5> sentences;
  int sentence_index = 1;  // 1..5, the sentence under annotation
  std::string character;
  std::optional<std::set<std::string>> gold_labels;
};

// CSV with a header row naming at least storyid, linenum, char and
// sentence1..sentence5; an optional plutchik column lists gold emotions
// separated by ';' (an optional ":N" suffix per label is ignored).
std::vector<StoryExample> load_storycs(const std::filesystem::path& path);
std::vector<StoryExample> parse_storycs(std::string_view text,
                                        std::string_view source = "<input>");

// Story text up to and including the annotated sentence.
std::string story_context(const StoryExample& story);

struct EmotionQuery {
  std::string context;
  std::string label;
};

// One query per emotion label, in the fixed label order.
std::vector<EmotionQuery> emotion_to_qa(const StoryExample& story);

// Gold labels as a vector in label order.
std::array<bool, 8> gold_vector(const std::set<std::string>& labels);

// Replaces person names with PersonX, PersonY, PersonZ in order of first
// appearance. A name keeps its placeholder across calls on the same instance,
// so a context and its answers can share one mapping. Names beyond the third
// are left as they are.
class Anonymizer {
 public:
  std::string operator()(std::string_view text);
  const std::map<std::string, std::string>& mapping() const { return mapping_; }

 private:
  std::map<std::string, std::string> mapping_;
  std::set<std::string> taken_;  // placeholders already assigned or present in the text
};

std::string anonymize(std::string_view text);

}  // namespace kgqa

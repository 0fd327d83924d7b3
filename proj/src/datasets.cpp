#include "kgqa/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgqa/csv.hpp"
#include "kgqa/errors.hpp"
#include "kgqa/lexicons.hpp"
#include "kgqa/scoring.hpp"
#include "kgqa/token.hpp"

namespace kgqa {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<int> parse_choice(const nlohmann::json& v) {
  if (v.is_number_integer()) {
    int n = v.get<int>();
    if (n >= 1 && n <= 3) return n - 1;
    return std::nullopt;
  }
  if (!v.is_string()) return std::nullopt;
  const auto s = trim(v.get<std::string>());
  if (s == "1" || s == "A" || s == "a") return 0;
  if (s == "2" || s == "B" || s == "b") return 1;
  if (s == "3" || s == "C" || s == "c") return 2;
  return std::nullopt;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

bool is_word_char(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

}  // namespace

SpamBlocklist load_blocklist(const std::filesystem::path& path) {
  SpamBlocklist out;
  std::size_t line_no = 0;
  const auto text = read_file(path);
  for (auto line : split_lines(text)) {
    ++line_no;
    auto content = trim(line.substr(0, line.find('#')));
    if (content.empty()) continue;
    try {
      std::size_t pos = 0;
      auto n = std::stoull(content, &pos);
      if (pos != content.size() || n == 0) throw std::invalid_argument("bad");
      out.insert(n);
    } catch (const std::exception&) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected a positive line number");
    }
  }
  return out;
}

SocialIQALoad parse_socialiqa(std::string_view text, const SpamBlocklist& blocklist,
                              std::string_view source) {
  SocialIQALoad out;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto where = std::string(source) + ":" + std::to_string(line_no);
    if (blocklist.contains(line_no)) {
      ++out.dropped_spam;
      continue;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw DataError(where + ": expected a JSON object");
    auto field = [&](const char* name) {
      if (!j.contains(name) || !j[name].is_string()) {
        throw DataError(where + ": missing string field '" + name + "'");
      }
      auto v = j[name].get<std::string>();
      if (trim(v).empty()) throw DataError(where + ": empty field '" + name + "'");
      return v;
    };
    SocialIQAExample ex;
    ex.id = std::to_string(line_no);
    ex.context = field("context");
    ex.question = field("question");
    ex.answers = {field("answerA"), field("answerB"), field("answerC")};
    if (j.contains("label") && !j["label"].is_null()) {
      ex.gold_index = parse_choice(j["label"]);
      if (!ex.gold_index) throw DataError(where + ": label must be 1, 2 or 3");
    }
    out.examples.push_back(std::move(ex));
  }
  return out;
}

SocialIQALoad load_socialiqa(const std::filesystem::path& path, const SpamBlocklist& blocklist) {
  return parse_socialiqa(read_file(path), blocklist, path.string());
}

void attach_socialiqa_labels(std::vector<SocialIQAExample>& examples,
                             const std::filesystem::path& labels_path) {
  std::vector<int> labels;
  std::size_t line_no = 0;
  const auto text = read_file(labels_path);
  for (auto line : split_lines(text)) {
    ++line_no;
    auto s = trim(line);
    if (s.empty()) continue;
    auto choice = parse_choice(nlohmann::json(s));
    if (!choice) {
      throw DataError(labels_path.string() + ":" + std::to_string(line_no) + ": bad label");
    }
    labels.push_back(*choice);
  }
  if (labels.size() != examples.size()) {
    throw DataError(labels_path.string() + ": " + std::to_string(labels.size()) +
                    " labels for " + std::to_string(examples.size()) + " examples");
  }
  for (std::size_t i = 0; i < examples.size(); ++i) examples[i].gold_index = labels[i];
}

std::vector<StoryExample> parse_storycs(std::string_view text, std::string_view source) {
  std::vector<CsvRow> rows;
  try {
    rows = parse_csv(text);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string(source) + ": " + e.what());
  }
  if (rows.empty()) throw DataError(std::string(source) + ": missing header row");
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < rows[0].size(); ++i) col[trim(rows[0][i])] = i;
  auto need = [&](const std::string& name) {
    auto it = col.find(name);
    if (it == col.end()) throw DataError(std::string(source) + ": missing column '" + name + "'");
    return it->second;
  };
  const auto c_story = need("storyid");
  const auto c_line = need("linenum");
  const auto c_char = need("char");
  std::array<std::size_t, 5> c_sent{};
  for (int i = 0; i < 5; ++i) c_sent[i] = need("sentence" + std::to_string(i + 1));
  const auto labels_it = col.find("plutchik");

  std::vector<StoryExample> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto where = std::string(source) + ": record " + std::to_string(r);
    if (row.size() != rows[0].size()) {
      throw DataError(where + ": expected " + std::to_string(rows[0].size()) + " fields, got " +
                      std::to_string(row.size()));
    }
    StoryExample ex;
    for (int i = 0; i < 5; ++i) {
      ex.sentences[i] = trim(row[c_sent[i]]);
      if (ex.sentences[i].empty()) throw DataError(where + ": empty sentence" + std::to_string(i + 1));
    }
    try {
      ex.sentence_index = std::stoi(row[c_line]);
    } catch (const std::exception&) {
      throw DataError(where + ": bad linenum '" + row[c_line] + "'");
    }
    if (ex.sentence_index < 1 || ex.sentence_index > 5) throw DataError(where + ": linenum outside 1..5");
    ex.character = trim(row[c_char]);
    ex.id = trim(row[c_story]) + ":" + std::to_string(ex.sentence_index) + ":" + ex.character;
    if (labels_it != col.end()) {
      std::set<std::string> labels;
      std::string cell = row[labels_it->second];
      for (char& ch : cell) {
        if (ch == '[' || ch == ']' || ch == '"' || ch == '\'' || ch == ',' || ch == '|') ch = ';';
      }
      std::stringstream ss(cell);
      std::string item;
      while (std::getline(ss, item, ';')) {
        auto label = to_lower(trim(item.substr(0, item.find(':'))));
        if (label.empty() || label == "none") continue;
        if (!is_emotion_label(label)) throw DataError(where + ": unknown emotion '" + label + "'");
        labels.insert(label);
      }
      ex.gold_labels = std::move(labels);
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<StoryExample> load_storycs(const std::filesystem::path& path) {
  return parse_storycs(read_file(path), path.string());
}

std::string story_context(const StoryExample& story) {
  std::string out;
  for (int i = 0; i < story.sentence_index; ++i) {
    if (!out.empty()) out += ' ';
    out += story.sentences[i];
  }
  return out;
}

std::vector<EmotionQuery> emotion_to_qa(const StoryExample& story) {
  const auto context = story_context(story);
  std::vector<EmotionQuery> out;
  for (auto label : kEmotionLabels) out.push_back({context, std::string(label)});
  return out;
}

std::array<bool, 8> gold_vector(const std::set<std::string>& labels) {
  std::array<bool, 8> out{};
  for (std::size_t i = 0; i < kEmotionLabels.size(); ++i) {
    out[i] = labels.contains(std::string(kEmotionLabels[i]));
  }
  return out;
}

std::string Anonymizer::operator()(std::string_view text) {
  static constexpr std::array<std::string_view, 3> kPlaceholders = {"PersonX", "PersonY",
                                                                    "PersonZ"};
  // Word spans: maximal runs of letters.
  std::vector<std::pair<std::size_t, std::size_t>> words;
  for (std::size_t i = 0; i < text.size();) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_char(text[j])) ++j;
    words.emplace_back(i, j);
    i = j;
  }
  for (auto [b, e] : words) {
    auto word = text.substr(b, e - b);
    if (std::find(kPlaceholders.begin(), kPlaceholders.end(), word) != kPlaceholders.end()) {
      taken_.emplace(word);
    }
  }
  std::string out;
  std::size_t copied = 0;
  for (std::size_t w = 0; w < words.size();) {
    // Longest run of up to three space-separated capitalized words that forms a name.
    std::size_t matched = 0;
    for (std::size_t len = std::min<std::size_t>(3, words.size() - w); len >= 1; --len) {
      bool contiguous = true;
      for (std::size_t k = w; k + 1 < w + len; ++k) {
        if (words[k + 1].first != words[k].second + 1 || text[words[k].second] != ' ') contiguous = false;
      }
      if (!contiguous) continue;
      auto span = text.substr(words[w].first, words[w + len - 1].second - words[w].first);
      if (std::isupper(static_cast<unsigned char>(span.front())) && lexicon::is_first_name(span)) {
        matched = len;
        break;
      }
    }
    if (matched == 0) {
      ++w;
      continue;
    }
    const auto begin = words[w].first;
    const auto end = words[w + matched - 1].second;
    std::string name(text.substr(begin, end - begin));
    auto it = mapping_.find(name);
    if (it == mapping_.end()) {
      for (auto p : kPlaceholders) {
        if (taken_.insert(std::string(p)).second) {
          it = mapping_.emplace(name, std::string(p)).first;
          break;
        }
      }
    }
    if (it != mapping_.end()) {
      out.append(text.substr(copied, begin - copied));
      out += it->second;
      copied = end;
    }
    w += matched;
  }
  out.append(text.substr(copied));
  return out;
}

std::string anonymize(std::string_view text) {
  Anonymizer a;
  return a(text);
}

}  // namespace kgqa

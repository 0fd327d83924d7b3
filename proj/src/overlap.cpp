#include "kgqa/overlap.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>

#include "kgqa/errors.hpp"
#include "kgqa/lexicons.hpp"
#include "kgqa/stemmer.hpp"
#include "kgqa/token.hpp"

namespace kgqa {
namespace {

bool is_placeholder(std::string_view w) {
  return w == "personx" || w == "persony" || w == "personz" || w == "___";
}

bool has_letter_or_digit(std::string_view w) {
  return std::any_of(w.begin(), w.end(),
                     [](unsigned char c) { return std::isalnum(c) != 0; });
}

}  // namespace

std::set<std::string> normalize_for_overlap(std::string_view text) {
  std::set<std::string> out;
  for (const auto& tok : tokenize(text)) {
    if (is_punctuation_token(tok)) continue;
    auto w = to_lower(tok);
    // Possessives: "personx's" -> "personx".
    if (w.size() > 2 && w.ends_with("'s")) w.resize(w.size() - 2);
    if (is_placeholder(w) || !has_letter_or_digit(w) || lexicon::is_stopword(w)) continue;
    if (auto base = lexicon::irregular_base(w)) w = std::string(*base);
    out.insert(porter_stem(w));
  }
  return out;
}

std::vector<KnowledgeTriple> load_knowledge_triples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<KnowledgeTriple> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected head<TAB>relation<TAB>tail");
    }
    auto t3 = line.find('\t', t2 + 1);
    out.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                   line.substr(t2 + 1, t3 == std::string::npos ? t3 : t3 - t2 - 1)});
  }
  return out;
}

KnowledgeIndex index_triples(const std::vector<KnowledgeTriple>& triples) {
  KnowledgeIndex index;
  for (const auto& t : triples) {
    auto [it, inserted] = index.tails.try_emplace(t.head);
    if (inserted) index.events.push_back(t.head);
    if (to_lower(t.tail) != "none") it->second.push_back(t.tail);
  }
  return index;
}

OverlapReport detect_overlap(const std::vector<std::string>& contexts,
                             const std::vector<std::string>& kb_events,
                             const std::map<std::string, std::vector<std::string>>& kb_tails,
                             const std::vector<std::vector<std::string>>& answers) {
  if (!answers.empty() && answers.size() != contexts.size()) {
    throw std::invalid_argument("detect_overlap: answers must align with contexts");
  }
  struct Event {
    std::size_t index;
    std::set<std::string> words;
  };
  // Each event is filed under its smallest word; a subset of a context always
  // has that word in the context, so only those buckets need checking.
  std::vector<Event> events;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_word;
  for (std::size_t i = 0; i < kb_events.size(); ++i) {
    auto words = normalize_for_overlap(kb_events[i]);
    if (words.empty()) continue;
    by_first_word[*words.begin()].push_back(events.size());
    events.push_back({i, std::move(words)});
  }

  OverlapReport report;
  report.examples = contexts.size();
  report.matched_events.resize(contexts.size());
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const auto ctx = normalize_for_overlap(contexts[c]);
    std::vector<std::set<std::string>> answer_sets;
    if (!answers.empty()) {
      for (const auto& a : answers[c]) answer_sets.push_back(normalize_for_overlap(a));
    }
    std::vector<std::size_t> hits;
    for (const auto& word : ctx) {
      auto bucket = by_first_word.find(word);
      if (bucket == by_first_word.end()) continue;
      for (auto e : bucket->second) {
        const auto& ev = events[e].words;
        if (std::includes(ctx.begin(), ctx.end(), ev.begin(), ev.end())) hits.push_back(e);
      }
    }
    std::sort(hits.begin(), hits.end());
    bool tail_present = false;
    for (auto e : hits) {
      const auto& name = kb_events[events[e].index];
      report.matched_events[c].push_back(name);
      auto tails = kb_tails.find(name);
      if (tail_present || tails == kb_tails.end()) continue;
      for (const auto& tail : tails->second) {
        if (to_lower(tail) == "none") continue;
        auto tw = normalize_for_overlap(tail);
        if (tw.empty()) continue;
        for (const auto& as : answer_sets) {
          if (std::includes(as.begin(), as.end(), tw.begin(), tw.end())) tail_present = true;
        }
      }
    }
    if (!hits.empty()) ++report.context_matches;
    if (tail_present) {
      ++report.flagged;
      report.flagged_indices.push_back(c);
    }
  }
  return report;
}

}  // namespace kgqa

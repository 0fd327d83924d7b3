#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kgqa {

// Lower-cased, stopword-free, stemmed word set. Irregular verb forms are
// reduced to their base before stemming (went -> go). Punctuation, blanks
// ("___") and the PersonX/PersonY/PersonZ placeholders are dropped.
std::set<std::string> normalize_for_overlap(std::string_view text);

struct KnowledgeTriple {
  std::string head;
  std::string relation;
  std::string tail;
};

// Tab-separated head, relation, tail per line. Lines with fewer than three
// fields throw DataError; blank lines are skipped.
std::vector<KnowledgeTriple> load_knowledge_triples(const std::filesystem::path& path);

struct KnowledgeIndex {
  std::vector<std::string> events;                            // unique heads, file order
  std::map<std::string, std::vector<std::string>> tails;      // head -> tails
};
KnowledgeIndex index_triples(const std::vector<KnowledgeTriple>& triples);

struct OverlapReport {
  std::size_t examples = 0;
  std::size_t context_matches = 0;  // examples with at least one matching event
  std::size_t flagged = 0;          // ... whose event also has a tail in the answers
  std::vector<std::size_t> flagged_indices;
  std::vector<std::vector<std::string>> matched_events;  // per example
  double rate() const { return examples == 0 ? 0.0 : static_cast<double>(flagged) / examples; }
};

// An event matches a context when its normalized word set is a non-empty
// subset of the context's. A matched example is flagged when one of the
// event's tails, normalized the same way, is a subset of one of the
// example's answers.
OverlapReport detect_overlap(const std::vector<std::string>& contexts,
                             const std::vector<std::string>& kb_events,
                             const std::map<std::string, std::vector<std::string>>& kb_tails,
                             const std::vector<std::vector<std::string>>& answers);

}  // namespace kgqa

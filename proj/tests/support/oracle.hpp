#pragma once

// Reference computations for tests. Everything here works from the raw table
// specification with linear scans and long double arithmetic, sharing no code
// with the engine beyond tokenize() and the spec struct itself.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgqa/inference.hpp"
#include "kgqa/relation.hpp"
#include "kgqa/table_model.hpp"

namespace kgqa::oracle {

struct RandomSpecOptions {
  int filler_words = 8;  // vocabulary = 6 core words + fillers (<= 14)
  int max_order = 2;
  double smoothing = -1.0;  // < 0: pick at random, sometimes 0
  int levels = 2;
  std::vector<Relation> relations{Relation::xWant, Relation::xReact};
  int max_length = 6;
};

// Root context drawn from the core words and the given number of fillers.
std::string random_root(std::uint64_t seed, int filler_words = 8);
std::vector<std::string> random_answers(std::uint64_t seed, int count, int filler_words = 8);

// Random table model whose rules cover the contexts greedy decoding reaches
// from `root` within options.levels hops, plus scoring rules for those nodes.
TableModelSpec random_spec(std::uint64_t seed, const std::string& root,
                           const RandomSpecOptions& options);

std::string scoring_prefix(Relation relation);

struct Sequence {
  TokenSeq tokens;         // end token excluded
  long double sum = 0;     // log-probabilities of `tokens`
  long double total = 0;   // plus the end token when finished
  bool finished = false;
  double avg() const { return static_cast<double>(sum / static_cast<long double>(tokens.size())); }
};

struct Path {
  int level = 0;
  TokenSeq tokens;  // inference tokens, or the root context at level 0
  Relation relation = Relation::xWant;
  long double path_score = 0;
};

struct Scores {
  std::vector<std::vector<double>> per_level;  // [answer][level]; -inf when empty
  std::vector<std::vector<bool>> present;
  std::vector<double> totals;
  int chosen = 0;
};

class Oracle {
 public:
  explicit Oracle(TableModelSpec spec);

  long double logprob(const TokenSeq& context, std::optional<Relation> relation,
                      const TokenSeq& prefix, const Token& token) const;

  Sequence greedy(const TokenSeq& context, Relation relation, int max_length) const;

  // Every complete sequence with non-zero probability, best total first, ties
  // by tokens with the end token appended when finished. The end token is
  // never first.
  std::vector<Sequence> enumerate(const TokenSeq& context, Relation relation, int max_length) const;

  // Greedy inference tree without pruning, root first.
  std::vector<Path> greedy_paths(const std::string& root, const std::vector<Relation>& relations,
                                 int levels, int max_length) const;

  long double factor(const TokenSeq& scoring_context, Relation relation, const TokenSeq& answer,
                     bool pmi) const;

  Scores answer_scores(const std::vector<Path>& paths, const std::vector<std::string>& answers,
                       Relation question_relation, int levels, const AggregationConfig& config,
                       bool pmi) const;

  const TableModelSpec& spec() const { return spec_; }

 private:
  struct Rule {
    TokenSeq context;
    std::optional<Relation> relation;
    TokenSeq prefix;
    const std::map<Token, double>* logprobs;
  };
  TableModelSpec spec_;
  std::vector<Rule> rules_;
  std::vector<Token> sorted_vocab_;
};

}  // namespace kgqa::oracle

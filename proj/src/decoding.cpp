#include "kgqa/decoding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "kgqa/errors.hpp"

namespace kgqa {
namespace {

Generation make_generation(TokenSeq tokens, double sum, Relation relation) {
  Generation g;
  g.avg_logprob = sum / static_cast<double>(tokens.size());
  g.sum_logprob = sum;
  g.tokens = std::move(tokens);
  g.relation = relation;
  return g;
}

// Distribution for the next step; the end token is masked at step zero.
TokenDistribution step_distribution(const KnowledgeModel& model, std::span<const Token> context,
                                    Relation relation, const TokenSeq& prefix) {
  ConditionalQuery q{TokenSeq(context.begin(), context.end()), relation, prefix};
  auto dist = model.next_token_logprobs(q);
  if (!prefix.empty()) return dist;
  if (dist.empty()) throw DecodeError("empty vocabulary");
  dist = dist.without(model.end_token());
  bool any_finite = std::any_of(dist.entries().begin(), dist.entries().end(),
                                [](const auto& e) { return std::isfinite(e.second); });
  if (!any_finite) throw DecodeError("no token has finite probability at the first step");
  return dist;
}


// Shared left-to-right loop for greedy and sampling.
template <typename Pick>
Generation walk(const KnowledgeModel& model, std::span<const Token> context, Relation relation,
                int max_length, Pick pick) {
  TokenSeq tokens;
  double sum = 0.0;
  for (int step = 0; step < max_length; ++step) {
    auto dist = step_distribution(model, context, relation, tokens);
    auto choice = pick(dist);
    if (!choice || choice->first == model.end_token()) break;
    sum += choice->second;
    tokens.push_back(std::move(choice->first));
  }
  return make_generation(std::move(tokens), sum, relation);
}

struct Hypothesis {
  TokenSeq tokens;
  double sum = 0.0;    // log-probability of `tokens`
  double score = 0.0;  // sum plus the end-token term once finished
  bool finished = false;
};

// Ordering key: score descending, then the emitted sequence (end token
// included) ascending. Matches the greedy tie-break for a common parent.
bool better(const Hypothesis& a, const Hypothesis& b, const Token& end) {
  if (a.score != b.score) return a.score > b.score;
  auto key = [&](const Hypothesis& h) {
    TokenSeq k = h.tokens;
    if (h.finished) k.push_back(end);
    return k;
  };
  return key(a) < key(b);
}

std::vector<Generation> beam_search(const KnowledgeModel& model, std::span<const Token> context,
                                    Relation relation, int width, int max_length) {
  const Token& end = model.end_token();
  auto cmp = [&](const Hypothesis& a, const Hypothesis& b) { return better(a, b, end); };
  std::vector<Hypothesis> live{Hypothesis{}};
  std::vector<Hypothesis> done;
  for (int step = 0; step < max_length && !live.empty(); ++step) {
    std::vector<Hypothesis> candidates;
    for (const auto& h : live) {
      auto dist = step_distribution(model, context, relation, h.tokens);
      for (auto& [tok, lp] : ranked_entries(dist)) {
        Hypothesis next{h.tokens, h.sum, h.score + lp, tok == end};
        if (!next.finished) {
          next.tokens.push_back(tok);
          next.sum += lp;
        }
        candidates.push_back(std::move(next));
      }
    }
    std::sort(candidates.begin(), candidates.end(), cmp);
    if (static_cast<int>(candidates.size()) > width) candidates.resize(width);
    live.clear();
    for (auto& c : candidates) (c.finished ? done : live).push_back(std::move(c));
    if (step + 1 == max_length) {
      for (auto& h : live) {
        h.finished = false;
        done.push_back(std::move(h));
      }
      live.clear();
    }
    if (static_cast<int>(done.size()) >= width && !live.empty()) {
      std::sort(done.begin(), done.end(), cmp);
      if (live.front().score < done[width - 1].score) break;
    }
  }
  std::sort(done.begin(), done.end(), cmp);
  if (static_cast<int>(done.size()) > width) done.resize(width);
  std::vector<Generation> out;
  out.reserve(done.size());
  for (auto& h : done) out.push_back(make_generation(std::move(h.tokens), h.sum, relation));
  return out;
}

}  // namespace

void DecodeStrategy::validate() const {
  if (max_length < 1) throw std::invalid_argument("max_length must be at least 1");
  if (width_or_k < 1) throw std::invalid_argument("beam width / k must be at least 1");
  if (kind == DecodeKind::Greedy && width_or_k != 1) {
    throw std::invalid_argument("greedy decoding has width 1");
  }
}

DecodeStrategy parse_strategy(std::string_view text, std::uint64_t seed) {
  if (text == "greedy") return DecodeStrategy::greedy();
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("decode strategy must be greedy, beam:B or topk:K");
  }
  auto kind = text.substr(0, colon);
  auto num = text.substr(colon + 1);
  int n = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
  if (ec != std::errc{} || ptr != num.data() + num.size() || n < 1) {
    throw std::invalid_argument("bad width in decode strategy '" + std::string(text) + "'");
  }
  if (kind == "beam") return DecodeStrategy::beam(n);
  if (kind == "topk") return DecodeStrategy::top_k(n, seed);
  throw std::invalid_argument("unknown decode strategy '" + std::string(text) + "'");
}

std::string to_string(const DecodeStrategy& s) {
  switch (s.kind) {
    case DecodeKind::Greedy: return "greedy";
    case DecodeKind::Beam: return "beam:" + std::to_string(s.width_or_k);
    case DecodeKind::TopK: return "topk:" + std::to_string(s.width_or_k);
  }
  return "";
}

std::vector<std::pair<Token, double>> ranked_entries(const TokenDistribution& distribution) {
  std::vector<std::pair<Token, double>> out;
  for (const auto& [tok, lp] : distribution.entries()) {
    if (std::isfinite(lp)) out.emplace_back(tok, lp);
  }
  // Entries arrive sorted by token, so a stable sort keeps token order on ties.
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::pair<Token, RngState> sample_topk(const TokenDistribution& distribution, int k,
                                       RngState rng) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  auto ranked = ranked_entries(distribution);
  if (ranked.empty()) throw DecodeError("cannot sample from an empty support");
  if (static_cast<int>(ranked.size()) > k) ranked.resize(k);
  const double top = ranked.front().second;
  std::vector<double> weights;
  double total = 0.0;
  for (const auto& [tok, lp] : ranked) {
    weights.push_back(std::exp(lp - top));
    total += weights.back();
  }
  const double target = rng.uniform() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    cum += weights[i];
    if (target < cum) return {ranked[i].first, rng};
  }
  return {ranked.back().first, rng};
}

std::vector<Generation> decode(const KnowledgeModel& model, std::span<const Token> context,
                               Relation relation, const DecodeStrategy& strategy) {
  strategy.validate();
  using Choice = std::optional<std::pair<Token, double>>;
  switch (strategy.kind) {
    case DecodeKind::Greedy: {
      auto argmax = [](const TokenDistribution& d) -> Choice {
        auto ranked = ranked_entries(d);
        if (ranked.empty()) return std::nullopt;
        return ranked.front();
      };
      return {walk(model, context, relation, strategy.max_length, argmax)};
    }
    case DecodeKind::Beam:
      return beam_search(model, context, relation, strategy.width_or_k, strategy.max_length);
    case DecodeKind::TopK: {
      std::vector<Generation> out;
      for (int i = 0; i < strategy.width_or_k; ++i) {
        RngState rng = stream(strategy.seed, static_cast<std::uint64_t>(i));
        auto sampler = [&](const TokenDistribution& d) -> Choice {
          if (ranked_entries(d).empty()) return std::nullopt;
          auto [tok, next] = sample_topk(d, strategy.width_or_k, rng);
          rng = next;
          return std::pair{tok, d.logprob(tok)};
        };
        out.push_back(walk(model, context, relation, strategy.max_length, sampler));
      }
      return out;
    }
  }
  return {};
}

}  // namespace kgqa

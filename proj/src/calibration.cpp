#include "kgqa/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "kgqa/errors.hpp"
#include "kgqa/json_util.hpp"
#include "kgqa/rng.hpp"
#include "kgqa/scoring.hpp"

namespace kgqa {
namespace {

std::vector<double> sorted_copy(std::span<const double> scores) {
  std::vector<double> v(scores.begin(), scores.end());
  std::sort(v.begin(), v.end());
  return v;
}

double f1_at(std::span<const double> scores, const std::vector<bool>& gold, double kappa) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool p = scores[i] >= kappa;
    if (p && gold[i]) ++tp;
    else if (p) ++fp;
    else if (gold[i]) ++fn;
  }
  const auto denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * tp / static_cast<double>(denom);
}

}  // namespace

ThresholdStrategy parse_threshold_strategy(std::string_view text) {
  ThresholdStrategy s;
  if (text == "cdf-label") return s;
  if (text == "cdf-50") {
    s.kind = ThresholdKind::CDF50;
    return s;
  }
  if (text.starts_with("fewshot:")) {
    s.kind = ThresholdKind::FewShot;
    auto n = text.substr(8);
    std::size_t v = 0;
    for (char c : n) {
      if (c < '0' || c > '9') throw std::invalid_argument("fewshot count must be a positive integer");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    if (n.empty() || v == 0) throw std::invalid_argument("fewshot count must be a positive integer");
    s.fewshot_n = v;
    return s;
  }
  if (text.starts_with("fixed:") && text.size() > 6) {
    s.kind = ThresholdKind::Fixed;
    s.fixed_path = std::string(text.substr(6));
    return s;
  }
  throw std::invalid_argument("unknown threshold strategy '" + std::string(text) +
                              "' (expected cdf-label, cdf-50, fewshot:N or fixed:PATH)");
}

std::string to_string(const ThresholdStrategy& s) {
  switch (s.kind) {
    case ThresholdKind::CDFLabel: return "cdf-label";
    case ThresholdKind::CDF50: return "cdf-50";
    case ThresholdKind::FewShot: return "fewshot:" + std::to_string(s.fewshot_n);
    case ThresholdKind::Fixed: return "fixed:" + s.fixed_path.string();
  }
  return {};
}

double cdf_label_threshold(std::span<const double> scores, double prior) {
  if (scores.empty()) throw std::invalid_argument("cdf_label_threshold: empty score list");
  if (!(prior > 0.0 && prior < 1.0)) throw std::invalid_argument("cdf_label_threshold: prior outside (0, 1)");
  const auto v = sorted_copy(scores);
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0 && v[i] == v[i - 1]) continue;
    // Everything from i on is >= v[i].
    if (static_cast<double>(v.size() - i) <= prior * n) return v[i];
  }
  return std::numeric_limits<double>::infinity();
}

double cdf50_threshold(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("cdf50_threshold: empty score list");
  const auto v = sorted_copy(scores);
  return v[(v.size() - 1) / 2];
}

double best_f1_threshold(std::span<const double> scores, const std::vector<bool>& gold) {
  if (scores.empty() || scores.size() != gold.size()) {
    throw std::invalid_argument("best_f1_threshold: need aligned, non-empty scores and labels");
  }
  auto v = sorted_copy(scores);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<double> candidates;
  candidates.push_back(v.front() - 1.0);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) candidates.push_back(v[i] + (v[i + 1] - v[i]) / 2.0);
  candidates.push_back(v.back() + 1.0);
  double best = candidates.front();
  double best_f1 = -1.0;
  for (double c : candidates) {
    const double f = f1_at(scores, gold, c);
    if (f > best_f1) {
      best_f1 = f;
      best = c;
    }
  }
  return best;
}

std::vector<std::size_t> fewshot_sample(std::size_t total, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  n = std::min(n, total);
  auto rng = stream(seed, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

FewShotResult fewshot_threshold(std::span<const double> scores, const std::vector<bool>& gold,
                                std::size_t n, const std::vector<std::uint64_t>& seeds) {
  if (scores.empty()) throw std::invalid_argument("fewshot_threshold: empty score list");
  if (scores.size() != gold.size()) throw std::invalid_argument("fewshot_threshold: labels misaligned");
  FewShotResult out;
  double sum = 0.0;
  std::size_t used = 0;
  for (auto seed : seeds) {
    std::vector<double> s;
    std::vector<bool> g;
    for (auto i : fewshot_sample(scores.size(), n, seed)) {
      s.push_back(scores[i]);
      g.push_back(gold[i]);
    }
    const auto positives = std::count(g.begin(), g.end(), true);
    if (positives == 0 || positives == static_cast<std::ptrdiff_t>(g.size())) {
      out.per_draw.push_back(std::nullopt);
      continue;
    }
    const double k = best_f1_threshold(s, g);
    out.per_draw.push_back(k);
    sum += k;
    ++used;
  }
  out.kappa = used == 0 ? cdf50_threshold(scores) : sum / static_cast<double>(used);
  return out;
}

std::map<std::string, double> calibrate_thresholds(
    const std::map<std::string, std::vector<double>>& scores, const ThresholdStrategy& strategy,
    const std::map<std::string, double>& priors,
    const std::map<std::string, std::vector<bool>>& gold) {
  std::map<std::string, double> out;
  if (strategy.kind == ThresholdKind::Fixed) {
    auto fixed = load_thresholds(strategy.fixed_path);
    for (const auto& [label, _] : scores) {
      auto it = fixed.find(label);
      if (it == fixed.end()) {
        throw DataError(strategy.fixed_path.string() + ": no threshold for label '" + label + "'");
      }
      out[label] = it->second;
    }
    return out;
  }
  for (const auto& [label, values] : scores) {
    switch (strategy.kind) {
      case ThresholdKind::CDFLabel: {
        auto p = priors.find(label);
        if (p == priors.end()) throw std::invalid_argument("no prior for label '" + label + "'");
        out[label] = cdf_label_threshold(values, p->second);
        break;
      }
      case ThresholdKind::CDF50:
        out[label] = cdf50_threshold(values);
        break;
      case ThresholdKind::FewShot: {
        auto g = gold.find(label);
        if (g == gold.end()) throw std::invalid_argument("no gold labels for label '" + label + "'");
        out[label] = fewshot_threshold(values, g->second, strategy.fewshot_n).kappa;
        break;
      }
      case ThresholdKind::Fixed:
        break;
    }
  }
  return out;
}

std::map<std::string, double> load_thresholds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw DataError(path.string() + ": expected an object of label -> threshold");
  std::map<std::string, double> out;
  for (const auto& [label, value] : j.items()) {
    try {
      out[label] = decode_real(value);
    } catch (const std::exception&) {
      throw DataError(path.string() + ": threshold for '" + label + "' is not a number");
    }
  }
  return out;
}

void save_thresholds(const std::filesystem::path& path, const std::map<std::string, double>& kappas) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  // Emotion labels first in their fixed order, anything else after.
  for (auto label : kEmotionLabels) {
    auto it = kappas.find(std::string(label));
    if (it != kappas.end()) j[it->first] = encode_real(it->second);
  }
  for (const auto& [label, k] : kappas) {
    if (!j.contains(label)) j[label] = encode_real(k);
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace kgqa

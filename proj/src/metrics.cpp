#include "kgqa/metrics.hpp"

#include <stdexcept>

namespace kgqa {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double accuracy(std::span<const int> predicted, std::span<const int> gold) {
  if (predicted.size() != gold.size()) throw std::invalid_argument("accuracy: length mismatch");
  std::size_t hit = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hit += predicted[i] == gold[i];
  return ratio(hit, gold.size());
}

Prf prf(const BinaryCounts& c) {
  Prf out;
  out.counts = c;
  out.precision = ratio(c.tp, c.tp + c.fp);
  out.recall = ratio(c.tp, c.tp + c.fn);
  const double denom = out.precision + out.recall;
  out.f1 = denom == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / denom;
  return out;
}

BinaryCounts count_binary(const std::vector<bool>& predicted, const std::vector<bool>& gold) {
  if (predicted.size() != gold.size()) throw std::invalid_argument("count_binary: length mismatch");
  BinaryCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i] && gold[i]) ++c.tp;
    else if (predicted[i]) ++c.fp;
    else if (gold[i]) ++c.fn;
    else ++c.tn;
  }
  return c;
}

MultiLabelReport multilabel_metrics(const std::vector<std::vector<bool>>& predicted,
                                    const std::vector<std::vector<bool>>& gold,
                                    std::vector<std::string> labels) {
  if (predicted.size() != gold.size()) {
    throw std::invalid_argument("multilabel_metrics: example count mismatch");
  }
  const auto n_labels = labels.size();
  std::vector<BinaryCounts> counts(n_labels);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i].size() != n_labels || gold[i].size() != n_labels) {
      throw std::invalid_argument("multilabel_metrics: label count mismatch");
    }
    for (std::size_t j = 0; j < n_labels; ++j) {
      auto& c = counts[j];
      const bool p = predicted[i][j], g = gold[i][j];
      if (p && g) ++c.tp;
      else if (p) ++c.fp;
      else if (g) ++c.fn;
      else ++c.tn;
    }
  }
  MultiLabelReport report;
  report.labels = std::move(labels);
  BinaryCounts pooled;
  for (const auto& c : counts) {
    report.per_label.push_back(prf(c));
    pooled.tp += c.tp;
    pooled.fp += c.fp;
    pooled.fn += c.fn;
    pooled.tn += c.tn;
  }
  report.micro = prf(pooled);
  report.macro.counts = pooled;
  if (n_labels > 0) {
    for (const auto& p : report.per_label) {
      report.macro.precision += p.precision;
      report.macro.recall += p.recall;
      report.macro.f1 += p.f1;
    }
    report.macro.precision /= n_labels;
    report.macro.recall /= n_labels;
    report.macro.f1 /= n_labels;
  }
  return report;
}

nlohmann::ordered_json to_json(const Prf& p) {
  nlohmann::ordered_json j;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  j["tp"] = p.counts.tp;
  j["fp"] = p.counts.fp;
  j["fn"] = p.counts.fn;
  j["tn"] = p.counts.tn;
  return j;
}

nlohmann::ordered_json to_json(const MultiLabelReport& r) {
  nlohmann::ordered_json j;
  j["micro"] = to_json(r.micro);
  auto macro = to_json(r.macro);
  for (auto key : {"tp", "fp", "fn", "tn"}) macro.erase(key);
  j["macro"] = std::move(macro);
  auto& per = j["per_label"] = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < r.labels.size(); ++i) per[r.labels[i]] = to_json(r.per_label[i]);
  return j;
}

}  // namespace kgqa

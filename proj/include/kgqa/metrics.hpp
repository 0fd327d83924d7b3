#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kgqa {

// Fraction of positions where predicted == gold. 0 for empty input; throws
// std::invalid_argument on a length mismatch.
double accuracy(std::span<const int> predicted, std::span<const int> gold);

struct BinaryCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  BinaryCounts counts;
};

// 0/0 is taken as 0 in every ratio.
Prf prf(const BinaryCounts& counts);
BinaryCounts count_binary(const std::vector<bool>& predicted, const std::vector<bool>& gold);

struct MultiLabelReport {
  std::vector<std::string> labels;
  std::vector<Prf> per_label;
  Prf micro;  // from pooled counts
  Prf macro;  // unweighted mean of per-label P, R and F1; counts are pooled
};

// predicted[i][j] / gold[i][j]: example i, label j.
MultiLabelReport multilabel_metrics(const std::vector<std::vector<bool>>& predicted,
                                    const std::vector<std::vector<bool>>& gold,
                                    std::vector<std::string> labels);

nlohmann::ordered_json to_json(const Prf& p);
nlohmann::ordered_json to_json(const MultiLabelReport& r);

}  // namespace kgqa

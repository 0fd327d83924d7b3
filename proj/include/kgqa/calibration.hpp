#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kgqa {

enum class ThresholdKind { CDFLabel, CDF50, FewShot, Fixed };

struct ThresholdStrategy {
  ThresholdKind kind = ThresholdKind::CDFLabel;
  std::size_t fewshot_n = 0;
  std::filesystem::path fixed_path;
};

// "cdf-label", "cdf-50", "fewshot:N" or "fixed:PATH". Throws
// std::invalid_argument.
ThresholdStrategy parse_threshold_strategy(std::string_view text);
std::string to_string(const ThresholdStrategy& s);

// Smallest observed score s with fraction(scores >= s) <= prior, so that
// predicting score >= kappa marks floor(prior * N) examples positive when
// scores are distinct. +inf when no observed score qualifies. Throws
// std::invalid_argument for empty scores or a prior outside (0, 1).
double cdf_label_threshold(std::span<const double> scores, double prior);

// Lower median. Throws std::invalid_argument for empty scores.
double cdf50_threshold(std::span<const double> scores);

// Threshold maximizing F1 on the given labelled scores. Candidates are the
// midpoints between consecutive distinct scores plus one below the minimum
// and one above the maximum; ties go to the smallest threshold.
double best_f1_threshold(std::span<const double> scores, const std::vector<bool>& gold);

// Sample of n example indices (without replacement, n clamped to `total`)
// for one few-shot draw.
std::vector<std::size_t> fewshot_sample(std::size_t total, std::size_t n, std::uint64_t seed);

inline const std::vector<std::uint64_t> kFewShotSeeds = {1, 2, 3, 4, 5};

struct FewShotResult {
  double kappa = 0.0;
  // Per seed; empty when the draw held only positives or only negatives and
  // was left out of the average.
  std::vector<std::optional<double>> per_draw;
};

// Best-F1 threshold on each seeded draw of n examples, averaged over the
// informative draws. Falls back to the lower median of all scores when no
// draw is informative.
FewShotResult fewshot_threshold(std::span<const double> scores, const std::vector<bool>& gold,
                                std::size_t n, const std::vector<std::uint64_t>& seeds = kFewShotSeeds);

// Per-label calibration. `priors` is required for CDFLabel and `gold` for
// FewShot (both keyed by label, gold aligned with scores). Fixed loads a JSON
// object {label: kappa} and requires every label of `scores`.
std::map<std::string, double> calibrate_thresholds(
    const std::map<std::string, std::vector<double>>& scores, const ThresholdStrategy& strategy,
    const std::map<std::string, double>& priors = {},
    const std::map<std::string, std::vector<bool>>& gold = {});

std::map<std::string, double> load_thresholds(const std::filesystem::path& path);
void save_thresholds(const std::filesystem::path& path, const std::map<std::string, double>& kappas);

}  // namespace kgqa

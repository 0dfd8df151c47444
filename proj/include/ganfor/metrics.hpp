#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace ganfor {

// Exact integer confusion counts; rates are derived on demand and rounded
// only for display. Positive = real (label 1).
struct Metrics {
  long long tp = 0, tn = 0, fp = 0, fn = 0;

  long long positives() const { return tp + fn; }
  long long negatives() const { return tn + fp; }
  long long total() const { return tp + tn + fp + fn; }

  double acc_percent() const;
  double tpr_percent() const;
  double tnr_percent() const;
};

// scores in [0,1], labels in {0,1}; predicted real iff score > threshold.
Metrics compute_metrics(std::span<const float> scores, std::span<const int> labels,
                        double threshold = 0.5);

// Percentage num/den*100 rounded half-up to 2 decimals, computed in
// integer arithmetic (locale-independent, no float rounding).
std::string format_percent_2dp(long long num, long long den);

// Shortest round-trip decimal form of a double (machine-readable files).
std::string format_full(double v);

}  // namespace ganfor

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ganfor/evaluate.hpp"
#include "ganfor/metrics.hpp"

namespace ganfor {

struct ReportRow {
  int no = 0;
  std::string detector;
  std::string test_set;
  std::optional<Metrics> metrics;  // empty = gap (missing detector)
};

struct EvalReport {
  std::vector<ReportRow> rows;
};

struct DetectorEntry {
  std::string id;
  Discriminator<float>* model = nullptr;  // nullptr = gap
};

// Rows grouped by test set (all detectors on set 1, then set 2, ...), rows
// numbered from 1. The real half shared across test sets makes each
// detector's TPR constant down its rows.
EvalReport generalization_report(const std::vector<DetectorEntry>& detectors,
                                 const std::vector<std::pair<std::string, const Manifest*>>& test_sets,
                                 int batch_size = 64, int threads = 1);

// Machine form: TSV with full-precision rates plus raw counts.
std::string report_to_tsv(const EvalReport& report);
// Human form: fixed-width table, 2-decimal half-up percentages.
std::string report_to_table(const EvalReport& report);

}  // namespace ganfor

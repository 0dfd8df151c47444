#include "ganfor/report.hpp"

#include <algorithm>
#include <array>

namespace ganfor {

EvalReport generalization_report(const std::vector<DetectorEntry>& detectors,
                                 const std::vector<std::pair<std::string, const Manifest*>>& test_sets,
                                 int batch_size, int threads) {
  require(!detectors.empty(), "config.value", "report needs at least one detector");
  require(!test_sets.empty(), "config.value", "report needs at least one test set");

  EvalReport report;
  int no = 1;
  for (const auto& [set_name, manifest] : test_sets) {
    require(manifest != nullptr, "config.value", "null test set manifest");
    for (const auto& det : detectors) {
      ReportRow row;
      row.no = no++;
      row.detector = det.id;
      row.test_set = set_name;
      if (det.model != nullptr)
        row.metrics = evaluate(*det.model, *manifest, batch_size, threads);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string report_to_tsv(const EvalReport& report) {
  std::string out = "no\tdetector\ttesting_set\tacc\ttpr\ttnr\ttp\ttn\tfp\tfn\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.no);
    out += '\t';
    out += row.detector;
    out += '\t';
    out += row.test_set;
    if (row.metrics) {
      const auto& m = *row.metrics;
      out += '\t' + format_full(m.acc_percent());
      out += '\t' + format_full(m.tpr_percent());
      out += '\t' + format_full(m.tnr_percent());
      out += '\t' + std::to_string(m.tp);
      out += '\t' + std::to_string(m.tn);
      out += '\t' + std::to_string(m.fp);
      out += '\t' + std::to_string(m.fn);
    } else {
      out += "\t-\t-\t-\t-\t-\t-\t-";
    }
    out += '\n';
  }
  return out;
}

std::string report_to_table(const EvalReport& report) {
  std::vector<std::array<std::string, 6>> cells;
  cells.push_back({"No.", "Detector", "Testing set", "ACC(%)", "TPR(%)", "TNR(%)"});
  for (const auto& row : report.rows) {
    std::array<std::string, 6> c;
    c[0] = std::to_string(row.no);
    c[1] = row.detector;
    c[2] = row.test_set;
    if (row.metrics) {
      const auto& m = *row.metrics;
      c[3] = format_percent_2dp(m.tp + m.tn, m.total());
      c[4] = format_percent_2dp(m.tp, m.positives());
      c[5] = format_percent_2dp(m.tn, m.negatives());
    } else {
      c[3] = c[4] = c[5] = "-";
    }
    cells.push_back(std::move(c));
  }

  std::array<size_t, 6> width{};
  for (const auto& row : cells)
    for (size_t i = 0; i < 6; ++i) width[i] = std::max(width[i], row[i].size());

  std::string out;
  for (const auto& row : cells) {
    for (size_t i = 0; i < 6; ++i) {
      out += row[i];
      if (i + 1 < 6) out.append(width[i] - row[i].size() + 2, ' ');
    }
    out += '\n';
  }
  return out;
}

}  // namespace ganfor

#include "ganfor/metrics.hpp"

#include <charconv>

#include "ganfor/error.hpp"

namespace ganfor {

double Metrics::acc_percent() const {
  return total() == 0 ? 0.0 : 100.0 * static_cast<double>(tp + tn) / static_cast<double>(total());
}
double Metrics::tpr_percent() const {
  return positives() == 0 ? 0.0
                          : 100.0 * static_cast<double>(tp) / static_cast<double>(positives());
}
double Metrics::tnr_percent() const {
  return negatives() == 0 ? 0.0
                          : 100.0 * static_cast<double>(tn) / static_cast<double>(negatives());
}

Metrics compute_metrics(std::span<const float> scores, std::span<const int> labels,
                        double threshold) {
  require(scores.size() == labels.size(), "config.shape",
          "scores/labels length mismatch: " + std::to_string(scores.size()) + " vs " +
              std::to_string(labels.size()));
  Metrics m;
  for (size_t i = 0; i < scores.size(); ++i) {
    require(labels[i] == 0 || labels[i] == 1, "config.label", "labels must be 0 or 1");
    const bool predicted_real = scores[i] > threshold;
    if (labels[i] == 1)
      predicted_real ? ++m.tp : ++m.fn;
    else
      predicted_real ? ++m.fp : ++m.tn;
  }
  return m;
}

std::string format_percent_2dp(long long num, long long den) {
  require(den > 0 && num >= 0, "config.value", "format_percent_2dp wants num>=0, den>0");
  // hundredths of a percent, half-up
  const long long scaled = (10000 * num + den / 2) / den;
  std::string out = std::to_string(scaled / 100);
  const long long frac = scaled % 100;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

std::string format_full(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace ganfor

#include "nesa/evaluation.hpp"

#include <cmath>
#include <cstdio>

#include "nesa/error.hpp"

namespace nesa {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics class_metrics(std::size_t true_pos, std::size_t false_pos, std::size_t false_neg) {
  ClassMetrics m;
  m.precision = ratio(true_pos, true_pos + false_pos);
  m.recall = ratio(true_pos, true_pos + false_neg);
  const double sum = m.precision + m.recall;
  m.f1 = sum == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / sum;
  return m;
}

}  // namespace

ConfusionMatrix confusion_matrix(std::span<const Polarity> predictions, std::span<const Polarity> golds) {
  if (predictions.size() != golds.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(predictions.size()) + " predictions vs " +
                                               std::to_string(golds.size()) + " gold labels");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (!is_binary(predictions[i]) || !is_binary(golds[i])) {
      throw Error(ErrorCode::NonBinaryLabel, "neutral label at position " + std::to_string(i));
    }
    const bool pred_pos = predictions[i] == Polarity::Positive;
    const bool gold_pos = golds[i] == Polarity::Positive;
    if (pred_pos && gold_pos) ++cm.tp;
    else if (pred_pos) ++cm.fp;
    else if (gold_pos) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

MetricsReport metrics_from_confusion(const ConfusionMatrix& cm) {
  MetricsReport r;
  r.confusion = cm;
  r.n_evaluated = cm.total();
  r.positive = class_metrics(cm.tp, cm.fp, cm.fn);
  r.negative = class_metrics(cm.tn, cm.fn, cm.fp);
  r.precision = (r.positive.precision + r.negative.precision) / 2.0;
  r.recall = (r.positive.recall + r.negative.recall) / 2.0;
  r.f1 = (r.positive.f1 + r.negative.f1) / 2.0;
  r.accuracy = ratio(cm.tp + cm.tn, cm.total());
  return r;
}

MetricsReport evaluate(std::span<const Polarity> predictions, std::span<const Polarity> golds) {
  return metrics_from_confusion(confusion_matrix(predictions, golds));
}

std::string format_percent(double fraction) {
  // Tenths of a percent, half-up; the epsilon absorbs binary representation
  // error on exact halves such as 0.6875.
  const double tenths = std::floor(fraction * 1000.0 + 0.5 + 1e-9);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", tenths / 10.0);
  return buf;
}

}  // namespace nesa

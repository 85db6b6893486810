#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "nesa/corpus.hpp"

namespace nesa {

// Positive is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;  // 0 when precision and recall are both 0

  bool operator==(const ClassMetrics&) const = default;
};

// Prec/Rec/F1 are unweighted means over the two classes.
struct MetricsReport {
  ClassMetrics positive;
  ClassMetrics negative;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t n_evaluated = 0;
  ConfusionMatrix confusion;

  bool operator==(const MetricsReport&) const = default;
};

// Throws LengthMismatch, NonBinaryLabel.
ConfusionMatrix confusion_matrix(std::span<const Polarity> predictions, std::span<const Polarity> golds);
MetricsReport metrics_from_confusion(const ConfusionMatrix& cm);
MetricsReport evaluate(std::span<const Polarity> predictions, std::span<const Polarity> golds);

// Percentage rounded half-up to one decimal, e.g. 0.73333 -> "73.3".
std::string format_percent(double fraction);

}  // namespace nesa

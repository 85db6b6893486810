#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nesa/corpus.hpp"

namespace nesa {

using NGram = TokenList;

struct NGramConfig {
  std::vector<int> orders{1};  // non-empty, ascending subset of {1, 2, 3}
  int tf_threshold = 1;

  // Throws InvalidConfig.
  void validate() const;
  // Thresholds above 3 are allowed but fall outside the studied variants.
  bool nonstandard_threshold() const { return tf_threshold > 3; }
  // e.g. "uni+bi+tri, tf>=2"
  std::string describe() const;

  bool operator==(const NGramConfig&) const = default;
};

// The seven non-empty subsets of {1, 2, 3}, up to max_order.
std::vector<std::vector<int>> order_combinations(int max_order);
std::string describe_orders(const std::vector<int>& orders);

// Contiguous n-grams of the given orders, every occurrence, no boundary padding.
std::vector<NGram> extract_ngrams(const TokenList& tokens, std::span<const int> orders);

class FeatureSpace {
 public:
  FeatureSpace() = default;
  // Keys must be unique and sorted (token-wise lexicographic, a prefix first).
  // Throws InvalidModel otherwise.
  FeatureSpace(NGramConfig config, std::vector<NGram> keys);

  std::size_t size() const { return keys_.size(); }
  const std::vector<NGram>& keys() const { return keys_; }
  const NGramConfig& config() const { return config_; }
  std::optional<std::uint32_t> index_of(const NGram& key) const;
  // Lookup by space-joined key.
  std::optional<std::uint32_t> index_of_key(const std::string& key) const;

  bool operator==(const FeatureSpace& other) const { return config_ == other.config_ && keys_ == other.keys_; }

 private:
  NGramConfig config_;
  std::vector<NGram> keys_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Keeps the n-grams whose total occurrence count over the training documents
// reaches the threshold. Throws EmptyTrainingSet.
FeatureSpace build_feature_space(std::span<const TokenList> train_docs, const NGramConfig& config);

// Binary presence: sorted, strictly increasing column indices.
struct FeatureVector {
  std::vector<std::uint32_t> indices;

  bool operator==(const FeatureVector&) const = default;
};

FeatureVector vectorize(const TokenList& tokens, const FeatureSpace& space);

struct LabeledVector {
  FeatureVector features;
  Polarity label = Polarity::Negative;
};

// Bernoulli naive Bayes. Class slot 0 is Positive, slot 1 is Negative.
struct NbModel {
  std::size_t dimension = 0;
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> log_present;
  std::array<std::vector<double>, 2> log_absent;
  std::array<std::size_t, 2> class_docs{};
  std::array<std::vector<std::size_t>, 2> present_docs;

  // Throws InvalidModel when probabilities do not normalize.
  void validate() const;
};

// Add-one smoothing on presence counts: P(f | c) = (n_fc + 1) / (N_c + 2).
// Priors are class frequencies. Throws MissingClass, NonBinaryLabel,
// DimensionMismatch.
NbModel train_nb(std::span<const LabeledVector> examples, std::size_t dimension);
// Rebuilds log tables from stored counts.
NbModel nb_from_counts(std::size_t dimension, std::array<std::size_t, 2> class_docs,
                       std::array<std::vector<std::size_t>, 2> present_docs);

struct NbPrediction {
  Polarity label = Polarity::Negative;
  double posterior_positive = 0.5;
  double posterior_negative = 0.5;
  std::array<double, 2> log_joint{};
};

// Presence and absence terms both count. An exact tie goes to Negative.
NbPrediction predict_nb(const NbModel& model, const FeatureVector& vector);

struct SvmParams {
  double reg = 1e-2;
  int epochs = 50;
  std::uint64_t seed = 42;

  bool operator==(const SvmParams&) const = default;
};

struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  SvmParams params;

  void validate() const;
  bool operator==(const SvmModel&) const = default;
};

// L2-regularized hinge loss, minimized by epoch-wise stochastic subgradient
// steps of size 1/(reg * t). The bias is an always-on feature and is
// regularized with the weights. Example order is reshuffled every epoch from a
// single mt19937_64 stream seeded by params.seed, so identical inputs give a
// bit-identical model. Throws MissingClass, NonBinaryLabel, NonPositiveReg,
// InvalidConfig, DimensionMismatch.
SvmModel train_svm(std::span<const LabeledVector> examples, std::size_t dimension, const SvmParams& params = {});

double svm_margin(const SvmModel& model, const FeatureVector& vector);
// Zero margin goes to Negative.
Polarity predict_svm(const SvmModel& model, const FeatureVector& vector);
// reg/2 * (|w|^2 + b^2) + mean hinge loss.
double svm_objective(const SvmModel& model, std::span<const LabeledVector> examples);

}  // namespace nesa

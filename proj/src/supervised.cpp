#include "nesa/supervised.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "nesa/error.hpp"
#include "nesa/preprocess.hpp"

namespace nesa {

namespace {

constexpr std::size_t kPos = 0;
constexpr std::size_t kNeg = 1;

std::size_t class_slot(Polarity p) {
  if (!is_binary(p)) throw Error(ErrorCode::NonBinaryLabel, "neutral label in a binary training set");
  return p == Polarity::Positive ? kPos : kNeg;
}

void check_indices(const FeatureVector& v, std::size_t dimension) {
  if (!v.indices.empty() && v.indices.back() >= dimension) {
    throw Error(ErrorCode::DimensionMismatch, "feature index " + std::to_string(v.indices.back()) +
                                                  " outside dimension " + std::to_string(dimension));
  }
}

TokenList split_key(const std::string& key) {
  TokenList out;
  std::size_t start = 0;
  while (true) {
    auto sp = key.find(' ', start);
    out.push_back(key.substr(start, sp == std::string::npos ? std::string::npos : sp - start));
    if (sp == std::string::npos) break;
    start = sp + 1;
  }
  return out;
}

template <typename Fn>
void for_each_ngram_key(const TokenList& tokens, std::span<const int> orders, Fn&& fn) {
  std::string key;
  for (int n : orders) {
    const auto len = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + len <= tokens.size(); ++i) {
      key.clear();
      for (std::size_t k = 0; k < len; ++k) {
        if (k) key.push_back(' ');
        key += tokens[i + k];
      }
      fn(key);
    }
  }
}

}  // namespace

void NGramConfig::validate() const {
  if (orders.empty()) throw Error(ErrorCode::InvalidConfig, "n-gram orders must not be empty");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 1 || orders[i] > 3) throw Error(ErrorCode::InvalidConfig, "n-gram order must be 1, 2 or 3");
    if (i && orders[i] <= orders[i - 1]) throw Error(ErrorCode::InvalidConfig, "n-gram orders must be strictly ascending");
  }
  if (tf_threshold < 1) throw Error(ErrorCode::InvalidConfig, "tf_threshold must be >= 1");
}

std::string describe_orders(const std::vector<int>& orders) {
  static const char* kNames[] = {"", "uni", "bi", "tri"};
  std::string out;
  for (int n : orders) {
    if (!out.empty()) out += "+";
    out += (n >= 1 && n <= 3) ? kNames[n] : std::to_string(n);
  }
  return out;
}

std::string NGramConfig::describe() const {
  return describe_orders(orders) + ", tf>=" + std::to_string(tf_threshold);
}

std::vector<std::vector<int>> order_combinations(int max_order) {
  std::vector<std::vector<int>> out;
  const int limit = std::clamp(max_order, 1, 3);
  for (int mask = 1; mask < (1 << limit); ++mask) {
    std::vector<int> combo;
    for (int n = 1; n <= limit; ++n) {
      if (mask & (1 << (n - 1))) combo.push_back(n);
    }
    out.push_back(std::move(combo));
  }
  // Fewer orders first, then lower orders: uni, bi, tri, uni+bi, ...
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<NGram> extract_ngrams(const TokenList& tokens, std::span<const int> orders) {
  std::vector<NGram> out;
  for (int n : orders) {
    const auto len = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + len <= tokens.size(); ++i) {
      out.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i), tokens.begin() + static_cast<std::ptrdiff_t>(i + len));
    }
  }
  return out;
}

FeatureSpace::FeatureSpace(NGramConfig config, std::vector<NGram> keys) : config_(std::move(config)), keys_(std::move(keys)) {
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (i && !(keys_[i - 1] < keys_[i])) throw Error(ErrorCode::InvalidModel, "feature keys must be unique and sorted");
    index_.emplace(join_tokens(keys_[i]), static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> FeatureSpace::index_of(const NGram& key) const { return index_of_key(join_tokens(key)); }

std::optional<std::uint32_t> FeatureSpace::index_of_key(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureSpace build_feature_space(std::span<const TokenList> train_docs, const NGramConfig& config) {
  config.validate();
  if (train_docs.empty()) throw Error(ErrorCode::EmptyTrainingSet, "no training documents");
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& doc : train_docs) {
    for_each_ngram_key(doc, config.orders, [&](const std::string& key) { ++counts[key]; });
  }
  std::vector<NGram> keys;
  for (const auto& [key, count] : counts) {
    if (count >= static_cast<std::size_t>(config.tf_threshold)) keys.push_back(split_key(key));
  }
  std::sort(keys.begin(), keys.end());
  return FeatureSpace(config, std::move(keys));
}

FeatureVector vectorize(const TokenList& tokens, const FeatureSpace& space) {
  FeatureVector v;
  for_each_ngram_key(tokens, space.config().orders, [&](const std::string& k) {
    if (auto idx = space.index_of_key(k)) v.indices.push_back(*idx);
  });
  std::sort(v.indices.begin(), v.indices.end());
  v.indices.erase(std::unique(v.indices.begin(), v.indices.end()), v.indices.end());
  return v;
}

void NbModel::validate() const {
  for (std::size_t c = 0; c < 2; ++c) {
    if (log_present[c].size() != dimension || log_absent[c].size() != dimension) {
      throw Error(ErrorCode::InvalidModel, "naive Bayes tables do not match the dimension");
    }
    for (std::size_t f = 0; f < dimension; ++f) {
      if (std::abs(std::exp(log_present[c][f]) + std::exp(log_absent[c][f]) - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidModel, "presence and absence probabilities do not sum to 1");
      }
    }
  }
  if (std::abs(std::exp(log_prior[kPos]) + std::exp(log_prior[kNeg]) - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidModel, "class priors do not sum to 1");
  }
}

NbModel nb_from_counts(std::size_t dimension, std::array<std::size_t, 2> class_docs,
                       std::array<std::vector<std::size_t>, 2> present_docs) {
  if (class_docs[kPos] == 0) throw Error(ErrorCode::MissingClass, "no positive examples");
  if (class_docs[kNeg] == 0) throw Error(ErrorCode::MissingClass, "no negative examples");
  NbModel m;
  m.dimension = dimension;
  m.class_docs = class_docs;
  m.present_docs = std::move(present_docs);
  const double total = static_cast<double>(class_docs[kPos] + class_docs[kNeg]);
  for (std::size_t c = 0; c < 2; ++c) {
    if (m.present_docs[c].size() != dimension) throw Error(ErrorCode::InvalidModel, "presence counts do not match the dimension");
    m.log_prior[c] = std::log(static_cast<double>(class_docs[c]) / total);
    const double denom = static_cast<double>(class_docs[c]) + 2.0;
    m.log_present[c].resize(dimension);
    m.log_absent[c].resize(dimension);
    for (std::size_t f = 0; f < dimension; ++f) {
      if (m.present_docs[c][f] > class_docs[c]) throw Error(ErrorCode::InvalidModel, "presence count exceeds class size");
      const double p = (static_cast<double>(m.present_docs[c][f]) + 1.0) / denom;
      m.log_present[c][f] = std::log(p);
      m.log_absent[c][f] = std::log1p(-p);
    }
  }
  return m;
}

NbModel train_nb(std::span<const LabeledVector> examples, std::size_t dimension) {
  std::array<std::size_t, 2> class_docs{};
  std::array<std::vector<std::size_t>, 2> present{std::vector<std::size_t>(dimension, 0), std::vector<std::size_t>(dimension, 0)};
  for (const auto& ex : examples) {
    check_indices(ex.features, dimension);
    const auto c = class_slot(ex.label);
    ++class_docs[c];
    for (auto f : ex.features.indices) ++present[c][f];
  }
  return nb_from_counts(dimension, class_docs, std::move(present));
}

NbPrediction predict_nb(const NbModel& model, const FeatureVector& vector) {
  check_indices(vector, model.dimension);
  NbPrediction out;
  // Terms are summed in sorted order so that the same multiset of factors
  // gives the same total for both classes; symmetric evidence then ties exactly.
  std::vector<double> terms(model.dimension + 1);
  for (std::size_t c = 0; c < 2; ++c) {
    terms[0] = model.log_prior[c];
    std::size_t next = 0;
    for (std::size_t f = 0; f < model.dimension; ++f) {
      if (next < vector.indices.size() && vector.indices[next] == f) {
        terms[f + 1] = model.log_present[c][f];
        ++next;
      } else {
        terms[f + 1] = model.log_absent[c][f];
      }
    }
    std::sort(terms.begin(), terms.end());
    out.log_joint[c] = std::accumulate(terms.begin(), terms.end(), 0.0);
  }
  const double lp = out.log_joint[kPos];
  const double ln = out.log_joint[kNeg];
  if (lp > ln) {
    const double r = std::exp(ln - lp);
    out.posterior_positive = 1.0 / (1.0 + r);
    out.posterior_negative = r / (1.0 + r);
    out.label = Polarity::Positive;
  } else {
    const double r = std::exp(lp - ln);
    out.posterior_negative = 1.0 / (1.0 + r);
    out.posterior_positive = r / (1.0 + r);
    out.label = Polarity::Negative;
  }
  return out;
}

void SvmModel::validate() const {
  if (!(params.reg > 0)) throw Error(ErrorCode::InvalidModel, "svm regularization must be positive");
  if (!std::isfinite(bias) || !std::all_of(weights.begin(), weights.end(), [](double w) { return std::isfinite(w); })) {
    throw Error(ErrorCode::InvalidModel, "svm parameters must be finite");
  }
}

SvmModel train_svm(std::span<const LabeledVector> examples, std::size_t dimension, const SvmParams& params) {
  if (!(params.reg > 0) || !std::isfinite(params.reg)) throw Error(ErrorCode::NonPositiveReg, std::to_string(params.reg));
  if (params.epochs < 1) throw Error(ErrorCode::InvalidConfig, "svm epochs must be >= 1");
  std::array<std::size_t, 2> class_docs{};
  std::vector<double> labels;
  labels.reserve(examples.size());
  for (const auto& ex : examples) {
    check_indices(ex.features, dimension);
    const auto c = class_slot(ex.label);
    ++class_docs[c];
    labels.push_back(c == kPos ? 1.0 : -1.0);
  }
  if (class_docs[kPos] == 0) throw Error(ErrorCode::MissingClass, "no positive examples");
  if (class_docs[kNeg] == 0) throw Error(ErrorCode::MissingClass, "no negative examples");

  // w = scale * v; the last slot of v is the bias.
  std::vector<double> v(dimension + 1, 0.0);
  double scale = 1.0;
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(params.seed);
  std::uint64_t t = 0;

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
    for (std::size_t idx : order) {
      ++t;
      const auto& x = examples[idx].features.indices;
      const double y = labels[idx];
      const double eta = 1.0 / (params.reg * static_cast<double>(t));
      double dot = v[dimension];
      for (auto f : x) dot += v[f];
      const double margin = y * scale * dot;

      const double shrink = 1.0 - eta * params.reg;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
      } else {
        scale *= shrink;
      }
      if (margin < 1.0) {
        const double step = eta * y / scale;
        for (auto f : x) v[f] += step;
        v[dimension] += step;
      }
    }
  }

  SvmModel model;
  model.params = params;
  model.weights.resize(dimension);
  for (std::size_t f = 0; f < dimension; ++f) model.weights[f] = scale * v[f];
  model.bias = scale * v[dimension];
  model.validate();
  return model;
}

double svm_margin(const SvmModel& model, const FeatureVector& vector) {
  check_indices(vector, model.weights.size());
  double s = model.bias;
  for (auto f : vector.indices) s += model.weights[f];
  return s;
}

Polarity predict_svm(const SvmModel& model, const FeatureVector& vector) {
  return svm_margin(model, vector) > 0.0 ? Polarity::Positive : Polarity::Negative;
}

double svm_objective(const SvmModel& model, std::span<const LabeledVector> examples) {
  double norm = model.bias * model.bias;
  for (double w : model.weights) norm += w * w;
  double loss = 0.0;
  for (const auto& ex : examples) {
    const double y = class_slot(ex.label) == kPos ? 1.0 : -1.0;
    loss += std::max(0.0, 1.0 - y * svm_margin(model, ex.features));
  }
  return 0.5 * model.params.reg * norm + (examples.empty() ? 0.0 : loss / static_cast<double>(examples.size()));
}

}  // namespace nesa

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nesa/corpus.hpp"
#include "nesa/evaluation.hpp"
#include "nesa/lexicon.hpp"
#include "nesa/model_io.hpp"
#include "nesa/ne_sentiment.hpp"
#include "nesa/supervised.hpp"

namespace nesa {

enum class ModelKind { NaiveBayes, Svm, LexiconSfs, LexiconDp };

std::string_view to_string(ModelKind k);  // "nb", "svm", "lexicon_sfs", "lexicon_dp"
std::optional<ModelKind> parse_model_kind(std::string_view s);
std::string_view display_name(ModelKind k);  // "NB", "SVM", "SFS", "DP"
inline bool is_supervised(ModelKind k) { return k == ModelKind::NaiveBayes || k == ModelKind::Svm; }

struct AblationConfig {
  std::string dataset = "dataset";
  NeScope scope = NeScope::TrainOnly;
  std::vector<ModelKind> models;
  int max_order = 3;
  std::vector<int> thresholds{1, 2, 3};
  std::vector<MatchScheme> lexicon_schemes{MatchScheme::Unigram, MatchScheme::UniBigram};
  TiePolicy sfs_tie = TiePolicy::Negative;
  SvmParams svm;
};

// Binary-labelled documents of one split; neutral documents are skipped.
std::vector<const Document*> binary_docs(const Corpus& corpus, Split split);

// Trains on the binary-labelled training split.
SupervisedArtifact fit_supervised(const Corpus& corpus, ModelKind kind, const NGramConfig& ngrams, const SvmParams& svm);

struct ScoredPrediction {
  std::optional<Polarity> label;  // nullopt: abstained
  double score = 0.0;
};

ScoredPrediction predict_supervised(const SupervisedArtifact& artifact, const TokenList& tokens);
// SFS score is the weight sum; DP score is positive_sum + negative_sum.
ScoredPrediction predict_lexicon(const Lexicon& lexicon, ModelKind kind, MatchScheme scheme, TiePolicy tie,
                                 const TokenList& tokens);

// Abstentions count as errors: they are scored as the opposite of gold.
MetricsReport evaluate_predictions(const std::vector<ScoredPrediction>& predictions,
                                   const std::vector<const Document*>& docs, std::size_t* abstained = nullptr);

struct AblationRow {
  std::string dataset;
  bool nes = false;
  ModelKind model = ModelKind::NaiveBayes;
  std::string features;
  MetricsReport metrics;
  std::size_t abstained = 0;
};

struct AblationReport {
  std::string dataset;
  NeScope scope = NeScope::TrainOnly;
  NeStats ne_stats;
  std::size_t train_docs = 0;
  std::size_t test_docs = 0;
  std::size_t excluded_neutral = 0;
  std::vector<AblationRow> rows;  // NEs=No rows, then NEs=Yes rows, model order preserved

  const AblationRow* find(ModelKind model, bool nes) const;
};

// Runs every model spec on the untagged corpus and on its NE-tagged copy.
// Supervised models sweep all n-gram order combinations up to max_order and all
// thresholds; lexicon models sweep the match schemes. Each condition reports its
// best macro-F1 configuration (earliest in sweep order on ties). The NEs=No arm
// never reads the polarity map. `map_override` replaces the mined map for the
// NEs=Yes arm. `lexicon` may be null when no lexicon model is requested.
AblationReport run_ablation(const Corpus& tokenized, const NeAnnotations& annotations, const Lexicon* lexicon,
                            const AblationConfig& config, const NePolarityMap* map_override = nullptr);

std::string ablation_json(const AblationReport& report);

// Supervised rows in the layout Dataset/NEs/Algorithm/Prec/Rec/F1/Acc and
// lexicon rows in the layout Dataset/NEs/Features/Prec/Rec/F1/Acc.
std::string render_ablation_tables(const AblationReport& report);

}  // namespace nesa

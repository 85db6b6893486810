#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nesa/ablation.hpp"
#include "nesa/corpus.hpp"
#include "nesa/lexicon.hpp"
#include "nesa/ne_sentiment.hpp"
#include "nesa/preprocess.hpp"
#include "nesa/supervised.hpp"

namespace nesa::cli {

namespace fs = std::filesystem;

// A bad invocation or config file; the CLI exits with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

struct AnnotationSource {
  enum class Kind { File, Gazetteer };
  Kind kind = Kind::File;
  fs::path path;
};

struct RunConfig {
  std::string dataset = "dataset";
  fs::path corpus_path;
  CorpusFormat corpus_format = CorpusFormat::Jsonl;
  std::optional<AnnotationSource> annotations;
  NormalizationConfig normalization;
  NeScope ne_scope = NeScope::TrainOnly;
  bool use_nes = false;
  std::vector<fs::path> lexicons;  // merged in order, later wins
  std::vector<ModelKind> models;
  int max_order = 3;
  std::vector<int> thresholds{1, 2, 3};
  std::vector<MatchScheme> lexicon_schemes{MatchScheme::Unigram, MatchScheme::UniBigram};
  std::optional<NGramConfig> ngram;  // fixed configuration for `train`; swept when absent
  TiePolicy sfs_tie = TiePolicy::Negative;
  double svm_reg = 1e-2;
  int svm_epochs = 50;
  std::uint64_t seed = kDefaultSeed;
  fs::path output_dir = "out";

  AblationConfig ablation_config() const;
  SvmParams svm_params() const { return SvmParams{svm_reg, svm_epochs, seed}; }
};

// Relative paths resolve against base_dir. Throws UsageError.
RunConfig parse_run_config(const nlohmann::json& j, const fs::path& base_dir);
RunConfig load_run_config(const fs::path& path);

// Every field, seed included, so the file reproduces the run on its own.
nlohmann::ordered_json to_json(const RunConfig& config);

// Throws UsageError when a referenced input path does not exist.
void validate_paths(const RunConfig& config);

}  // namespace nesa::cli

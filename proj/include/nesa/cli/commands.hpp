#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nesa/cli/run_config.hpp"
#include "nesa/corpus.hpp"
#include "nesa/lexicon.hpp"
#include "nesa/ne_provider.hpp"

namespace nesa::cli {

// Corpus after normalization and tokenization plus its entity mentions.
struct Pipeline {
  Corpus corpus;
  NeAnnotations annotations;
  bool has_annotations = false;
};

Pipeline prepare(const RunConfig& config);
// Untagged merge of the configured lexicons.
Lexicon load_merged_lexicon(const RunConfig& config);

void cmd_ne_polarity(const RunConfig& config, std::ostream& log);
void cmd_tag(const RunConfig& config, std::ostream& log);
void cmd_train(const RunConfig& config, ModelKind kind, std::ostream& log);

struct ClassifyOptions {
  std::optional<std::filesystem::path> model_file;
  std::optional<ModelKind> lexicon_model;
  MatchScheme scheme = MatchScheme::UniBigram;
};
void cmd_classify(const RunConfig& config, const ClassifyOptions& options, std::ostream& log);
void cmd_evaluate(const RunConfig& config, const std::filesystem::path& predictions, std::ostream& log);
void cmd_ablate(const RunConfig& config, std::ostream& log);
void cmd_stats(const RunConfig& config, std::ostream& log);

// Exit status: 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nesa::cli

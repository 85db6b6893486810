#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "nesa/supervised.hpp"

namespace nesa {

// A trained supervised model together with the feature space it was fit on.
struct SupervisedArtifact {
  FeatureSpace space;
  std::variant<NbModel, SvmModel> model;

  std::string_view algorithm() const { return std::holds_alternative<NbModel>(model) ? "nb" : "svm"; }
};

// Self-describing JSON: model type, hyperparameters, seed, feature-space keys
// and parameters. Output is deterministic for a given artifact.
std::string artifact_to_json(const SupervisedArtifact& artifact);

// Re-validates every model invariant. Throws InvalidModel.
SupervisedArtifact artifact_from_json(std::string_view text);
SupervisedArtifact load_artifact(const std::filesystem::path& path);

}  // namespace nesa

#include "nesa/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nesa/error.hpp"

namespace nesa {

using nlohmann::ordered_json;

std::string artifact_to_json(const SupervisedArtifact& artifact) {
  ordered_json j;
  j["format"] = "nesa-model/1";
  j["model"] = std::string(artifact.algorithm());
  const auto& cfg = artifact.space.config();
  j["feature_space"] = {{"orders", cfg.orders}, {"tf_threshold", cfg.tf_threshold}, {"keys", artifact.space.keys()}};

  if (const auto* nb = std::get_if<NbModel>(&artifact.model)) {
    j["hyperparameters"] = {{"variant", "bernoulli"}, {"smoothing", 1}};
    j["parameters"] = {
        {"class_docs", {{"positive", nb->class_docs[0]}, {"negative", nb->class_docs[1]}}},
        {"present_docs", {{"positive", nb->present_docs[0]}, {"negative", nb->present_docs[1]}}},
        {"log_prior", {{"positive", nb->log_prior[0]}, {"negative", nb->log_prior[1]}}},
    };
  } else {
    const auto& svm = std::get<SvmModel>(artifact.model);
    j["hyperparameters"] = {{"reg", svm.params.reg}, {"epochs", svm.params.epochs}, {"seed", svm.params.seed}};
    j["parameters"] = {{"weights", svm.weights}, {"bias", svm.bias}};
  }
  return j.dump(2) + "\n";
}

SupervisedArtifact artifact_from_json(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    if (j.at("format").get<std::string>() != "nesa-model/1") throw Error(ErrorCode::InvalidModel, "unknown model format");

    NGramConfig cfg;
    cfg.orders = j.at("feature_space").at("orders").get<std::vector<int>>();
    cfg.tf_threshold = j.at("feature_space").at("tf_threshold").get<int>();
    try {
      cfg.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidModel, e.what());
    }

    SupervisedArtifact artifact;
    artifact.space = FeatureSpace(cfg, j.at("feature_space").at("keys").get<std::vector<NGram>>());
    for (const auto& key : artifact.space.keys()) {
      if (std::find(cfg.orders.begin(), cfg.orders.end(), static_cast<int>(key.size())) == cfg.orders.end()) {
        throw Error(ErrorCode::InvalidModel, "feature key of an order outside the configuration");
      }
    }
    const auto dim = artifact.space.size();
    const auto& params = j.at("parameters");

    const auto type = j.at("model").get<std::string>();
    if (type == "nb") {
      std::array<std::size_t, 2> class_docs{params.at("class_docs").at("positive").get<std::size_t>(),
                                            params.at("class_docs").at("negative").get<std::size_t>()};
      std::array<std::vector<std::size_t>, 2> present{params.at("present_docs").at("positive").get<std::vector<std::size_t>>(),
                                                      params.at("present_docs").at("negative").get<std::vector<std::size_t>>()};
      NbModel nb;
      try {
        nb = nb_from_counts(dim, class_docs, std::move(present));
      } catch (const Error& e) {
        throw Error(ErrorCode::InvalidModel, e.what());
      }
      nb.validate();
      artifact.model = std::move(nb);
    } else if (type == "svm") {
      SvmModel svm;
      const auto& hp = j.at("hyperparameters");
      svm.params.reg = hp.at("reg").get<double>();
      svm.params.epochs = hp.at("epochs").get<int>();
      svm.params.seed = hp.at("seed").get<std::uint64_t>();
      svm.weights = params.at("weights").get<std::vector<double>>();
      svm.bias = params.at("bias").get<double>();
      if (svm.weights.size() != dim) throw Error(ErrorCode::InvalidModel, "svm weight count does not match the feature space");
      svm.validate();
      artifact.model = std::move(svm);
    } else {
      throw Error(ErrorCode::InvalidModel, "unknown model type '" + type + "'");
    }
    return artifact;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::InvalidModel, e.what());
  }
}

SupervisedArtifact load_artifact(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open model " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return artifact_from_json(buf.str());
}

}  // namespace nesa

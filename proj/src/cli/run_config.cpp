#include "nesa/cli/run_config.hpp"

#include <fstream>

namespace nesa::cli {

using nlohmann::json;
using nlohmann::ordered_json;

AblationConfig RunConfig::ablation_config() const {
  AblationConfig a;
  a.dataset = dataset;
  a.scope = ne_scope;
  a.models = models;
  a.max_order = max_order;
  a.thresholds = thresholds;
  a.lexicon_schemes = lexicon_schemes;
  a.sfs_tie = sfs_tie;
  a.svm = svm_params();
  return a;
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config field '") + key + "' has the wrong type");
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

NormalizationConfig parse_normalization(const json& j) {
  NormalizationConfig n;
  if (!j.is_object()) throw UsageError("normalization must be an object");
  n.remove_urls = get_or(j, "remove_urls", n.remove_urls);
  n.remove_tweet_symbols = get_or(j, "remove_tweet_symbols", n.remove_tweet_symbols);
  n.remove_punctuation = get_or(j, "remove_punctuation", n.remove_punctuation);
  n.hashtag_underscore_to_space = get_or(j, "hashtag_underscore_to_space", n.hashtag_underscore_to_space);
  if (!get_or(j, "collapse_whitespace", true)) throw UsageError("collapse_whitespace cannot be disabled");
  if (j.contains("script_filter")) {
    const auto& sf = j["script_filter"];
    if (sf.is_null()) {
      n.script_filter.reset();
    } else if (sf.is_array()) {
      ScriptFilter filter;
      for (const auto& name : sf) {
        if (!name.is_string()) throw UsageError("script_filter entries must be strings");
        if (name.get<std::string>() == "whitespace") continue;
        auto cls = parse_char_class(name.get<std::string>());
        if (!cls) throw UsageError("unknown script_filter class '" + name.get<std::string>() + "'");
        filter = filter.with(*cls);
      }
      n.script_filter = filter;
    } else {
      throw UsageError("script_filter must be an array of class names or null");
    }
  }
  return n;
}

ordered_json normalization_json(const NormalizationConfig& n) {
  ordered_json j;
  j["remove_urls"] = n.remove_urls;
  j["remove_tweet_symbols"] = n.remove_tweet_symbols;
  j["remove_punctuation"] = n.remove_punctuation;
  if (n.script_filter) {
    auto classes = ordered_json::array();
    for (auto c : {CharClass::ArabicLetters, CharClass::LatinLetters, CharClass::Digits}) {
      if (n.script_filter->keeps(c)) classes.push_back(std::string(to_string(c)));
    }
    classes.push_back("whitespace");
    j["script_filter"] = classes;
  } else {
    j["script_filter"] = nullptr;
  }
  j["hashtag_underscore_to_space"] = n.hashtag_underscore_to_space;
  j["collapse_whitespace"] = true;
  return j;
}

}  // namespace

RunConfig parse_run_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  RunConfig c;
  c.dataset = get_or<std::string>(j, "dataset", c.dataset);

  if (j.contains("corpus")) {
    const auto& corpus = j["corpus"];
    if (!corpus.is_object() || !corpus.contains("path")) throw UsageError("corpus needs a path");
    c.corpus_path = resolve(base_dir, corpus["path"].get<std::string>());
    auto fmt = parse_corpus_format(get_or<std::string>(corpus, "format", "jsonl"));
    if (!fmt) throw UsageError("corpus format must be jsonl or tsv");
    c.corpus_format = *fmt;
  }

  if (j.contains("annotations") && !j["annotations"].is_null()) {
    const auto& a = j["annotations"];
    if (!a.is_object() || !a.contains("path")) throw UsageError("annotations needs a source and a path");
    AnnotationSource src;
    const auto kind = get_or<std::string>(a, "source", "file");
    if (kind == "file") src.kind = AnnotationSource::Kind::File;
    else if (kind == "gazetteer") src.kind = AnnotationSource::Kind::Gazetteer;
    else throw UsageError("annotations source must be file or gazetteer");
    src.path = resolve(base_dir, a["path"].get<std::string>());
    c.annotations = src;
  }

  if (j.contains("normalization")) c.normalization = parse_normalization(j["normalization"]);

  if (auto scope = parse_ne_scope(get_or<std::string>(j, "ne_scope", "train_only"))) c.ne_scope = *scope;
  else throw UsageError("ne_scope must be train_only or all_labeled");
  c.use_nes = get_or(j, "use_nes", c.use_nes);

  for (const auto& p : get_or<std::vector<std::string>>(j, "lexicons", {})) c.lexicons.push_back(resolve(base_dir, p));

  for (const auto& m : get_or<std::vector<std::string>>(j, "models", {})) {
    auto kind = parse_model_kind(m);
    if (!kind) throw UsageError("unknown model spec '" + m + "'");
    c.models.push_back(*kind);
  }

  if (j.contains("ngram_sweep")) {
    const auto& sweep = j["ngram_sweep"];
    c.max_order = get_or(sweep, "max_order", c.max_order);
    c.thresholds = get_or(sweep, "thresholds", c.thresholds);
    if (c.max_order < 1 || c.max_order > 3) throw UsageError("ngram_sweep.max_order must be 1, 2 or 3");
    if (c.thresholds.empty()) throw UsageError("ngram_sweep.thresholds must not be empty");
    for (int t : c.thresholds) {
      if (t < 1) throw UsageError("ngram_sweep thresholds must be >= 1");
    }
  }
  if (j.contains("ngram") && !j["ngram"].is_null()) {
    NGramConfig ng;
    ng.orders = get_or(j["ngram"], "orders", ng.orders);
    ng.tf_threshold = get_or(j["ngram"], "tf_threshold", ng.tf_threshold);
    try {
      ng.validate();
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    c.ngram = ng;
  }
  if (j.contains("lexicon_schemes")) {
    c.lexicon_schemes.clear();
    for (const auto& s : get_or<std::vector<std::string>>(j, "lexicon_schemes", {})) {
      auto scheme = parse_match_scheme(s);
      if (!scheme) throw UsageError("unknown lexicon scheme '" + s + "'");
      c.lexicon_schemes.push_back(*scheme);
    }
    if (c.lexicon_schemes.empty()) throw UsageError("lexicon_schemes must not be empty");
  }
  if (j.contains("tie_policy")) {
    auto tie = parse_tie_policy(get_or<std::string>(j["tie_policy"], "sfs", "negative"));
    if (!tie) throw UsageError("tie_policy.sfs must be negative, positive or abstain");
    c.sfs_tie = *tie;
  }
  if (j.contains("svm")) {
    c.svm_reg = get_or(j["svm"], "reg", c.svm_reg);
    c.svm_epochs = get_or(j["svm"], "epochs", c.svm_epochs);
  }
  c.seed = get_or(j, "seed", c.seed);
  if (j.contains("output_dir")) c.output_dir = resolve(base_dir, j["output_dir"].get<std::string>());
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j, path.parent_path());
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["dataset"] = c.dataset;
  j["corpus"] = {{"path", c.corpus_path.string()}, {"format", c.corpus_format == CorpusFormat::Jsonl ? "jsonl" : "tsv"}};
  if (c.annotations) {
    j["annotations"] = {{"source", c.annotations->kind == AnnotationSource::Kind::File ? "file" : "gazetteer"},
                        {"path", c.annotations->path.string()}};
  } else {
    j["annotations"] = nullptr;
  }
  j["normalization"] = normalization_json(c.normalization);
  j["ne_scope"] = std::string(to_string(c.ne_scope));
  j["use_nes"] = c.use_nes;
  auto lex = ordered_json::array();
  for (const auto& p : c.lexicons) lex.push_back(p.string());
  j["lexicons"] = lex;
  auto models = ordered_json::array();
  for (auto m : c.models) models.push_back(std::string(to_string(m)));
  j["models"] = models;
  j["ngram_sweep"] = {{"max_order", c.max_order}, {"thresholds", c.thresholds}};
  j["ngram"] = c.ngram ? ordered_json{{"orders", c.ngram->orders}, {"tf_threshold", c.ngram->tf_threshold}} : ordered_json(nullptr);
  auto schemes = ordered_json::array();
  for (auto s : c.lexicon_schemes) schemes.push_back(s == MatchScheme::Unigram ? "uni" : "uni_bi");
  j["lexicon_schemes"] = schemes;
  j["tie_policy"] = {{"sfs", std::string(to_string(c.sfs_tie))}, {"dp", "negative"}, {"supervised", "negative"}};
  j["svm"] = {{"reg", c.svm_reg}, {"epochs", c.svm_epochs}};
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir.string();
  return j;
}

void validate_paths(const RunConfig& c) {
  auto need = [](const fs::path& p, const char* what) {
    if (p.empty()) throw UsageError(std::string(what) + " path is not set");
    if (!fs::exists(p)) throw UsageError(std::string(what) + " " + p.string() + " does not exist");
  };
  need(c.corpus_path, "corpus");
  if (c.annotations) need(c.annotations->path, "annotations");
  for (const auto& p : c.lexicons) need(p, "lexicon");
}

}  // namespace nesa::cli

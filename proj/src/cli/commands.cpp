#include "nesa/cli/commands.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nesa/ablation.hpp"
#include "nesa/error.hpp"
#include "nesa/evaluation.hpp"
#include "nesa/model_io.hpp"
#include "nesa/ne_sentiment.hpp"
#include "nesa/preprocess.hpp"

namespace nesa::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

void write_effective_config(const RunConfig& config) {
  write_file(config.output_dir / "effective_config.json", to_json(config).dump(2) + "\n");
}

const NeAnnotations& require_annotations(const Pipeline& p) {
  if (!p.has_annotations) throw UsageError("this command needs an annotations source (file or gazetteer)");
  return p.annotations;
}

// Tags the corpus when the run asks for NEs; a no-op without annotations.
Corpus maybe_tag(const RunConfig& config, const Pipeline& p) {
  if (!config.use_nes) return p.corpus;
  const auto result = detect_ne_polarity(p.corpus, require_annotations(p), config.ne_scope);
  return tag_entities(p.corpus, result.map);
}

std::vector<const Document*> test_docs(const Corpus& corpus) {
  std::vector<const Document*> out;
  for (const auto& d : corpus.docs) {
    if (d.split == Split::Test) out.push_back(&d);
  }
  return out;
}

std::string metrics_table(const std::string& dataset, const std::string& label, const MetricsReport& m) {
  std::ostringstream out;
  out << "Dataset\tModel\tPrec (%)\tRec (%)\tF1 (%)\tAcc (%)\n"
      << dataset << '\t' << label << '\t' << format_percent(m.precision) << '\t' << format_percent(m.recall) << '\t'
      << format_percent(m.f1) << '\t' << format_percent(m.accuracy) << '\n';
  return out.str();
}

}  // namespace

Pipeline prepare(const RunConfig& config) {
  validate_paths(config);
  Pipeline p;
  p.corpus = preprocess_corpus(load_corpus(config.corpus_path, config.corpus_format), config.normalization);
  if (config.annotations) {
    p.has_annotations = true;
    if (config.annotations->kind == AnnotationSource::Kind::File) {
      p.annotations = load_annotations(config.annotations->path, config.normalization);
      resolve_annotations(p.annotations, p.corpus);
    } else {
      p.annotations = gazetteer_match(p.corpus, load_gazetteer(config.annotations->path, config.normalization));
    }
  }
  return p;
}

Lexicon load_merged_lexicon(const RunConfig& config) {
  if (config.lexicons.empty()) throw UsageError("no lexicons configured");
  std::vector<Lexicon> lexicons;
  for (const auto& path : config.lexicons) lexicons.push_back(load_lexicon(path, config.normalization));
  return merge_lexicons(lexicons);
}

void cmd_ne_polarity(const RunConfig& config, std::ostream& log) {
  const auto p = prepare(config);
  const auto result = detect_ne_polarity(p.corpus, require_annotations(p), config.ne_scope);
  std::ostringstream scores;
  write_ne_scores(scores, result);
  write_file(config.output_dir / "ne_polarity.jsonl", scores.str());
  write_file(config.output_dir / "ne_stats.json", ne_stats_json(result.stats, config.ne_scope));
  write_effective_config(config);
  log << "E-NEs " << result.stats.extracted << "  Pos-NEs " << result.stats.positive << "  Neg-NEs "
      << result.stats.negative << "  A-NEs " << result.stats.annotated << '\n';
  if (config.ne_scope == NeScope::AllLabeled) log << "warning: all_labeled scope reads test labels\n";
}

void cmd_tag(const RunConfig& config, std::ostream& log) {
  const auto p = prepare(config);
  const auto result = detect_ne_polarity(p.corpus, require_annotations(p), config.ne_scope);
  auto tagged = tag_entities(p.corpus, result.map);
  for (auto& d : tagged.docs) d.raw_text = join_tokens(d.tokens);
  std::ostringstream out;
  write_corpus(out, tagged, CorpusFormat::Jsonl, true);
  write_file(config.output_dir / "tagged_corpus.jsonl", out.str());
  std::ostringstream scores;
  write_ne_scores(scores, result);
  write_file(config.output_dir / "ne_polarity.jsonl", scores.str());
  write_effective_config(config);
  log << "tagged " << tagged.size() << " documents with " << result.stats.annotated << " polarised entities\n";
}

void cmd_train(const RunConfig& config, ModelKind kind, std::ostream& log) {
  if (!is_supervised(kind)) throw UsageError("train needs a supervised model (nb or svm)");
  const auto p = prepare(config);
  const auto corpus = maybe_tag(config, p);

  NGramConfig chosen;
  if (config.ngram) {
    chosen = *config.ngram;
  } else {
    // Same selection rule as the ablation sweep: best macro-F1 on the test split.
    const auto test = binary_docs(corpus, Split::Test);
    if (test.empty()) throw Error(ErrorCode::EmptyTestSet, "n-gram sweep needs labelled test documents; set \"ngram\" instead");
    double best_f1 = -1.0;
    for (const auto& orders : order_combinations(config.max_order)) {
      for (int threshold : config.thresholds) {
        NGramConfig candidate{orders, threshold};
        const auto artifact = fit_supervised(corpus, kind, candidate, config.svm_params());
        std::vector<ScoredPrediction> preds;
        for (const auto* d : test) preds.push_back(predict_supervised(artifact, d->tokens));
        const auto f1 = evaluate_predictions(preds, test).f1;
        if (f1 > best_f1) {
          best_f1 = f1;
          chosen = candidate;
        }
      }
    }
  }
  if (chosen.nonstandard_threshold()) log << "warning: tf threshold " << chosen.tf_threshold << " is above 3\n";
  const auto artifact = fit_supervised(corpus, kind, chosen, config.svm_params());
  write_file(config.output_dir / "model.json", artifact_to_json(artifact));
  write_effective_config(config);
  log << "model " << to_string(kind) << " n-gram configuration: " << chosen.describe() << " ("
      << artifact.space.size() << " features)\n";
}

void cmd_classify(const RunConfig& config, const ClassifyOptions& options, std::ostream& log) {
  if (options.model_file.has_value() == options.lexicon_model.has_value()) {
    throw UsageError("classify needs exactly one of --model-file or --lexicon-model");
  }
  const auto p = prepare(config);
  const auto corpus = maybe_tag(config, p);
  const auto docs = test_docs(corpus);
  if (docs.empty()) throw Error(ErrorCode::EmptyTestSet, "test split is empty");

  std::vector<ScoredPrediction> preds;
  if (options.model_file) {
    const auto artifact = load_artifact(*options.model_file);
    for (const auto* d : docs) preds.push_back(predict_supervised(artifact, d->tokens));
  } else {
    auto lexicon = load_merged_lexicon(config);
    if (config.use_nes) lexicon = add_ne_tags(lexicon);
    std::optional<DpScorer> dp;
    if (*options.lexicon_model == ModelKind::LexiconDp) dp.emplace(lexicon);
    for (const auto* d : docs) {
      if (dp) {
        const auto r = dp->score(d->tokens, options.scheme);
        preds.push_back({r.polarity, to_double(r.positive_sum + r.negative_sum)});
      } else {
        preds.push_back(predict_lexicon(lexicon, *options.lexicon_model, options.scheme, config.sfs_tie, d->tokens));
      }
    }
  }

  std::string lines;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    ordered_json rec;
    rec["id"] = docs[i]->id;
    rec["predicted"] = preds[i].label ? std::string(to_string(*preds[i].label)) : std::string("abstain");
    rec["score"] = preds[i].score;
    lines += rec.dump() + "\n";
  }
  write_file(config.output_dir / "predictions.jsonl", lines);
  write_effective_config(config);
  log << "wrote " << docs.size() << " predictions\n";
}

void cmd_evaluate(const RunConfig& config, const fs::path& predictions_path, std::ostream& log) {
  validate_paths(config);
  const auto corpus = load_corpus(config.corpus_path, config.corpus_format);
  std::ifstream in(predictions_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open predictions " + predictions_path.string());

  std::map<std::string, std::optional<Polarity>> by_id;
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++record;
    try {
      const auto rec = json::parse(line);
      const auto label = rec.at("predicted").get<std::string>();
      std::optional<Polarity> pol;
      if (label != "abstain") {
        pol = parse_polarity(label);
        if (!pol) throw Error(ErrorCode::BadLabel, label);
      }
      by_id[rec.at("id").get<std::string>()] = pol;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, "prediction record " + std::to_string(record) + ": " + e.what());
    }
  }

  const auto docs = binary_docs(corpus, Split::Test);
  if (docs.empty()) throw Error(ErrorCode::EmptyTestSet, "no labelled test documents");
  std::vector<ScoredPrediction> preds;
  for (const auto* d : docs) {
    auto it = by_id.find(d->id);
    if (it == by_id.end()) throw Error(ErrorCode::LengthMismatch, "no prediction for test document " + d->id);
    preds.push_back({it->second, 0.0});
  }
  std::size_t abstained = 0;
  const auto m = evaluate_predictions(preds, docs, &abstained);

  ordered_json j;
  j["dataset"] = config.dataset;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["accuracy"] = m.accuracy;
  j["n_evaluated"] = m.n_evaluated;
  j["abstained"] = abstained;
  j["excluded_neutral"] = test_docs(corpus).size() - docs.size();
  j["positive"] = {{"precision", m.positive.precision}, {"recall", m.positive.recall}, {"f1", m.positive.f1}};
  j["negative"] = {{"precision", m.negative.precision}, {"recall", m.negative.recall}, {"f1", m.negative.f1}};
  j["confusion"] = {{"tp", m.confusion.tp}, {"fp", m.confusion.fp}, {"tn", m.confusion.tn}, {"fn", m.confusion.fn}};
  write_file(config.output_dir / "metrics.json", j.dump(2) + "\n");
  const auto table = metrics_table(config.dataset, predictions_path.stem().string(), m);
  write_file(config.output_dir / "metrics.txt", table);
  write_effective_config(config);
  log << table;
}

void cmd_ablate(const RunConfig& config, std::ostream& log) {
  if (config.models.empty()) throw UsageError("ablate needs at least one model spec");
  const auto p = prepare(config);
  std::optional<Lexicon> lexicon;
  for (auto m : config.models) {
    if (!is_supervised(m) && !lexicon) lexicon = load_merged_lexicon(config);
  }
  const auto report = run_ablation(p.corpus, p.annotations, lexicon ? &*lexicon : nullptr, config.ablation_config());
  write_file(config.output_dir / "ablation.json", ablation_json(report));
  const auto tables = render_ablation_tables(report);
  write_file(config.output_dir / "ablation.txt", tables);
  if (lexicon) write_file(config.output_dir / "lexicon.json", lexicon_report_json(*lexicon));
  write_effective_config(config);
  log << tables;
}

void cmd_stats(const RunConfig& config, std::ostream& log) {
  const auto p = prepare(config);
  const auto s = split_summary(p.corpus);
  ordered_json j;
  j["dataset"] = config.dataset;
  for (auto split : {Split::Train, Split::Test}) {
    ordered_json row;
    for (auto pol : {Polarity::Positive, Polarity::Negative, Polarity::Neutral}) {
      row[std::string(to_string(pol))] = s.count(split, pol);
    }
    j[std::string(to_string(split))] = row;
  }
  j["total"] = s.total();
  std::ostringstream text;
  text << "Dataset\tTrain positive\tTrain negative\tTest positive\tTest negative\tTotal size\n"
       << config.dataset << '\t' << s.count(Split::Train, Polarity::Positive) << '\t'
       << s.count(Split::Train, Polarity::Negative) << '\t' << s.count(Split::Test, Polarity::Positive) << '\t'
       << s.count(Split::Test, Polarity::Negative) << '\t' << s.total() << '\n';
  const auto neutral = s.count(Split::Train, Polarity::Neutral) + s.count(Split::Test, Polarity::Neutral);
  if (neutral) text << "Neutral documents: " << neutral << '\n';
  if (p.has_annotations) {
    const auto result = detect_ne_polarity(p.corpus, p.annotations, config.ne_scope);
    j["ne_stats"] = {{"E-NEs", result.stats.extracted},
                     {"Pos-NEs", result.stats.positive},
                     {"Neg-NEs", result.stats.negative},
                     {"A-NEs", result.stats.annotated}};
    text << "E-NEs\tPos-NEs\tNeg-NEs\tA-NEs\n"
         << result.stats.extracted << '\t' << result.stats.positive << '\t' << result.stats.negative << '\t'
         << result.stats.annotated << '\n';
  }
  write_file(config.output_dir / "stats.json", j.dump(2) + "\n");
  write_effective_config(config);
  log << text.str();
}

namespace {

struct Overrides {
  std::string config;
  std::string corpus;
  std::string format;
  std::string annotations;
  std::string gazetteer;
  std::vector<std::string> lexicons;
  std::string output_dir;
  std::string scope;
  std::string dataset;
  std::string tie;
  std::optional<std::uint64_t> seed;
  bool nes = false;
  bool no_nes = false;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config, "Run configuration (JSON)");
  sub->add_option("--corpus", o.corpus, "Corpus file");
  sub->add_option("--format", o.format, "Corpus format: jsonl or tsv");
  sub->add_option("--annotations", o.annotations, "NE annotation file (JSONL)");
  sub->add_option("--gazetteer", o.gazetteer, "Gazetteer file");
  sub->add_option("--lexicon", o.lexicons, "Lexicon TSV (repeatable, merged in order)");
  sub->add_option("-o,--output-dir", o.output_dir, "Output directory");
  sub->add_option("--scope", o.scope, "NE scoring scope: train_only or all_labeled");
  sub->add_option("--dataset", o.dataset, "Dataset name used in reports");
  sub->add_option("--tie", o.tie, "SFS tie policy: negative, positive or abstain");
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_flag("--nes", o.nes, "Tag named entities before modelling");
  sub->add_flag("--no-nes", o.no_nes, "Do not tag named entities");
}

RunConfig resolve_config(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (!o.corpus.empty()) c.corpus_path = o.corpus;
  if (!o.format.empty()) {
    auto fmt = parse_corpus_format(o.format);
    if (!fmt) throw UsageError("--format must be jsonl or tsv");
    c.corpus_format = *fmt;
  }
  if (!o.annotations.empty() && !o.gazetteer.empty()) throw UsageError("--annotations and --gazetteer are exclusive");
  if (!o.annotations.empty()) c.annotations = AnnotationSource{AnnotationSource::Kind::File, o.annotations};
  if (!o.gazetteer.empty()) c.annotations = AnnotationSource{AnnotationSource::Kind::Gazetteer, o.gazetteer};
  if (!o.lexicons.empty()) c.lexicons.assign(o.lexicons.begin(), o.lexicons.end());
  if (!o.output_dir.empty()) c.output_dir = o.output_dir;
  if (!o.scope.empty()) {
    auto scope = parse_ne_scope(o.scope);
    if (!scope) throw UsageError("--scope must be train_only or all_labeled");
    c.ne_scope = *scope;
  }
  if (!o.dataset.empty()) c.dataset = o.dataset;
  if (!o.tie.empty()) {
    auto tie = parse_tie_policy(o.tie);
    if (!tie) throw UsageError("--tie must be negative, positive or abstain");
    c.sfs_tie = *tie;
  }
  if (o.seed) c.seed = *o.seed;
  if (o.nes && o.no_nes) throw UsageError("--nes and --no-nes are exclusive");
  if (o.nes) c.use_nes = true;
  if (o.no_nes) c.use_nes = false;
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Named-entity-aware sentiment analysis toolkit", "nesa"};
  app.require_subcommand(1);

  Overrides o;
  auto* ne_polarity = app.add_subcommand("ne-polarity", "Mine entity polarities by majority of attitudes");
  auto* tag = app.add_subcommand("tag", "Replace polarised entities with PosNE/NegNE");
  auto* train = app.add_subcommand("train", "Train a supervised model");
  auto* classify = app.add_subcommand("classify", "Predict the test split");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a predictions file against gold labels");
  auto* ablate = app.add_subcommand("ablate", "Run the with/without-NEs ablation");
  auto* stats = app.add_subcommand("stats", "Split and entity statistics");
  for (auto* sub : {ne_polarity, tag, train, classify, evaluate_cmd, ablate, stats}) add_common(sub, o);

  std::string train_model;
  std::vector<int> orders;
  std::optional<int> threshold;
  train->add_option("--model", train_model, "nb or svm");
  train->add_option("--orders", orders, "Fixed n-gram orders, e.g. --orders 1 2")->expected(1, 3);
  train->add_option("--threshold", threshold, "Fixed TF threshold");

  std::string model_file;
  std::string lexicon_model;
  std::string scheme = "uni_bi";
  classify->add_option("--model-file", model_file, "Trained model JSON");
  classify->add_option("--lexicon-model", lexicon_model, "sfs or dp");
  classify->add_option("--scheme", scheme, "Lexicon lookup: uni or uni_bi");

  std::string predictions;
  evaluate_cmd->add_option("--predictions", predictions, "predictions.jsonl")->required();

  std::vector<std::string> models;
  ablate->add_option("--models", models, "Model specs: nb svm lexicon_sfs lexicon_dp");

  std::vector<std::string> argv_storage{"nesa"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    auto config = resolve_config(o);
    if (ne_polarity->parsed()) {
      cmd_ne_polarity(config, out);
    } else if (tag->parsed()) {
      cmd_tag(config, out);
    } else if (train->parsed()) {
      std::optional<ModelKind> kind;
      if (!train_model.empty()) {
        kind = parse_model_kind(train_model);
      } else {
        for (auto m : config.models) {
          if (is_supervised(m)) {
            kind = m;
            break;
          }
        }
      }
      if (!kind) throw UsageError("train needs --model nb|svm");
      if (!orders.empty() || threshold) {
        NGramConfig ng = config.ngram.value_or(NGramConfig{});
        if (!orders.empty()) ng.orders = orders;
        if (threshold) ng.tf_threshold = *threshold;
        try {
          ng.validate();
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
        config.ngram = ng;
      }
      cmd_train(config, *kind, out);
    } else if (classify->parsed()) {
      ClassifyOptions opts;
      if (!model_file.empty()) opts.model_file = fs::path(model_file);
      if (!lexicon_model.empty()) {
        if (lexicon_model == "sfs") opts.lexicon_model = ModelKind::LexiconSfs;
        else if (lexicon_model == "dp") opts.lexicon_model = ModelKind::LexiconDp;
        else throw UsageError("--lexicon-model must be sfs or dp");
      }
      auto s = parse_match_scheme(scheme);
      if (!s) throw UsageError("--scheme must be uni or uni_bi");
      opts.scheme = *s;
      cmd_classify(config, opts, out);
    } else if (evaluate_cmd->parsed()) {
      cmd_evaluate(config, predictions, out);
    } else if (ablate->parsed()) {
      if (!models.empty()) {
        config.models.clear();
        for (const auto& m : models) {
          auto kind = parse_model_kind(m);
          if (!kind) throw UsageError("unknown model spec '" + m + "'");
          config.models.push_back(*kind);
        }
      }
      cmd_ablate(config, out);
    } else if (stats->parsed()) {
      cmd_stats(config, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace nesa::cli

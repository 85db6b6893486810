#include "nesa/ablation.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "nesa/error.hpp"

namespace nesa {

using nlohmann::ordered_json;

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::NaiveBayes: return "nb";
    case ModelKind::Svm: return "svm";
    case ModelKind::LexiconSfs: return "lexicon_sfs";
    case ModelKind::LexiconDp: return "lexicon_dp";
  }
  return "nb";
}

std::optional<ModelKind> parse_model_kind(std::string_view s) {
  if (s == "nb") return ModelKind::NaiveBayes;
  if (s == "svm") return ModelKind::Svm;
  if (s == "lexicon_sfs") return ModelKind::LexiconSfs;
  if (s == "lexicon_dp") return ModelKind::LexiconDp;
  return std::nullopt;
}

std::string_view display_name(ModelKind k) {
  switch (k) {
    case ModelKind::NaiveBayes: return "NB";
    case ModelKind::Svm: return "SVM";
    case ModelKind::LexiconSfs: return "SFS";
    case ModelKind::LexiconDp: return "DP";
  }
  return "";
}

std::vector<const Document*> binary_docs(const Corpus& corpus, Split split) {
  std::vector<const Document*> out;
  for (const auto& doc : corpus.docs) {
    if (doc.split == split && is_binary(doc.gold)) out.push_back(&doc);
  }
  return out;
}

SupervisedArtifact fit_supervised(const Corpus& corpus, ModelKind kind, const NGramConfig& ngrams, const SvmParams& svm) {
  if (!is_supervised(kind)) throw Error(ErrorCode::InvalidConfig, std::string(to_string(kind)) + " is not a supervised model");
  const auto train = binary_docs(corpus, Split::Train);
  std::vector<TokenList> texts;
  texts.reserve(train.size());
  for (const auto* d : train) texts.push_back(d->tokens);

  SupervisedArtifact artifact;
  artifact.space = build_feature_space(texts, ngrams);
  std::vector<LabeledVector> examples;
  examples.reserve(train.size());
  for (const auto* d : train) examples.push_back({vectorize(d->tokens, artifact.space), d->gold});
  if (kind == ModelKind::NaiveBayes) {
    artifact.model = train_nb(examples, artifact.space.size());
  } else {
    artifact.model = train_svm(examples, artifact.space.size(), svm);
  }
  return artifact;
}

ScoredPrediction predict_supervised(const SupervisedArtifact& artifact, const TokenList& tokens) {
  const auto x = vectorize(tokens, artifact.space);
  if (const auto* nb = std::get_if<NbModel>(&artifact.model)) {
    const auto p = predict_nb(*nb, x);
    return {p.label, p.posterior_positive};
  }
  const auto& svm = std::get<SvmModel>(artifact.model);
  const double margin = svm_margin(svm, x);
  return {margin > 0.0 ? Polarity::Positive : Polarity::Negative, margin};
}

ScoredPrediction predict_lexicon(const Lexicon& lexicon, ModelKind kind, MatchScheme scheme, TiePolicy tie,
                                 const TokenList& tokens) {
  if (kind == ModelKind::LexiconSfs) {
    const auto r = sfs_score(tokens, lexicon, scheme, tie);
    return {r.polarity, to_double(r.score)};
  }
  if (kind == ModelKind::LexiconDp) {
    const auto r = dp_score(tokens, lexicon, scheme);
    return {r.polarity, to_double(r.positive_sum + r.negative_sum)};
  }
  throw Error(ErrorCode::InvalidConfig, std::string(to_string(kind)) + " is not a lexicon model");
}

MetricsReport evaluate_predictions(const std::vector<ScoredPrediction>& predictions,
                                   const std::vector<const Document*>& docs, std::size_t* abstained) {
  if (predictions.size() != docs.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(predictions.size()) + " predictions vs " +
                                               std::to_string(docs.size()) + " documents");
  }
  std::vector<Polarity> preds;
  std::vector<Polarity> golds;
  std::size_t n_abstained = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto gold = docs[i]->gold;
    golds.push_back(gold);
    if (predictions[i].label) {
      preds.push_back(*predictions[i].label);
    } else {
      ++n_abstained;
      preds.push_back(gold == Polarity::Positive ? Polarity::Negative : Polarity::Positive);
    }
  }
  if (abstained) *abstained = n_abstained;
  return evaluate(preds, golds);
}

namespace {

struct Candidate {
  std::string features;
  MetricsReport metrics;
  std::size_t abstained = 0;
};

void keep_best(std::optional<Candidate>& best, Candidate c) {
  if (!best || c.metrics.f1 > best->metrics.f1) best = std::move(c);
}

Candidate best_supervised(const Corpus& arm, ModelKind kind, const AblationConfig& cfg,
                          const std::vector<const Document*>& test) {
  std::optional<Candidate> best;
  for (const auto& orders : order_combinations(cfg.max_order)) {
    for (int threshold : cfg.thresholds) {
      NGramConfig ngrams{orders, threshold};
      const auto artifact = fit_supervised(arm, kind, ngrams, cfg.svm);
      std::vector<ScoredPrediction> preds;
      preds.reserve(test.size());
      for (const auto* d : test) preds.push_back(predict_supervised(artifact, d->tokens));
      Candidate c{ngrams.describe(), {}, 0};
      c.metrics = evaluate_predictions(preds, test, &c.abstained);
      keep_best(best, std::move(c));
    }
  }
  return *best;
}

Candidate best_lexicon(const Lexicon& lexicon, ModelKind kind, const AblationConfig& cfg,
                       const std::vector<const Document*>& test) {
  std::optional<Candidate> best;
  std::optional<DpScorer> dp;
  if (kind == ModelKind::LexiconDp) dp.emplace(lexicon);
  for (auto scheme : cfg.lexicon_schemes) {
    std::vector<ScoredPrediction> preds;
    preds.reserve(test.size());
    for (const auto* d : test) {
      if (dp) {
        const auto r = dp->score(d->tokens, scheme);
        preds.push_back({r.polarity, to_double(r.positive_sum + r.negative_sum)});
      } else {
        preds.push_back(predict_lexicon(lexicon, kind, scheme, cfg.sfs_tie, d->tokens));
      }
    }
    Candidate c{std::string(to_string(scheme)) + (kind == ModelKind::LexiconDp ? " (DP)" : ""), {}, 0};
    c.metrics = evaluate_predictions(preds, test, &c.abstained);
    keep_best(best, std::move(c));
  }
  return *best;
}

std::vector<AblationRow> run_arm(const Corpus& arm, const Lexicon* lexicon, const AblationConfig& cfg, bool nes) {
  const auto test = binary_docs(arm, Split::Test);
  std::vector<AblationRow> rows;
  for (auto kind : cfg.models) {
    Candidate c;
    if (is_supervised(kind)) {
      c = best_supervised(arm, kind, cfg, test);
    } else {
      if (!lexicon) throw Error(ErrorCode::InvalidConfig, "lexicon model requested without a lexicon");
      c = best_lexicon(*lexicon, kind, cfg, test);
    }
    rows.push_back(AblationRow{cfg.dataset, nes, kind, std::move(c.features), c.metrics, c.abstained});
  }
  return rows;
}

}  // namespace

const AblationRow* AblationReport::find(ModelKind model, bool nes) const {
  for (const auto& r : rows) {
    if (r.model == model && r.nes == nes) return &r;
  }
  return nullptr;
}

AblationReport run_ablation(const Corpus& tokenized, const NeAnnotations& annotations, const Lexicon* lexicon,
                            const AblationConfig& config, const NePolarityMap* map_override) {
  if (config.models.empty()) throw Error(ErrorCode::InvalidConfig, "no model specs");
  if (config.thresholds.empty() || config.lexicon_schemes.empty()) throw Error(ErrorCode::InvalidConfig, "empty sweep");
  if (binary_docs(tokenized, Split::Train).empty()) throw Error(ErrorCode::EmptyTrainingSet, "no labelled training documents");
  if (binary_docs(tokenized, Split::Test).empty()) throw Error(ErrorCode::EmptyTestSet, "no labelled test documents");

  AblationReport report;
  report.dataset = config.dataset;
  report.scope = config.scope;
  report.train_docs = binary_docs(tokenized, Split::Train).size();
  report.test_docs = binary_docs(tokenized, Split::Test).size();
  for (const auto& d : tokenized.docs) report.excluded_neutral += !is_binary(d.gold);

  // Baseline arm: untagged corpus, untagged lexicon.
  auto rows = run_arm(tokenized, lexicon, config, false);

  const auto mined = detect_ne_polarity(tokenized, annotations, config.scope);
  report.ne_stats = mined.stats;
  const auto tagged = tag_entities(tokenized, map_override ? *map_override : mined.map);
  std::optional<Lexicon> tagged_lexicon;
  if (lexicon) tagged_lexicon = add_ne_tags(*lexicon);
  auto tagged_rows = run_arm(tagged, tagged_lexicon ? &*tagged_lexicon : nullptr, config, true);

  report.rows = std::move(rows);
  report.rows.insert(report.rows.end(), tagged_rows.begin(), tagged_rows.end());
  return report;
}

namespace {

ordered_json metrics_json(const MetricsReport& m) {
  ordered_json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["accuracy"] = m.accuracy;
  j["n_evaluated"] = m.n_evaluated;
  j["positive"] = {{"precision", m.positive.precision}, {"recall", m.positive.recall}, {"f1", m.positive.f1}};
  j["negative"] = {{"precision", m.negative.precision}, {"recall", m.negative.recall}, {"f1", m.negative.f1}};
  j["confusion"] = {{"tp", m.confusion.tp}, {"fp", m.confusion.fp}, {"tn", m.confusion.tn}, {"fn", m.confusion.fn}};
  return j;
}

}  // namespace

std::string ablation_json(const AblationReport& report) {
  ordered_json j;
  j["dataset"] = report.dataset;
  j["ne_scope"] = std::string(to_string(report.scope));
  j["test_label_leakage"] = report.scope == NeScope::AllLabeled;
  j["train_docs"] = report.train_docs;
  j["test_docs"] = report.test_docs;
  j["excluded_neutral"] = report.excluded_neutral;
  j["ne_stats"] = {{"E-NEs", report.ne_stats.extracted},
                   {"Pos-NEs", report.ne_stats.positive},
                   {"Neg-NEs", report.ne_stats.negative},
                   {"A-NEs", report.ne_stats.annotated}};
  j["averaging"] = "macro";
  auto rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["dataset"] = r.dataset;
    row["nes"] = r.nes ? "Yes" : "No";
    row["model"] = std::string(to_string(r.model));
    row["features"] = r.features;
    row["abstained"] = r.abstained;
    row["metrics"] = metrics_json(r.metrics);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  auto deltas = ordered_json::array();
  std::vector<ModelKind> seen;
  for (const auto& r : report.rows) {
    if (std::find(seen.begin(), seen.end(), r.model) != seen.end()) continue;
    seen.push_back(r.model);
    const auto* no = report.find(r.model, false);
    const auto* yes = report.find(r.model, true);
    if (!no || !yes) continue;
    deltas.push_back({{"model", std::string(to_string(r.model))},
                      {"precision", yes->metrics.precision - no->metrics.precision},
                      {"recall", yes->metrics.recall - no->metrics.recall},
                      {"f1", yes->metrics.f1 - no->metrics.f1},
                      {"accuracy", yes->metrics.accuracy - no->metrics.accuracy}});
  }
  j["deltas"] = std::move(deltas);
  return j.dump(2) + "\n";
}

namespace {

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& body) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : body) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size(), ' ');
    }
    out << line << '\n';
  };
  emit(header);
  for (const auto& row : body) emit(row);
  return out.str();
}

std::vector<std::string> metric_cells(const MetricsReport& m) {
  return {format_percent(m.precision), format_percent(m.recall), format_percent(m.f1), format_percent(m.accuracy)};
}

}  // namespace

std::string render_ablation_tables(const AblationReport& report) {
  std::vector<std::vector<std::string>> supervised;
  std::vector<std::vector<std::string>> lexical;
  std::vector<std::string> selections;
  for (const auto& r : report.rows) {
    std::vector<std::string> row{r.dataset, r.nes ? "Yes" : "No"};
    auto cells = metric_cells(r.metrics);
    if (is_supervised(r.model)) {
      row.emplace_back(display_name(r.model));
      row.insert(row.end(), cells.begin(), cells.end());
      supervised.push_back(std::move(row));
      selections.push_back(std::string(display_name(r.model)) + " NEs=" + (r.nes ? "Yes" : "No") + ": " + r.features);
    } else {
      row.push_back(r.features);
      row.insert(row.end(), cells.begin(), cells.end());
      lexical.push_back(std::move(row));
    }
  }
  std::string out;
  if (!supervised.empty()) {
    out += "Supervised model\n";
    out += render_table({"Dataset", "NEs", "Algorithm", "Prec (%)", "Rec (%)", "F1 (%)", "Acc (%)"}, supervised);
    out += "Selected n-gram configurations:\n";
    for (const auto& s : selections) out += "  " + s + "\n";
    out += "\n";
  }
  if (!lexical.empty()) {
    out += "Lexicon-based model\n";
    out += render_table({"Dataset", "NEs", "Features", "Prec (%)", "Rec (%)", "F1 (%)", "Acc (%)"}, lexical);
    out += "\n";
  }
  out += "Prec, Rec and F1 are macro-averaged over the positive and negative classes.\n";
  if (report.excluded_neutral) out += "Neutral documents excluded from evaluation: " + std::to_string(report.excluded_neutral) + "\n";
  if (report.scope == NeScope::AllLabeled) out += "NE polarities were mined from all labelled documents (test-label leakage).\n";
  return out;
}

}  // namespace nesa

#include "nesa/ne_sentiment.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

#include "nesa/error.hpp"

namespace nesa {

using nlohmann::ordered_json;

std::string_view to_string(NeScope s) { return s == NeScope::TrainOnly ? "train_only" : "all_labeled"; }

std::optional<NeScope> parse_ne_scope(std::string_view s) {
  if (s == "train_only") return NeScope::TrainOnly;
  if (s == "all_labeled") return NeScope::AllLabeled;
  return std::nullopt;
}

namespace {

bool in_scope(const Document& doc, NeScope scope) {
  return scope == NeScope::AllLabeled || doc.split == Split::Train;
}

}  // namespace

NePolarityResult detect_ne_polarity(const Corpus& corpus, const NeAnnotations& annotations, NeScope scope) {
  resolve_annotations(annotations, corpus);

  std::vector<const Document*> docs;
  for (const auto& doc : corpus.docs) {
    if (in_scope(doc, scope)) docs.push_back(&doc);
  }
  if (docs.empty()) throw Error(ErrorCode::EmptyScope, "no documents in scope " + std::string(to_string(scope)));

  // Distinct surfaces; a typed annotation wins over an untyped one, lowest type
  // first, so the choice does not depend on document order.
  std::map<std::string, NamedEntity> entities;
  for (const auto* doc : docs) {
    for (const auto& e : annotations.entities(doc->id)) {
      auto [it, inserted] = entities.emplace(e.key(), e);
      if (!inserted && e.etype && (!it->second.etype || *e.etype < *it->second.etype)) it->second.etype = e.etype;
    }
  }

  NePolarityResult result;
  result.scores.reserve(entities.size());
  for (auto& [key, entity] : entities) {
    NeScore s{entity, 0, 0, 0, 0};
    for (const auto* doc : docs) {
      if (!contains_sequence(doc->tokens, entity.surface)) continue;
      switch (doc->gold) {
        case Polarity::Positive: ++s.pos_mentions; break;
        case Polarity::Negative: ++s.neg_mentions; break;
        case Polarity::Neutral: ++s.neu_mentions; break;
      }
    }
    s.score = static_cast<std::int64_t>(s.pos_mentions) - static_cast<std::int64_t>(s.neg_mentions);
    if (s.score > 0) {
      result.map.assigned.emplace(key, Polarity::Positive);
      ++result.stats.positive;
    } else if (s.score < 0) {
      result.map.assigned.emplace(key, Polarity::Negative);
      ++result.stats.negative;
    } else {
      result.map.unassigned.push_back(key);
    }
    result.scores.push_back(std::move(s));
  }
  result.stats.extracted = entities.size();
  result.stats.annotated = result.stats.positive + result.stats.negative;
  return result;
}

Corpus tag_entities(const Corpus& corpus, const NePolarityMap& map) {
  std::vector<TokenList> surfaces;
  std::vector<std::string_view> tags;
  for (const auto& [key, pol] : map.assigned) {
    surfaces.push_back(tokenize(key));
    tags.push_back(pol == Polarity::Positive ? kPosTag : kNegTag);
  }
  const SurfaceMatcher matcher(std::move(surfaces));

  Corpus out = corpus;
  for (auto& doc : out.docs) {
    const auto spans = matcher.find(doc.tokens);
    if (spans.empty()) continue;
    TokenList tagged;
    std::size_t pos = 0;
    for (const auto& span : spans) {
      tagged.insert(tagged.end(), doc.tokens.begin() + static_cast<std::ptrdiff_t>(pos),
                    doc.tokens.begin() + static_cast<std::ptrdiff_t>(span.begin));
      tagged.emplace_back(tags[span.surface]);
      pos = span.end;
    }
    tagged.insert(tagged.end(), doc.tokens.begin() + static_cast<std::ptrdiff_t>(pos), doc.tokens.end());
    doc.tokens = std::move(tagged);
  }
  return out;
}

void write_ne_scores(std::ostream& out, const NePolarityResult& result) {
  for (const auto& s : result.scores) {
    const auto key = s.entity.key();
    ordered_json rec;
    rec["surface"] = key;
    if (s.entity.etype) rec["type"] = std::string(to_string(*s.entity.etype));
    auto it = result.map.assigned.find(key);
    rec["polarity"] = it == result.map.assigned.end() ? ordered_json(nullptr) : ordered_json(std::string(to_string(it->second)));
    rec["score"] = s.score;
    rec["pos_mentions"] = s.pos_mentions;
    rec["neg_mentions"] = s.neg_mentions;
    rec["neu_mentions"] = s.neu_mentions;
    out << rec.dump() << '\n';
  }
}

std::string ne_stats_json(const NeStats& stats, NeScope scope) {
  ordered_json j;
  j["E-NEs"] = stats.extracted;
  j["Pos-NEs"] = stats.positive;
  j["Neg-NEs"] = stats.negative;
  j["A-NEs"] = stats.annotated;
  j["scope"] = std::string(to_string(scope));
  j["test_label_leakage"] = scope == NeScope::AllLabeled;
  return j.dump(2) + "\n";
}

}  // namespace nesa

#include "nesa/ne_provider.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <set>

#include <json.hpp>

#include "nesa/error.hpp"

namespace nesa {

using nlohmann::json;

std::optional<EntityType> parse_entity_type(std::string_view s) {
  std::string up;
  for (char c : s) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "PER" || up == "PERS" || up == "PERSON") return EntityType::PER;
  if (up == "LOC" || up == "LOCATION") return EntityType::LOC;
  if (up == "ORG" || up == "ORGANIZATION") return EntityType::ORG;
  if (up == "MISC") return EntityType::MISC;
  return std::nullopt;
}

std::string_view to_string(EntityType t) {
  switch (t) {
    case EntityType::PER: return "PER";
    case EntityType::LOC: return "LOC";
    case EntityType::ORG: return "ORG";
    case EntityType::MISC: return "MISC";
  }
  return "MISC";
}

NamedEntity make_entity(std::string_view raw_surface, std::optional<EntityType> etype,
                        const NormalizationConfig& config) {
  NamedEntity entity{tokenize(normalize(raw_surface, config)), etype};
  if (entity.surface.empty()) {
    throw Error(ErrorCode::MalformedRecord, "entity surface '" + std::string(raw_surface) + "' is empty after normalization");
  }
  for (const auto& tok : entity.surface) {
    if (is_reserved_tag(tok)) {
      throw Error(ErrorCode::MalformedRecord, "entity surface '" + std::string(raw_surface) + "' contains reserved token " + tok);
    }
  }
  return entity;
}

bool NeAnnotations::add(const std::string& doc_id, NamedEntity entity) {
  auto& list = by_doc[doc_id];
  auto same = [&](const NamedEntity& e) { return e.surface == entity.surface; };
  if (std::any_of(list.begin(), list.end(), same)) return false;
  list.push_back(std::move(entity));
  return true;
}

const std::vector<NamedEntity>& NeAnnotations::entities(const std::string& doc_id) const {
  static const std::vector<NamedEntity> kNone;
  auto it = by_doc.find(doc_id);
  return it == by_doc.end() ? kNone : it->second;
}

std::size_t NeAnnotations::mention_count() const {
  std::size_t n = 0;
  for (const auto& [_, list] : by_doc) n += list.size();
  return n;
}

NeAnnotations parse_annotations(std::istream& in, const NormalizationConfig& config) {
  NeAnnotations out;
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++record;
    const auto where = " (record " + std::to_string(record) + ")";
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::MalformedRecord, std::string("invalid JSON") + where);
    }
    if (!rec.is_object() || !rec.contains("doc_id") || !rec["doc_id"].is_string()) {
      throw Error(ErrorCode::MalformedRecord, "missing doc_id" + where);
    }
    if (!rec.contains("entities") || !rec["entities"].is_array()) {
      throw Error(ErrorCode::MalformedRecord, "missing entities array" + where);
    }
    const auto doc_id = rec["doc_id"].get<std::string>();
    out.by_doc[doc_id];
    for (const auto& ent : rec["entities"]) {
      if (!ent.is_object() || !ent.contains("surface") || !ent["surface"].is_string()) {
        throw Error(ErrorCode::MalformedRecord, "entity without surface" + where);
      }
      std::optional<EntityType> etype;
      if (ent.contains("type") && !ent["type"].is_null()) {
        if (!ent["type"].is_string()) throw Error(ErrorCode::MalformedRecord, "entity type must be a string" + where);
        etype = parse_entity_type(ent["type"].get<std::string>());
        if (!etype) throw Error(ErrorCode::MalformedRecord, "unknown entity type '" + ent["type"].get<std::string>() + "'" + where);
      }
      out.add(doc_id, make_entity(ent["surface"].get<std::string>(), etype, config));
    }
  }
  return out;
}

NeAnnotations load_annotations(const std::filesystem::path& path, const NormalizationConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open annotations " + path.string());
  return parse_annotations(in, config);
}

void resolve_annotations(const NeAnnotations& annotations, const Corpus& corpus) {
  std::set<std::string_view> ids;
  for (const auto& doc : corpus.docs) ids.insert(doc.id);
  for (const auto& [doc_id, _] : annotations.by_doc) {
    if (!ids.count(doc_id)) throw Error(ErrorCode::UnknownDocId, doc_id);
  }
}

std::vector<NamedEntity> parse_gazetteer(std::istream& in, const NormalizationConfig& config) {
  std::vector<NamedEntity> out;
  std::set<TokenList> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (collapse_whitespace(line).empty() || line.front() == '#') continue;
    std::optional<EntityType> etype;
    auto tab = line.find('\t');
    std::string surface = line.substr(0, tab);
    if (tab != std::string::npos) {
      auto type_col = line.substr(tab + 1);
      etype = parse_entity_type(type_col);
      if (!etype) throw Error(ErrorCode::MalformedRecord, "unknown entity type '" + type_col + "' on gazetteer line " + std::to_string(lineno));
    }
    auto entity = make_entity(surface, etype, config);
    if (seen.insert(entity.surface).second) out.push_back(std::move(entity));
  }
  return out;
}

std::vector<NamedEntity> load_gazetteer(const std::filesystem::path& path, const NormalizationConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open gazetteer " + path.string());
  return parse_gazetteer(in, config);
}

SurfaceMatcher::SurfaceMatcher(std::vector<TokenList> surfaces) : surfaces_(std::move(surfaces)) {
  for (std::size_t i = 0; i < surfaces_.size(); ++i) {
    if (!surfaces_[i].empty()) by_first_token_[surfaces_[i].front()].push_back(i);
  }
}

std::vector<Span> SurfaceMatcher::find(const TokenList& tokens) const {
  std::vector<Span> candidates;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    auto it = by_first_token_.find(tokens[pos]);
    if (it == by_first_token_.end()) continue;
    for (std::size_t idx : it->second) {
      const auto& s = surfaces_[idx];
      if (pos + s.size() <= tokens.size() && std::equal(s.begin(), s.end(), tokens.begin() + static_cast<std::ptrdiff_t>(pos))) {
        candidates.push_back(Span{pos, pos + s.size(), idx});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Span& a, const Span& b) {
    const auto la = a.end - a.begin;
    const auto lb = b.end - b.begin;
    if (la != lb) return la > lb;
    return a.begin < b.begin;
  });
  std::vector<bool> taken(tokens.size(), false);
  std::vector<Span> chosen;
  for (const auto& c : candidates) {
    if (std::any_of(taken.begin() + static_cast<std::ptrdiff_t>(c.begin), taken.begin() + static_cast<std::ptrdiff_t>(c.end),
                    [](bool b) { return b; })) {
      continue;
    }
    std::fill(taken.begin() + static_cast<std::ptrdiff_t>(c.begin), taken.begin() + static_cast<std::ptrdiff_t>(c.end), true);
    chosen.push_back(c);
  }
  std::sort(chosen.begin(), chosen.end(), [](const Span& a, const Span& b) { return a.begin < b.begin; });
  return chosen;
}

bool contains_sequence(const TokenList& tokens, const TokenList& needle) {
  if (needle.empty()) return false;
  return std::search(tokens.begin(), tokens.end(), needle.begin(), needle.end()) != tokens.end();
}

NeAnnotations gazetteer_match(const Corpus& corpus, const std::vector<NamedEntity>& gazetteer) {
  if (gazetteer.empty()) throw Error(ErrorCode::EmptyGazetteer, "gazetteer has no entries");
  std::vector<TokenList> surfaces;
  surfaces.reserve(gazetteer.size());
  for (const auto& e : gazetteer) surfaces.push_back(e.surface);
  const SurfaceMatcher matcher(std::move(surfaces));

  NeAnnotations out;
  for (const auto& doc : corpus.docs) {
    out.by_doc[doc.id];
    for (const auto& span : matcher.find(doc.tokens)) out.add(doc.id, gazetteer[span.surface]);
  }
  return out;
}

}  // namespace nesa

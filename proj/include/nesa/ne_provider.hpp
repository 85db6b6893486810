#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nesa/corpus.hpp"
#include "nesa/preprocess.hpp"

namespace nesa {

// Reserved tag tokens. Entity surfaces may not contain them, so tagged text
// can never match an entity again.
inline constexpr std::string_view kPosTag = "PosNE";
inline constexpr std::string_view kNegTag = "NegNE";

inline bool is_reserved_tag(std::string_view token) { return token == kPosTag || token == kNegTag; }

enum class EntityType { PER, LOC, ORG, MISC };

std::optional<EntityType> parse_entity_type(std::string_view s);
std::string_view to_string(EntityType t);

struct NamedEntity {
  TokenList surface;
  std::optional<EntityType> etype;

  // Space-joined surface; tokens carry no whitespace so this is unambiguous.
  std::string key() const { return join_tokens(surface); }

  bool operator==(const NamedEntity&) const = default;
};

// Normalizes and tokenizes a raw surface. Throws MalformedRecord when nothing
// survives normalization or a reserved tag token appears.
NamedEntity make_entity(std::string_view raw_surface, std::optional<EntityType> etype,
                        const NormalizationConfig& config = {});

struct NeAnnotations {
  std::map<std::string, std::vector<NamedEntity>> by_doc;

  // Returns false when the doc already holds an entity with the same surface.
  bool add(const std::string& doc_id, NamedEntity entity);
  const std::vector<NamedEntity>& entities(const std::string& doc_id) const;
  std::size_t mention_count() const;

  bool operator==(const NeAnnotations&) const = default;
};

// JSONL records {"doc_id": str, "entities": [{"surface": str, "type": str?}]}.
// Records for the same doc_id accumulate.
NeAnnotations load_annotations(const std::filesystem::path& path, const NormalizationConfig& config = {});
NeAnnotations parse_annotations(std::istream& in, const NormalizationConfig& config = {});

// Throws UnknownDocId if an annotated doc_id is absent from the corpus.
void resolve_annotations(const NeAnnotations& annotations, const Corpus& corpus);

// One surface per line, optional tab-separated type column. Blank lines and
// '#'-prefixed lines are skipped; repeated surfaces collapse to the first.
std::vector<NamedEntity> load_gazetteer(const std::filesystem::path& path, const NormalizationConfig& config = {});
std::vector<NamedEntity> parse_gazetteer(std::istream& in, const NormalizationConfig& config = {});

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  std::size_t surface = 0;

  bool operator==(const Span&) const = default;
};

// Finds non-overlapping occurrences of a fixed set of surfaces. Candidates are
// accepted longest first, then leftmost, so adding a surface never displaces a
// strictly longer match.
class SurfaceMatcher {
 public:
  explicit SurfaceMatcher(std::vector<TokenList> surfaces);

  // Selected spans in document order.
  std::vector<Span> find(const TokenList& tokens) const;

  const TokenList& surface(std::size_t i) const { return surfaces_[i]; }
  std::size_t size() const { return surfaces_.size(); }

 private:
  std::vector<TokenList> surfaces_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_token_;
};

bool contains_sequence(const TokenList& tokens, const TokenList& needle);

// Requires a tokenized corpus. Every document gets an entry, possibly empty.
NeAnnotations gazetteer_match(const Corpus& corpus, const std::vector<NamedEntity>& gazetteer);

}  // namespace nesa

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nesa/corpus.hpp"
#include "nesa/ne_provider.hpp"

namespace nesa {

enum class NeScope { TrainOnly, AllLabeled };

std::string_view to_string(NeScope s);
std::optional<NeScope> parse_ne_scope(std::string_view s);

struct NeScore {
  NamedEntity entity;
  std::int64_t score = 0;  // pos_mentions - neg_mentions
  std::size_t pos_mentions = 0;
  std::size_t neg_mentions = 0;
  std::size_t neu_mentions = 0;

  bool operator==(const NeScore&) const = default;
};

// Surfaces are keyed by NamedEntity::key(). Tied surfaces stay unassigned.
struct NePolarityMap {
  std::map<std::string, Polarity> assigned;
  std::vector<std::string> unassigned;  // sorted

  bool operator==(const NePolarityMap&) const = default;
};

// Columns of the extracted / positive / negative / annotated entity table.
struct NeStats {
  std::size_t extracted = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t annotated = 0;

  bool operator==(const NeStats&) const = default;
};

struct NePolarityResult {
  NePolarityMap map;
  std::vector<NeScore> scores;  // ordered by surface key
  NeStats stats;
};

// Majority-of-attitudes polarity. The entity set is every distinct surface
// annotated on an in-scope document. Each in-scope document whose tokens
// contain the surface contiguously moves the score by +1 (positive gold), -1
// (negative gold) or 0 (neutral gold), once per document however many times
// the surface occurs. Errors: UnknownDocId, EmptyScope.
NePolarityResult detect_ne_polarity(const Corpus& corpus, const NeAnnotations& annotations,
                                    NeScope scope = NeScope::TrainOnly);

// Replaces every selected occurrence of an assigned surface with PosNE or
// NegNE in all documents of both splits. Overlaps resolve longest first, then
// leftmost. Unassigned surfaces are left alone.
Corpus tag_entities(const Corpus& corpus, const NePolarityMap& map);

// One JSON object per line: surface, polarity (or null when tied), score, counts.
void write_ne_scores(std::ostream& out, const NePolarityResult& result);
std::string ne_stats_json(const NeStats& stats, NeScope scope);

}  // namespace nesa

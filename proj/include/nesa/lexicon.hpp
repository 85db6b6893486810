#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "nesa/corpus.hpp"
#include "nesa/preprocess.hpp"

namespace nesa {

// Weights are exact so scores reproduce bit for bit on every platform.
using Rational = boost::rational<std::int64_t>;

// Accepts integers ("-1"), decimals ("0.7", "-.25") and fractions ("3/4").
std::optional<Rational> parse_rational(std::string_view s);
std::string format_rational(const Rational& r);
double to_double(const Rational& r);

struct LexiconEntry {
  TokenList term;  // one or two tokens
  Polarity polarity = Polarity::Positive;
  Rational weight{1};

  bool operator==(const LexiconEntry&) const = default;
};

// Throws BadPolarity, ZeroWeight, WeightSignMismatch or TermTooLong.
void validate_entry(const LexiconEntry& entry);

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::string name) : name_(std::move(name)) {}

  // Later inserts win. A replacement with a different entry is recorded as a
  // conflict. Returns true when an existing entry was replaced.
  bool insert(LexiconEntry entry);

  const LexiconEntry* find(const std::string& key) const;
  bool contains(const std::string& key) const { return find(key) != nullptr; }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::size_t size() const { return entries_.size(); }
  std::size_t positive_count() const;
  std::size_t negative_count() const;
  const std::map<std::string, LexiconEntry>& entries() const { return entries_; }
  const std::vector<std::string>& conflicts() const { return conflicts_; }

  bool same_entries(const Lexicon& other) const { return entries_ == other.entries_; }

 private:
  std::string name_;
  std::map<std::string, LexiconEntry> entries_;  // keyed by space-joined term
  std::vector<std::string> conflicts_;
};

// TSV lines `term<TAB>polarity[<TAB>weight]`; '#' lines and blank lines are
// skipped. Terms go through the normalization pipeline. A missing weight is
// +1 for positive and -1 for negative.
Lexicon load_lexicon(const std::filesystem::path& path, const NormalizationConfig& config = {});
Lexicon parse_lexicon(std::istream& in, std::string name, const NormalizationConfig& config = {});

// Left-to-right union; the later lexicon wins a term conflict. Throws EmptyList.
Lexicon merge_lexicons(std::span<const Lexicon> lexicons);

// {name, size, positive, negative, conflicts}
std::string lexicon_report_json(const Lexicon& lexicon);

// Adds PosNE (+1) and NegNE (-1). Throws AlreadyTagged.
Lexicon add_ne_tags(const Lexicon& lexicon);

enum class MatchScheme { Unigram, UniBigram };

std::string_view to_string(MatchScheme s);
std::optional<MatchScheme> parse_match_scheme(std::string_view s);

struct LexiconMatch {
  std::size_t position = 0;
  const LexiconEntry* entry = nullptr;
};

// Unigram: each token looked up on its own. UniBigram: greedy left to right,
// a matching bigram consumes both tokens before the unigram is tried.
std::vector<LexiconMatch> segment_and_match(const TokenList& tokens, const Lexicon& lexicon, MatchScheme scheme);

enum class TiePolicy { Negative, Positive, Abstain };

std::string_view to_string(TiePolicy t);
std::optional<TiePolicy> parse_tie_policy(std::string_view s);

struct SfsResult {
  Rational score{0};
  std::optional<Polarity> polarity;  // nullopt when a tie abstains
};

SfsResult sfs_score(const TokenList& tokens, const Lexicon& lexicon, MatchScheme scheme,
                    TiePolicy tie = TiePolicy::Negative);

struct DpWeights {
  Rational positive;  // in (0, 1)
  Rational negative;  // in (-1, 0)
};

// Complement relation: a positive entry of weight w gets (w, -(1 - w)); a
// negative entry of weight -w gets (1 - w, -w). Requires 0 < |w| < 1, except
// for the NE tags, which act as fully polar (PosNE (1, 0), NegNE (0, -1)).
// Throws NoDpWeights otherwise.
DpWeights dp_weights(const LexiconEntry& entry);

struct DpResult {
  Rational positive_sum{0};
  Rational negative_sum{0};
  Polarity polarity = Polarity::Negative;
};

// Validates the whole lexicon once, then scores any number of sentences.
class DpScorer {
 public:
  explicit DpScorer(const Lexicon& lexicon);

  DpResult score(const TokenList& tokens, MatchScheme scheme) const;

 private:
  const Lexicon& lexicon_;
  std::map<std::string, DpWeights> weights_;
};

// The greater absolute accumulated sum decides; equal magnitudes give Negative.
DpResult dp_score(const TokenList& tokens, const Lexicon& lexicon, MatchScheme scheme);

}  // namespace nesa

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nesa/corpus.hpp"

namespace nesa {

// Character classes a script filter may keep. Whitespace is always kept: it is
// the token separator.
enum class CharClass : std::uint8_t {
  ArabicLetters = 1 << 0,
  LatinLetters = 1 << 1,
  Digits = 1 << 2,
};

struct ScriptFilter {
  std::uint8_t keep = 0;

  static ScriptFilter arabic() { return ScriptFilter{}.with(CharClass::ArabicLetters).with(CharClass::Digits); }
  static ScriptFilter latin() { return ScriptFilter{}.with(CharClass::LatinLetters); }

  ScriptFilter with(CharClass c) const { return ScriptFilter{static_cast<std::uint8_t>(keep | static_cast<std::uint8_t>(c))}; }
  bool keeps(CharClass c) const { return (keep & static_cast<std::uint8_t>(c)) != 0; }
  bool allows(char32_t cp) const;

  bool operator==(const ScriptFilter&) const = default;
};

std::optional<CharClass> parse_char_class(std::string_view name);
std::string_view to_string(CharClass c);

// Tweet symbols are mentions ("@name"), retweet markers (a standalone "RT" or
// "RT:" token) and the '#' of hashtags. Whitespace is always collapsed.
struct NormalizationConfig {
  bool remove_urls = true;
  bool remove_tweet_symbols = true;
  bool remove_punctuation = true;
  std::optional<ScriptFilter> script_filter = ScriptFilter::arabic();
  bool hashtag_underscore_to_space = true;

  bool operator==(const NormalizationConfig&) const = default;
};

// Removed material is replaced by a space, so no removal can splice two
// fragments into a new word, URL or marker. This keeps normalize idempotent.
// Stopwords and negation words are never removed; no stemming is applied.
std::string normalize(std::string_view text, const NormalizationConfig& config = {});

// Splits on Unicode whitespace; never yields empty tokens.
TokenList tokenize(std::string_view text);

std::string collapse_whitespace(std::string_view text);
std::string join_tokens(const TokenList& tokens);

bool is_whitespace(char32_t cp);
bool is_punctuation_or_symbol(char32_t cp);

// Fills every document's tokens from its raw text.
Corpus preprocess_corpus(const Corpus& corpus, const NormalizationConfig& config = {});

}  // namespace nesa

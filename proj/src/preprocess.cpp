#include "nesa/preprocess.hpp"

#include <array>
#include <utility>

#include "nesa/utf8.hpp"

namespace nesa {

namespace {

using Range = std::pair<char32_t, char32_t>;

template <std::size_t N>
bool in_ranges(char32_t cp, const std::array<Range, N>& ranges) {
  for (const auto& [lo, hi] : ranges) {
    if (cp >= lo && cp <= hi) return true;
  }
  return false;
}

constexpr std::array<Range, 11> kWhitespace{{
    {0x09, 0x0D}, {0x20, 0x20}, {0x85, 0x85}, {0xA0, 0xA0}, {0x1680, 0x1680}, {0x2000, 0x200A},
    {0x2028, 0x2029}, {0x202F, 0x202F}, {0x205F, 0x205F}, {0x3000, 0x3000}, {0x180E, 0x180E},
}};

constexpr std::array<Range, 39> kPunctuation{{
    // ASCII
    {0x21, 0x2F}, {0x3A, 0x40}, {0x5B, 0x60}, {0x7B, 0x7E},
    // Latin-1
    {0xA1, 0xBF}, {0xD7, 0xD7}, {0xF7, 0xF7},
    // Arabic punctuation and signs
    {0x0600, 0x060F}, {0x061B, 0x061B}, {0x061C, 0x061C}, {0x061E, 0x061F}, {0x066A, 0x066D},
    {0x06D4, 0x06D4}, {0x06DD, 0x06DE}, {0x06E9, 0x06E9},
    // General punctuation, invisible format characters, currency, symbols
    {0x200B, 0x200F}, {0x2010, 0x2027}, {0x202A, 0x202E}, {0x2030, 0x205E}, {0x2060, 0x206F},
    {0x20A0, 0x20CF}, {0x20D0, 0x20FF}, {0x2100, 0x2BFF}, {0x2E00, 0x2E7F}, {0x3001, 0x303F},
    // Ornate parentheses and ligature signs inside Arabic presentation forms
    {0xFD3E, 0xFD3F}, {0xFDFC, 0xFDFD},
    // Variation selectors, CJK compatibility and small forms, BOM
    {0xFE00, 0xFE0F}, {0xFE10, 0xFE1F}, {0xFE30, 0xFE6F}, {0xFEFF, 0xFEFF},
    // Fullwidth ASCII punctuation
    {0xFF01, 0xFF0F}, {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40}, {0xFF5B, 0xFF65},
    // Emoji, pictographs, tags
    {0x1F000, 0x1FAFF}, {0xE0000, 0xE007F}, {0xFFF9, 0xFFFD}, {0x2FF0, 0x2FFF},
}};

constexpr std::array<Range, 12> kArabicLetters{{
    {0x0610, 0x061A}, {0x0620, 0x065F}, {0x066E, 0x06D3}, {0x06D5, 0x06DC}, {0x06DF, 0x06E8},
    {0x06EA, 0x06EF}, {0x06FA, 0x06FF}, {0x0750, 0x077F}, {0x08A0, 0x08FF}, {0xFB50, 0xFD3D},
    {0xFD40, 0xFDFB}, {0xFE70, 0xFEFC},
}};

constexpr std::array<Range, 5> kLatinLetters{{
    {'A', 'Z'}, {'a', 'z'}, {0xC0, 0xD6}, {0xD8, 0xF6}, {0xF8, 0x24F},
}};

constexpr std::array<Range, 3> kDigits{{{'0', '9'}, {0x0660, 0x0669}, {0x06F0, 0x06F9}}};

constexpr char32_t kSpace = U' ';

bool is_control(char32_t cp) {
  return cp == utf8::kInvalid || cp < 0x09 || (cp > 0x0D && cp < 0x20) || cp == 0x7F ||
         (cp >= 0x80 && cp <= 0x9F && cp != 0x85);
}

// Letters, digits, marks and '_' continue a mention or hashtag.
bool is_name_char(char32_t cp) {
  return cp == U'_' || !(is_whitespace(cp) || is_punctuation_or_symbol(cp) || is_control(cp));
}

char32_t ascii_lower(char32_t cp) { return (cp >= U'A' && cp <= U'Z') ? cp + 32 : cp; }

bool starts_with_ci(const std::vector<char32_t>& cps, std::size_t at, std::u32string_view prefix) {
  if (at + prefix.size() > cps.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (ascii_lower(cps[at + k]) != prefix[k]) return false;
  }
  return true;
}

void blank(std::vector<char32_t>& cps, std::size_t from, std::size_t to) {
  for (std::size_t k = from; k < to; ++k) cps[k] = kSpace;
}

void remove_urls(std::vector<char32_t>& cps) {
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_whitespace(cps[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < cps.size() && !is_whitespace(cps[end])) ++end;
    for (std::size_t k = i; k < end; ++k) {
      if (starts_with_ci(cps, k, U"http://") || starts_with_ci(cps, k, U"https://") ||
          starts_with_ci(cps, k, U"www.")) {
        blank(cps, k, end);
        break;
      }
    }
    i = end;
  }
}

void remove_mentions(std::vector<char32_t>& cps) {
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] != U'@' && cps[i] != 0xFF20) continue;
    std::size_t end = i + 1;
    while (end < cps.size() && is_name_char(cps[end])) ++end;
    blank(cps, i, end);
    i = end - 1;
  }
}

void rewrite_hashtags(std::vector<char32_t>& cps, bool drop_hash, bool underscore_to_space) {
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] != U'#' && cps[i] != 0xFF03) continue;
    if (drop_hash) cps[i] = kSpace;
    std::size_t end = i + 1;
    while (end < cps.size() && is_name_char(cps[end])) {
      if (underscore_to_space && cps[end] == U'_') cps[end] = kSpace;
      ++end;
    }
    i = end - 1;
  }
}

bool is_retweet_marker(std::string_view token) { return token == "RT" || token == "RT:"; }

}  // namespace

bool is_whitespace(char32_t cp) { return in_ranges(cp, kWhitespace); }

bool is_punctuation_or_symbol(char32_t cp) { return cp != utf8::kInvalid && in_ranges(cp, kPunctuation); }

bool ScriptFilter::allows(char32_t cp) const {
  if (is_whitespace(cp)) return true;
  if (keeps(CharClass::ArabicLetters) && in_ranges(cp, kArabicLetters)) return true;
  if (keeps(CharClass::LatinLetters) && in_ranges(cp, kLatinLetters)) return true;
  if (keeps(CharClass::Digits) && in_ranges(cp, kDigits)) return true;
  return false;
}

std::optional<CharClass> parse_char_class(std::string_view name) {
  if (name == "arabic") return CharClass::ArabicLetters;
  if (name == "latin") return CharClass::LatinLetters;
  if (name == "digits") return CharClass::Digits;
  return std::nullopt;
}

std::string_view to_string(CharClass c) {
  switch (c) {
    case CharClass::ArabicLetters: return "arabic";
    case CharClass::LatinLetters: return "latin";
    case CharClass::Digits: return "digits";
  }
  return "";
}

std::string normalize(std::string_view text, const NormalizationConfig& config) {
  auto cps = utf8::decode(text);
  for (auto& cp : cps) {
    if (is_control(cp)) cp = kSpace;
  }
  if (config.remove_urls) remove_urls(cps);
  if (config.remove_tweet_symbols) remove_mentions(cps);
  if (config.remove_tweet_symbols || config.hashtag_underscore_to_space) {
    rewrite_hashtags(cps, config.remove_tweet_symbols, config.hashtag_underscore_to_space);
  }
  if (config.remove_punctuation) {
    for (auto& cp : cps) {
      if (is_punctuation_or_symbol(cp)) cp = kSpace;
    }
  }
  if (config.script_filter) {
    for (auto& cp : cps) {
      if (!config.script_filter->allows(cp)) cp = kSpace;
    }
  }
  auto tokens = tokenize(utf8::encode(cps));
  std::string out;
  for (const auto& tok : tokens) {
    if (config.remove_tweet_symbols && is_retweet_marker(tok)) continue;
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

TokenList tokenize(std::string_view text) {
  TokenList tokens;
  std::string current;
  for (char32_t cp : utf8::decode(text)) {
    if (is_whitespace(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      utf8::append(current, cp == utf8::kInvalid ? char32_t{0xFFFD} : cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string join_tokens(const TokenList& tokens) {
  std::string out;
  for (const auto& tok : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) { return join_tokens(tokenize(text)); }

Corpus preprocess_corpus(const Corpus& corpus, const NormalizationConfig& config) {
  Corpus out = corpus;
  for (auto& doc : out.docs) doc.tokens = tokenize(normalize(doc.raw_text, config));
  return out;
}

}  // namespace nesa

#include "nesa/lexicon.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include <json.hpp>

#include "nesa/error.hpp"
#include "nesa/ne_provider.hpp"

namespace nesa {

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool negative = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty() || body.front() == '+' || body.front() == '-') return std::nullopt;

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(body.substr(0, slash));
    auto den = parse_int(body.substr(slash + 1));
    if (!num || !den || *den <= 0 || *num < 0) return std::nullopt;
    value = Rational(*num, *den);
  } else {
    auto dot = body.find('.');
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (frac.size() > 15) return std::nullopt;
    std::int64_t w = 0;
    if (!whole.empty()) {
      auto parsed = parse_int(whole);
      if (!parsed || *parsed < 0) return std::nullopt;
      w = *parsed;
    }
    std::int64_t f = 0;
    std::int64_t scale = 1;
    if (!frac.empty()) {
      auto parsed = parse_int(frac);
      if (!parsed || *parsed < 0 || frac.front() == '+') return std::nullopt;
      f = *parsed;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    }
    value = Rational(w) + Rational(f, scale);
  }
  return negative ? -value : value;
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

void validate_entry(const LexiconEntry& entry) {
  const auto key = join_tokens(entry.term);
  if (entry.term.empty()) throw Error(ErrorCode::MalformedLine, "empty lexicon term");
  if (entry.term.size() > 2) throw Error(ErrorCode::TermTooLong, "'" + key + "' has " + std::to_string(entry.term.size()) + " tokens");
  if (!is_binary(entry.polarity)) throw Error(ErrorCode::BadPolarity, "'" + key + "' must be positive or negative");
  if (entry.weight == Rational(0)) throw Error(ErrorCode::ZeroWeight, "'" + key + "'");
  if ((entry.weight > Rational(0)) != (entry.polarity == Polarity::Positive)) {
    throw Error(ErrorCode::WeightSignMismatch, "'" + key + "' weight " + format_rational(entry.weight) +
                                                   " disagrees with polarity " + std::string(to_string(entry.polarity)));
  }
}

bool Lexicon::insert(LexiconEntry entry) {
  validate_entry(entry);
  auto key = join_tokens(entry.term);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::move(key), std::move(entry));
    return false;
  }
  if (!(it->second == entry)) conflicts_.push_back(key);
  it->second = std::move(entry);
  return true;
}

const LexiconEntry* Lexicon::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t Lexicon::positive_count() const {
  std::size_t n = 0;
  for (const auto& [_, e] : entries_) n += e.polarity == Polarity::Positive;
  return n;
}

std::size_t Lexicon::negative_count() const { return size() - positive_count(); }

Lexicon parse_lexicon(std::istream& in, std::string name, const NormalizationConfig& config) {
  Lexicon lex(std::move(name));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#' || collapse_whitespace(line).empty()) continue;
    const auto where = " (line " + std::to_string(lineno) + ")";

    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() < 2 || cols.size() > 3) throw Error(ErrorCode::MalformedLine, "expected 2 or 3 columns" + where);

    LexiconEntry entry;
    entry.term = tokenize(normalize(cols[0], config));
    if (entry.term.empty()) throw Error(ErrorCode::MalformedLine, "term '" + cols[0] + "' is empty after normalization" + where);
    if (entry.term.size() > 2) throw Error(ErrorCode::TermTooLong, "'" + cols[0] + "'" + where);

    auto pol = parse_polarity(collapse_whitespace(cols[1]));
    if (!pol || !is_binary(*pol)) throw Error(ErrorCode::BadPolarity, "'" + cols[1] + "'" + where);
    entry.polarity = *pol;

    if (cols.size() == 3 && !collapse_whitespace(cols[2]).empty()) {
      auto w = parse_rational(collapse_whitespace(cols[2]));
      if (!w) throw Error(ErrorCode::MalformedLine, "bad weight '" + cols[2] + "'" + where);
      if (*w == Rational(0)) throw Error(ErrorCode::ZeroWeight, "'" + cols[0] + "'" + where);
      entry.weight = *w;
    } else {
      entry.weight = entry.polarity == Polarity::Positive ? Rational(1) : Rational(-1);
    }
    lex.insert(std::move(entry));
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path, const NormalizationConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open lexicon " + path.string());
  return parse_lexicon(in, path.stem().string(), config);
}

Lexicon merge_lexicons(std::span<const Lexicon> lexicons) {
  if (lexicons.empty()) throw Error(ErrorCode::EmptyList, "no lexicons to merge");
  std::string name;
  for (const auto& lex : lexicons) name += (name.empty() ? "" : "+") + lex.name();
  Lexicon merged(name);
  for (const auto& lex : lexicons) {
    for (const auto& [_, entry] : lex.entries()) merged.insert(entry);
  }
  return merged;
}

std::string lexicon_report_json(const Lexicon& lexicon) {
  nlohmann::ordered_json j;
  j["name"] = lexicon.name();
  j["size"] = lexicon.size();
  j["positive"] = lexicon.positive_count();
  j["negative"] = lexicon.negative_count();
  j["conflicts"] = lexicon.conflicts().size();
  return j.dump(2) + "\n";
}

Lexicon add_ne_tags(const Lexicon& lexicon) {
  if (lexicon.contains(std::string(kPosTag)) || lexicon.contains(std::string(kNegTag))) {
    throw Error(ErrorCode::AlreadyTagged, "lexicon " + lexicon.name() + " already holds NE tag entries");
  }
  Lexicon tagged = lexicon;
  tagged.insert(LexiconEntry{{std::string(kPosTag)}, Polarity::Positive, Rational(1)});
  tagged.insert(LexiconEntry{{std::string(kNegTag)}, Polarity::Negative, Rational(-1)});
  return tagged;
}

std::string_view to_string(MatchScheme s) { return s == MatchScheme::Unigram ? "uni" : "uni+bi"; }

std::optional<MatchScheme> parse_match_scheme(std::string_view s) {
  if (s == "uni") return MatchScheme::Unigram;
  if (s == "uni_bi" || s == "uni+bi") return MatchScheme::UniBigram;
  return std::nullopt;
}

std::vector<LexiconMatch> segment_and_match(const TokenList& tokens, const Lexicon& lexicon, MatchScheme scheme) {
  std::vector<LexiconMatch> matches;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (scheme == MatchScheme::UniBigram && i + 1 < tokens.size()) {
      if (const auto* e = lexicon.find(tokens[i] + " " + tokens[i + 1])) {
        matches.push_back({i, e});
        i += 2;
        continue;
      }
    }
    if (const auto* e = lexicon.find(tokens[i])) matches.push_back({i, e});
    ++i;
  }
  return matches;
}

std::string_view to_string(TiePolicy t) {
  switch (t) {
    case TiePolicy::Negative: return "negative";
    case TiePolicy::Positive: return "positive";
    case TiePolicy::Abstain: return "abstain";
  }
  return "negative";
}

std::optional<TiePolicy> parse_tie_policy(std::string_view s) {
  if (s == "negative") return TiePolicy::Negative;
  if (s == "positive") return TiePolicy::Positive;
  if (s == "abstain") return TiePolicy::Abstain;
  return std::nullopt;
}

SfsResult sfs_score(const TokenList& tokens, const Lexicon& lexicon, MatchScheme scheme, TiePolicy tie) {
  SfsResult result;
  for (const auto& m : segment_and_match(tokens, lexicon, scheme)) result.score += m.entry->weight;
  if (result.score > Rational(0)) {
    result.polarity = Polarity::Positive;
  } else if (result.score < Rational(0)) {
    result.polarity = Polarity::Negative;
  } else if (tie == TiePolicy::Positive) {
    result.polarity = Polarity::Positive;
  } else if (tie == TiePolicy::Negative) {
    result.polarity = Polarity::Negative;
  }
  return result;
}

DpWeights dp_weights(const LexiconEntry& entry) {
  const auto key = join_tokens(entry.term);
  if (key == kPosTag) return {Rational(1), Rational(0)};
  if (key == kNegTag) return {Rational(0), Rational(-1)};
  const Rational magnitude = entry.weight < Rational(0) ? -entry.weight : entry.weight;
  if (magnitude <= Rational(0) || magnitude >= Rational(1)) {
    throw Error(ErrorCode::NoDpWeights, "'" + key + "' has weight " + format_rational(entry.weight) +
                                            "; double polarity needs 0 < |weight| < 1");
  }
  if (entry.polarity == Polarity::Positive) return {magnitude, -(Rational(1) - magnitude)};
  return {Rational(1) - magnitude, -magnitude};
}

DpScorer::DpScorer(const Lexicon& lexicon) : lexicon_(lexicon) {
  for (const auto& [key, entry] : lexicon.entries()) weights_.emplace(key, dp_weights(entry));
}

DpResult DpScorer::score(const TokenList& tokens, MatchScheme scheme) const {
  DpResult result;
  for (const auto& m : segment_and_match(tokens, lexicon_, scheme)) {
    const auto& w = weights_.at(join_tokens(m.entry->term));
    result.positive_sum += w.positive;
    result.negative_sum += w.negative;
  }
  const Rational neg_magnitude = -result.negative_sum;
  result.polarity = result.positive_sum > neg_magnitude ? Polarity::Positive : Polarity::Negative;
  return result;
}

DpResult dp_score(const TokenList& tokens, const Lexicon& lexicon, MatchScheme scheme) {
  return DpScorer(lexicon).score(tokens, scheme);
}

}  // namespace nesa

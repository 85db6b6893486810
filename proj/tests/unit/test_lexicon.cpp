#include <doctest.h>

#include <random>
#include <sstream>

#include "nesa/error.hpp"
#include "nesa/lexicon.hpp"
#include "oracles.hpp"

using namespace nesa;

namespace {

const NormalizationConfig kLatin{.script_filter = ScriptFilter::latin()};

Lexicon lex(const std::string& text, const NormalizationConfig& cfg = kLatin) {
  std::istringstream in(text);
  return parse_lexicon(in, "test", cfg);
}

ErrorCode code_of(const std::string& text) {
  try {
    lex(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

Lexicon entries(std::vector<std::pair<TokenList, Rational>> list) {
  Lexicon l;
  for (auto& [t, w] : list) l.insert({t, w > R(0) ? Polarity::Positive : Polarity::Negative, w});
  return l;
}

}  // namespace

TEST_CASE("default weight is one") {
  auto l = lex("جميل\tpositive\n", NormalizationConfig{});
  REQUIRE(l.size() == 1);
  CHECK(l.find("جميل")->weight == R(1));
  CHECK(lex("bad\tnegative\n").find("bad")->weight == R(-1));
}

TEST_CASE("lexicon line rejections") {
  CHECK(code_of("x y z\tnegative\n") == ErrorCode::TermTooLong);
  CHECK(code_of("x\tneutral\n") == ErrorCode::BadPolarity);
  CHECK(code_of("x\tpositive\t0\n") == ErrorCode::ZeroWeight);
  CHECK(code_of("x\tpositive\t-0.5\n") == ErrorCode::WeightSignMismatch);
  CHECK(code_of("x\tpositive\tabc\n") == ErrorCode::MalformedLine);
  CHECK(code_of("just one column\n") == ErrorCode::MalformedLine);
}

TEST_CASE("later duplicate wins and is reported") {
  auto l = lex("good\tpositive\nfine\tpositive\ngood\tnegative\n");
  CHECK(l.size() == 2);
  CHECK(l.find("good")->polarity == Polarity::Negative);
  CHECK(l.conflicts() == std::vector<std::string>{"good"});
}

TEST_CASE("weights parse exactly") {
  CHECK(parse_rational("0.7") == R(7, 10));
  CHECK(parse_rational("-3/4") == R(-3, 4));
  CHECK(parse_rational("2") == R(2));
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("").has_value());
  CHECK(format_rational(R(-3, 10)) == "-3/10");
}

TEST_CASE("merge policy") {
  auto a = entries({{{"a"}, R(1)}, {{"b"}, R(1)}, {{"c"}, R(-1)}});
  auto b = entries({{{"d"}, R(1)}, {{"e"}, R(-1)}, {{"f"}, R(-1)}, {{"g"}, R(1)}});
  std::vector<Lexicon> both{a, b};
  CHECK(merge_lexicons(both).size() == 7);

  auto pos = entries({{{"t"}, R(1)}});
  auto neg = entries({{{"t"}, R(-1)}});
  std::vector<Lexicon> order{pos, neg};
  CHECK(merge_lexicons(order).find("t")->polarity == Polarity::Negative);
}

TEST_CASE("merging stand-ins sized like NileULex") {
  Lexicon p;
  Lexicon n;
  for (int i = 0; i < 1697; ++i) p.insert({{"p" + std::to_string(i)}, Polarity::Positive, R(1)});
  for (int i = 0; i < 4256; ++i) n.insert({{"n" + std::to_string(i)}, Polarity::Negative, R(-1)});
  std::vector<Lexicon> parts{p, n};
  auto m = merge_lexicons(parts);
  CHECK(m.size() == 5953);
  CHECK(m.positive_count() == 1697);
  CHECK(m.negative_count() == 4256);
}

TEST_CASE("merge is associative left to right") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    std::vector<Lexicon> parts(3);
    for (auto& l : parts) {
      for (int i = 0; i < 5; ++i) {
        const auto w = R(static_cast<std::int64_t>(rng() % 5) + 1) * R(rng() % 2 ? 1 : -1);
        l.insert({{"t" + std::to_string(rng() % 6)}, w > R(0) ? Polarity::Positive : Polarity::Negative, w});
      }
    }
    std::vector<Lexicon> ab{parts[0], parts[1]};
    std::vector<Lexicon> left{merge_lexicons(ab), parts[2]};
    std::vector<Lexicon> bc{parts[1], parts[2]};
    std::vector<Lexicon> right{parts[0], merge_lexicons(bc)};
    CHECK(merge_lexicons(left).same_entries(merge_lexicons(right)));
  }
}

TEST_CASE("ne tags") {
  auto tagged = add_ne_tags(Lexicon{});
  CHECK(tagged.size() == 2);
  auto five = entries({{{"a"}, R(1)}, {{"b"}, R(1)}, {{"c"}, R(-1)}, {{"d"}, R(1)}, {{"e"}, R(-1)}});
  auto seven = add_ne_tags(five);
  CHECK(seven.size() == 7);
  for (const auto& [k, e] : five.entries()) CHECK(*seven.find(k) == e);

  auto r = sfs_score({"NegNE"}, seven, MatchScheme::UniBigram, TiePolicy::Negative);
  CHECK(r.score == R(-1));
  CHECK(r.polarity == Polarity::Negative);
}

TEST_CASE("segmentation examples") {
  auto l = entries({{{"a", "b"}, R(1)}, {{"a"}, R(-1)}});
  auto m = segment_and_match({"a", "b"}, l, MatchScheme::UniBigram);
  REQUIRE(m.size() == 1);
  CHECK(m[0].entry->term == TokenList{"a", "b"});
  m = segment_and_match({"a", "b"}, l, MatchScheme::Unigram);
  REQUIRE(m.size() == 1);
  CHECK(m[0].entry->term == TokenList{"a"});
  CHECK(segment_and_match({}, l, MatchScheme::UniBigram).empty());
}

TEST_CASE("sfs examples") {
  auto l = add_ne_tags(entries({{{"good"}, R(1)}, {{"nice"}, R(1)}, {{"bad"}, R(-1)}}));
  auto r = sfs_score({"good", "x", "nice", "bad"}, l, MatchScheme::UniBigram, TiePolicy::Negative);
  CHECK(r.score == R(1));
  CHECK(r.polarity == Polarity::Positive);

  r = sfs_score({"nothing"}, l, MatchScheme::UniBigram, TiePolicy::Negative);
  CHECK(r.score == R(0));
  CHECK(r.polarity == Polarity::Negative);

  r = sfs_score({"PosNE", "bad"}, l, MatchScheme::UniBigram, TiePolicy::Positive);
  CHECK(r.score == R(0));
  CHECK(r.polarity == Polarity::Positive);
  r = sfs_score({"PosNE", "bad"}, l, MatchScheme::UniBigram, TiePolicy::Abstain);
  CHECK_FALSE(r.polarity.has_value());
}

TEST_CASE("k PosNE and m NegNE score k - m") {
  auto l = add_ne_tags(entries({{{"w"}, R(1, 2)}}));
  for (int k = 0; k < 5; ++k) {
    for (int m = 0; m < 5; ++m) {
      TokenList t;
      for (int i = 0; i < k; ++i) t.push_back("PosNE");
      for (int i = 0; i < m; ++i) t.push_back("NegNE");
      t.push_back("zzz");
      CHECK(sfs_score(t, l, MatchScheme::UniBigram, TiePolicy::Negative).score == R(k - m));
    }
  }
}

TEST_CASE("sfs matches the naive segmenter and permutation rules") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 300; ++round) {
    std::vector<oracle::Entry> list;
    Lexicon l;
    const auto n = rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      TokenList term{std::string(1, static_cast<char>('a' + rng() % 5))};
      if (rng() % 2) term.push_back(std::string(1, static_cast<char>('a' + rng() % 5)));
      const auto w = R(static_cast<std::int64_t>(rng() % 9) + 1, static_cast<std::int64_t>(rng() % 4) + 1) *
                     R(rng() % 2 ? 1 : -1);
      list.push_back({term, w});
      l.insert({term, w > R(0) ? Polarity::Positive : Polarity::Negative, w});
    }
    TokenList t;
    const auto len = rng() % 12;
    for (std::size_t i = 0; i < len; ++i) t.push_back(std::string(1, static_cast<char>('a' + rng() % 6)));

    CHECK(sfs_score(t, l, MatchScheme::UniBigram, TiePolicy::Negative).score == oracle::sfs(t, list, true));
    const auto uni = sfs_score(t, l, MatchScheme::Unigram, TiePolicy::Negative).score;
    CHECK(uni == oracle::sfs(t, list, false));
    std::shuffle(t.begin(), t.end(), rng);
    CHECK(sfs_score(t, l, MatchScheme::Unigram, TiePolicy::Negative).score == uni);
  }
}

TEST_CASE("dp worked example") {
  auto w = dp_weights({{"x"}, Polarity::Positive, R(7, 10)});
  CHECK(w.positive == R(7, 10));
  CHECK(w.negative == R(-3, 10));

  auto l = entries({{{"up"}, R(7, 10)}, {{"down"}, R(-9, 10)}});
  auto r = dp_score({"up"}, l, MatchScheme::UniBigram);
  CHECK(r.positive_sum == R(7, 10));
  CHECK(r.negative_sum == R(-3, 10));
  CHECK(r.polarity == Polarity::Positive);

  r = dp_score({"up", "and", "down"}, l, MatchScheme::UniBigram);
  CHECK(r.positive_sum == R(8, 10));
  CHECK(r.negative_sum == R(-12, 10));
  CHECK(r.polarity == Polarity::Negative);

  r = dp_score({"none"}, l, MatchScheme::UniBigram);
  CHECK(r.positive_sum == R(0));
  CHECK(r.negative_sum == R(0));
  CHECK(r.polarity == Polarity::Negative);
}

TEST_CASE("dp complement holds and unit weights are refused") {
  for (int n = 1; n < 20; ++n) {
    for (auto pol : {Polarity::Positive, Polarity::Negative}) {
      const auto w = R(n, 20) * R(pol == Polarity::Positive ? 1 : -1);
      const auto d = dp_weights({{"x"}, pol, w});
      CHECK(d.positive - R(1) == d.negative);
    }
  }
  CHECK_THROWS_AS(dp_weights({{"x"}, Polarity::Positive, R(1)}), Error);
  auto tags = add_ne_tags(Lexicon{});
  CHECK(dp_weights(*tags.find("PosNE")).positive == R(1));
  CHECK(dp_weights(*tags.find("NegNE")).negative == R(-1));
}

#include <doctest.h>

#include <random>
#include <sstream>

#include "nesa/corpus.hpp"
#include "nesa/error.hpp"

using namespace nesa;

namespace {

Corpus parse(const std::string& text, CorpusFormat fmt = CorpusFormat::Jsonl) {
  std::istringstream in(text);
  return parse_corpus(in, fmt, "inline");
}

ErrorCode code_of(const std::string& text, CorpusFormat fmt = CorpusFormat::Jsonl) {
  try {
    parse(text, fmt);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("three-record jsonl splits two train one test") {
  auto c = parse(
      R"({"id":"a","text":"x","label":"positive","split":"train"})"
      "\n"
      R"({"id":"b","text":"y","label":"negative","split":"train"})"
      "\n\n"
      R"({"id":"c","text":"z","label":"neutral","split":"test"})"
      "\n");
  REQUIRE(c.size() == 3);
  auto s = split_summary(c);
  CHECK(s.split_total(Split::Train) == 2);
  CHECK(s.split_total(Split::Test) == 1);
  CHECK(c.docs[2].gold == Polarity::Neutral);
}

TEST_CASE("misspelt label is rejected") {
  CHECK(code_of(R"({"id":"a","text":"x","label":"positve","split":"train"})") == ErrorCode::BadLabel);
}

TEST_CASE("record-level rejections") {
  CHECK(code_of(R"({"id":"a","text":"x","label":"positive","split":"dev"})") == ErrorCode::BadSplit);
  CHECK(code_of(R"({"id":"a","label":"positive","split":"train"})") == ErrorCode::MissingField);
  CHECK(code_of("a\tx\tpositive\n", CorpusFormat::Tsv) == ErrorCode::MissingField);
  CHECK(code_of(
            R"({"id":"a","text":"x","label":"positive","split":"train"})"
            "\n"
            R"({"id":"a","text":"y","label":"negative","split":"test"})") == ErrorCode::DuplicateId);
}

TEST_CASE("tsv matches jsonl") {
  auto a = parse("t1\thello there\tpositive\ttrain\nt2\tbye\tnegative\ttest\n", CorpusFormat::Tsv);
  auto b = parse(
      R"({"id":"t1","text":"hello there","label":"positive","split":"train"})"
      "\n"
      R"({"id":"t2","text":"bye","label":"negative","split":"test"})");
  CHECK(a.docs == b.docs);
}

TEST_CASE("split counts matching the TAC row total 746") {
  Corpus c;
  auto add = [&](std::size_t n, Polarity p, Split s) {
    for (std::size_t i = 0; i < n; ++i) {
      c.docs.push_back({std::to_string(c.docs.size()), "t", {}, p, s});
    }
  };
  add(306, Polarity::Positive, Split::Train);
  add(290, Polarity::Negative, Split::Train);
  add(76, Polarity::Positive, Split::Test);
  add(74, Polarity::Negative, Split::Test);
  std::ostringstream out;
  write_corpus(out, c, CorpusFormat::Jsonl);
  auto s = split_summary(parse(out.str()));
  CHECK(s.count(Split::Train, Polarity::Positive) == 306);
  CHECK(s.count(Split::Test, Polarity::Negative) == 74);
  CHECK(s.total() == 746);
}

TEST_CASE("split summary edge cases") {
  CHECK(split_summary(Corpus{}) == SplitSummary{});
  Corpus one;
  one.docs.push_back({"a", "t", {}, Polarity::Positive, Split::Train});
  auto s = split_summary(one);
  CHECK(s.count(Split::Train, Polarity::Positive) == 1);
  CHECK(s.total() == 1);
}

TEST_CASE("round trip and tally on random corpora") {
  std::mt19937_64 rng(7);
  const Polarity pols[] = {Polarity::Positive, Polarity::Negative, Polarity::Neutral};
  const std::string texts[] = {"plain", "tab\tinside", "quote \" and \\ slash", "عربي نص", ""};
  for (int round = 0; round < 20; ++round) {
    Corpus c;
    std::size_t tally[2][3] = {};
    const auto n = rng() % 10;
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = pols[rng() % 3];
      const auto s = rng() % 2 ? Split::Train : Split::Test;
      ++tally[static_cast<int>(s)][static_cast<int>(p)];
      c.docs.push_back({"id" + std::to_string(i), texts[rng() % 5], {}, p, s});
    }
    std::ostringstream out;
    write_corpus(out, c, CorpusFormat::Jsonl);
    auto back = parse(out.str());
    CHECK(back.docs == c.docs);

    auto s = split_summary(back);
    CHECK(s.split_total(Split::Train) + s.split_total(Split::Test) == c.size());
    for (int sp = 0; sp < 2; ++sp) {
      for (int p = 0; p < 3; ++p) CHECK(s.count(static_cast<Split>(sp), pols[p]) == tally[sp][p]);
    }
  }
}

TEST_CASE("missing file is an io error") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl", CorpusFormat::Jsonl), Error);
}

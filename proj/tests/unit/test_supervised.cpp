#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "nesa/error.hpp"
#include "nesa/supervised.hpp"
#include "oracles.hpp"

using namespace nesa;

namespace {

constexpr auto P = Polarity::Positive;
constexpr auto N = Polarity::Negative;

LabeledVector ex(std::vector<std::uint32_t> idx, Polarity label) { return {FeatureVector{idx}, label}; }

std::vector<TokenList> random_docs(std::mt19937_64& rng, std::size_t n) {
  std::vector<TokenList> docs(n);
  for (auto& d : docs) {
    const auto len = rng() % 10;
    for (std::size_t i = 0; i < len; ++i) d.push_back("w" + std::to_string(rng() % 6));
  }
  return docs;
}

std::set<TokenList> key_set(const FeatureSpace& s) { return {s.keys().begin(), s.keys().end()}; }

}  // namespace

TEST_CASE("order combinations") {
  auto c = order_combinations(3);
  REQUIRE(c.size() == 7);
  CHECK(c[0] == std::vector<int>{1});
  CHECK(c[3] == std::vector<int>{1, 2});
  CHECK(c[6] == std::vector<int>{1, 2, 3});
  CHECK(describe_orders({1, 2}) == "uni+bi");
  CHECK(NGramConfig{{1, 2}, 2}.describe() == "uni+bi, tf>=2");
  CHECK_THROWS_AS((NGramConfig{{2, 1}, 1}.validate()), Error);
  CHECK_THROWS_AS((NGramConfig{{1}, 0}.validate()), Error);
  CHECK(NGramConfig{{1}, 4}.nonstandard_threshold());
}

TEST_CASE("ngrams stay inside the document") {
  const std::vector<int> orders{1, 2, 3};
  auto g = extract_ngrams({"a", "b"}, orders);
  CHECK(g.size() == 3);  // a, b, a b
}

TEST_CASE("feature space examples") {
  std::vector<TokenList> docs{{"good"}, {"good"}, {"meh"}};
  auto s = build_feature_space(docs, {{1}, 2});
  CHECK(key_set(s) == std::set<TokenList>{{"good"}});
  s = build_feature_space(docs, {{1}, 1});
  CHECK(key_set(s) == std::set<TokenList>{{"good"}, {"meh"}});
}

TEST_CASE("feature spaces agree with a frequency tally and nest by threshold") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 100; ++round) {
    auto docs = random_docs(rng, 20);
    for (const auto& orders : order_combinations(3)) {
      FeatureSpace prev;
      for (int t : {1, 2, 3}) {
        auto s = build_feature_space(docs, {orders, t});
        CHECK(key_set(s) == oracle::tally(docs, orders, t));
        CHECK(std::is_sorted(s.keys().begin(), s.keys().end()));
        if (t > 1) {
          const auto small = key_set(s);
          const auto big = key_set(prev);
          CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
        prev = s;
      }
    }
  }
}

TEST_CASE("vectorize is a binary membership check") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 100; ++round) {
    auto docs = random_docs(rng, 10);
    const std::vector<int> orders{1, 2};
    auto space = build_feature_space(docs, {orders, 1 + static_cast<int>(rng() % 2)});
    auto doc = random_docs(rng, 1)[0];
    auto v = vectorize(doc, space);
    CHECK(std::is_sorted(v.indices.begin(), v.indices.end()));
    CHECK(std::adjacent_find(v.indices.begin(), v.indices.end()) == v.indices.end());
    std::set<std::uint32_t> expected;
    for (std::uint32_t i = 0; i < space.size(); ++i) {
      if (oracle::occurs(doc, space.keys()[i])) expected.insert(i);
    }
    CHECK(std::set<std::uint32_t>(v.indices.begin(), v.indices.end()) == expected);
  }
  auto space = build_feature_space(std::vector<TokenList>{{"x"}}, {{1}, 1});
  CHECK(vectorize({"y"}, space).indices.empty());
  CHECK(vectorize({"x", "x"}, space).indices.size() == 1);
}

TEST_CASE("train split space ignores test documents") {
  std::vector<TokenList> train{{"a", "b"}, {"b", "c"}};
  auto s1 = build_feature_space(train, {{1, 2}, 1});
  auto s2 = build_feature_space(train, {{1, 2}, 1});
  CHECK(s1.keys() == s2.keys());
}

TEST_CASE("naive bayes hand example") {
  // Feature 0 = A, feature 1 = B.
  std::vector<LabeledVector> data{ex({0}, P), ex({0}, P), ex({1}, N), ex({1}, N)};
  auto m = train_nb(data, 2);
  CHECK(std::exp(m.log_present[0][0]) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(std::exp(m.log_present[1][0]) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::exp(m.log_prior[0]) + std::exp(m.log_prior[1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(predict_nb(m, FeatureVector{{0}}).label == P);
  CHECK(predict_nb(m, FeatureVector{{1}}).label == N);
  auto empty = predict_nb(m, FeatureVector{});
  CHECK(empty.posterior_positive == doctest::Approx(0.5));
  CHECK(empty.label == N);

  // Swapping labels and features mirrors the model.
  std::vector<LabeledVector> swapped{ex({1}, N), ex({1}, N), ex({0}, P), ex({0}, P)};
  auto s = train_nb(swapped, 2);
  CHECK(s.log_present[0][0] == m.log_present[0][0]);
  CHECK(s.log_present[1][1] == m.log_present[1][1]);
}

TEST_CASE("one document per class") {
  auto m = train_nb(std::vector<LabeledVector>{ex({0}, P), ex({1}, N)}, 2);
  CHECK(predict_nb(m, FeatureVector{{0}}).label == P);
  CHECK(predict_nb(m, FeatureVector{{1}}).label == N);
}

TEST_CASE("naive bayes errors") {
  CHECK_THROWS_AS(train_nb(std::vector<LabeledVector>{}, 2), Error);
  CHECK_THROWS_AS(train_nb(std::vector<LabeledVector>{ex({0}, P)}, 2), Error);
  CHECK_THROWS_AS(train_nb(std::vector<LabeledVector>{ex({0}, P), ex({5}, N)}, 2), Error);
}

TEST_CASE("naive bayes probabilities are normalised") {
  std::mt19937_64 rng(31);
  std::vector<LabeledVector> data;
  for (int i = 0; i < 40; ++i) {
    std::set<std::uint32_t> idx;
    for (int k = 0; k < 5; ++k) idx.insert(static_cast<std::uint32_t>(rng() % 30));
    data.push_back(ex({idx.begin(), idx.end()}, i % 3 ? P : N));
  }
  auto m = train_nb(data, 30);
  for (std::size_t f = 0; f < 30; ++f) {
    for (int c = 0; c < 2; ++c) {
      CHECK(std::exp(m.log_present[c][f]) + std::exp(m.log_absent[c][f]) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  for (int i = 0; i < 1000; ++i) {
    std::set<std::uint32_t> idx;
    for (int k = 0; k < 6; ++k) idx.insert(static_cast<std::uint32_t>(rng() % 30));
    FeatureVector v{{idx.begin(), idx.end()}};
    auto p = predict_nb(m, v);
    CHECK(std::abs(p.posterior_positive + p.posterior_negative - 1.0) <= 1e-12);
  }
}

TEST_CASE("duplicating a training set with class signal rarely changes a decision") {
  // Features 0-4 lean positive, 5-9 negative, 10-19 are noise.
  std::mt19937_64 rng(37);
  int flips = 0;
  int total = 0;
  auto draw = [&](Polarity label) {
    std::set<std::uint32_t> idx;
    const std::uint32_t base = label == P ? 0 : 5;
    for (int k = 0; k < 3; ++k) idx.insert(base + static_cast<std::uint32_t>(rng() % 5));
    for (int k = 0; k < 2; ++k) idx.insert(10 + static_cast<std::uint32_t>(rng() % 10));
    return FeatureVector{{idx.begin(), idx.end()}};
  };
  for (int round = 0; round < 50; ++round) {
    std::vector<LabeledVector> data;
    for (int i = 0; i < 30; ++i) {
      const auto label = i % 2 ? P : N;
      data.push_back({draw(label), label});
    }
    auto doubled = data;
    doubled.insert(doubled.end(), data.begin(), data.end());
    const auto once = train_nb(data, 20);
    const auto twice = train_nb(doubled, 20);
    for (int i = 0; i < 100; ++i) {
      const auto v = draw(i % 2 ? P : N);
      flips += predict_nb(once, v).label != predict_nb(twice, v).label;
      ++total;
    }
  }
  // Smoothing moves near-tied posteriors, so the invariance is only
  // approximate (see the exact counterexample below); pin the rate at 1%.
  MESSAGE(flips << " of " << total << " decisions changed");
  CHECK(flips * 100 <= total);
}

TEST_CASE("duplication invariance is not exact under add-one smoothing") {
  // Two featureless negatives, one featureless positive, query {0,1}.
  // Once:  pos 1/3*(1/3)^2 = 1/27 < neg 2/3*(1/4)^2 = 1/24  -> Negative.
  // Twice: pos 1/3*(1/4)^2 = 1/48 > neg 2/3*(1/6)^2 = 1/54  -> Positive.
  std::vector<LabeledVector> data{ex({}, N), ex({}, N), ex({}, P)};
  auto doubled = data;
  doubled.insert(doubled.end(), data.begin(), data.end());
  const FeatureVector v{{0, 1}};
  CHECK(predict_nb(train_nb(data, 2), v).label == N);
  CHECK(predict_nb(train_nb(doubled, 2), v).label == P);
}

TEST_CASE("svm separable data, determinism, objective") {
  std::vector<LabeledVector> data;
  for (int i = 0; i < 10; ++i) data.push_back(ex({0, static_cast<std::uint32_t>(2 + i % 3)}, P));
  for (int i = 0; i < 10; ++i) data.push_back(ex({1, static_cast<std::uint32_t>(2 + i % 3)}, N));
  auto a = train_svm(data, 5);
  auto b = train_svm(data, 5);
  CHECK(a == b);
  for (const auto& e : data) CHECK(predict_svm(a, e.features) == e.label);
  SvmModel zero{std::vector<double>(5, 0.0), 0.0, a.params};
  CHECK(svm_objective(a, data) <= svm_objective(zero, data));
  CHECK(predict_svm(zero, FeatureVector{{0}}) == N);

  auto c = train_svm(data, 5, SvmParams{1e-2, 50, 7});
  for (const auto& e : data) CHECK(predict_svm(c, e.features) == e.label);
  CHECK_THROWS_AS(train_svm(data, 5, SvmParams{0.0, 50, 42}), Error);
}

TEST_CASE("svm prediction is a dot product sign and survives column permutation") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int round = 0; round < 200; ++round) {
    SvmModel m{std::vector<double>(8), u(rng), {}};
    for (auto& w : m.weights) w = u(rng);
    std::set<std::uint32_t> idx;
    for (int k = 0; k < 4; ++k) idx.insert(static_cast<std::uint32_t>(rng() % 8));
    FeatureVector v{{idx.begin(), idx.end()}};
    double dot = m.bias;
    for (auto i : idx) dot += m.weights[i];
    CHECK(predict_svm(m, v) == (dot > 0 ? P : N));

    std::vector<std::uint32_t> perm(8);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    SvmModel pm = m;
    for (std::uint32_t i = 0; i < 8; ++i) pm.weights[perm[i]] = m.weights[i];
    std::set<std::uint32_t> pidx;
    for (auto i : idx) pidx.insert(perm[i]);
    CHECK(predict_svm(pm, FeatureVector{{pidx.begin(), pidx.end()}}) == predict_svm(m, v));
  }
  SvmModel unit{{1.0}, 0.0, {}};
  CHECK(predict_svm(unit, FeatureVector{{0}}) == P);
}

#pragma once

// Brute-force reference implementations shared by the unit and acceptance
// tests. They deliberately avoid the library's own helpers (no SurfaceMatcher,
// no segment_and_match, no FeatureSpace) so that agreement means something.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nesa/corpus.hpp"
#include "nesa/lexicon.hpp"
#include "nesa/ne_provider.hpp"
#include "nesa/ne_sentiment.hpp"

namespace oracle {

using Tokens = std::vector<std::string>;

inline bool occurs(const Tokens& hay, const Tokens& needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < needle.size(); ++k) all = all && hay[i + k] == needle[k];
    if (all) return true;
  }
  return false;
}

struct NeTally {
  std::map<std::string, long> score;
  std::map<std::string, nesa::Polarity> assigned;
  std::set<std::string> unassigned;
};

// Majority of attitudes, counted the slow way: one pass per (entity, document).
inline NeTally ne_polarity(const nesa::Corpus& corpus, const nesa::NeAnnotations& ann, nesa::NeScope scope) {
  auto in_scope = [&](const nesa::Document& d) {
    return scope == nesa::NeScope::AllLabeled || d.split == nesa::Split::Train;
  };
  std::map<std::string, Tokens> surfaces;
  for (const auto& d : corpus.docs) {
    if (!in_scope(d)) continue;
    auto it = ann.by_doc.find(d.id);
    if (it == ann.by_doc.end()) continue;
    for (const auto& e : it->second) {
      std::string key;
      for (const auto& t : e.surface) key += (key.empty() ? "" : " ") + t;
      surfaces[key] = e.surface;
    }
  }
  NeTally out;
  for (const auto& [key, surface] : surfaces) {
    long pos = 0;
    long neg = 0;
    for (const auto& d : corpus.docs) {
      if (!in_scope(d) || !occurs(d.tokens, surface)) continue;
      if (d.gold == nesa::Polarity::Positive) ++pos;
      if (d.gold == nesa::Polarity::Negative) ++neg;
    }
    out.score[key] = pos - neg;
    if (pos > neg) out.assigned[key] = nesa::Polarity::Positive;
    else if (neg > pos) out.assigned[key] = nesa::Polarity::Negative;
    else out.unassigned.insert(key);
  }
  return out;
}

struct Entry {
  Tokens term;
  nesa::Rational weight;
};

// Naive greedy uni+bi segmentation over a plain entry list; the last entry
// for a term wins, as with a file where later lines override earlier ones.
inline nesa::Rational sfs(const Tokens& tokens, const std::vector<Entry>& entries, bool bigrams) {
  auto lookup = [&](const Tokens& term) -> const Entry* {
    const Entry* hit = nullptr;
    for (const auto& e : entries) {
      if (e.term == term) hit = &e;
    }
    return hit;
  };
  nesa::Rational total(0);
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (bigrams && i + 1 < tokens.size()) {
      if (const auto* e = lookup({tokens[i], tokens[i + 1]})) {
        total += e->weight;
        i += 2;
        continue;
      }
    }
    if (const auto* e = lookup({tokens[i]})) total += e->weight;
    ++i;
  }
  return total;
}

struct Metrics {
  double precision[2];  // [positive, negative]
  double recall[2];
  double f1[2];
  double macro_p;
  double macro_r;
  double macro_f1;
  double accuracy;
};

inline Metrics metrics(const std::vector<nesa::Polarity>& pred, const std::vector<nesa::Polarity>& gold) {
  Metrics m{};
  const nesa::Polarity cls[2] = {nesa::Polarity::Positive, nesa::Polarity::Negative};
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == gold[i];
  m.accuracy = pred.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(pred.size());
  for (int c = 0; c < 2; ++c) {
    double hit = 0, predicted = 0, actual = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (pred[i] == cls[c]) predicted += 1;
      if (gold[i] == cls[c]) actual += 1;
      if (pred[i] == cls[c] && gold[i] == cls[c]) hit += 1;
    }
    m.precision[c] = predicted > 0 ? hit / predicted : 0.0;
    m.recall[c] = actual > 0 ? hit / actual : 0.0;
    const double s = m.precision[c] + m.recall[c];
    m.f1[c] = s > 0 ? 2 * m.precision[c] * m.recall[c] / s : 0.0;
  }
  m.macro_p = (m.precision[0] + m.precision[1]) / 2;
  m.macro_r = (m.recall[0] + m.recall[1]) / 2;
  m.macro_f1 = (m.f1[0] + m.f1[1]) / 2;
  return m;
}

// n-grams whose total occurrence count across docs reaches the threshold.
inline std::set<Tokens> tally(const std::vector<Tokens>& docs, const std::vector<int>& orders, int threshold) {
  std::map<Tokens, int> counts;
  for (const auto& d : docs) {
    for (int n : orders) {
      for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= d.size(); ++i) {
        counts[Tokens(d.begin() + static_cast<long>(i), d.begin() + static_cast<long>(i) + n)] += 1;
      }
    }
  }
  std::set<Tokens> out;
  for (const auto& [k, c] : counts) {
    if (c >= threshold) out.insert(k);
  }
  return out;
}

// Small random corpora over a tiny vocabulary so entities collide often.
struct RandomCorpus {
  nesa::Corpus corpus;
  nesa::NeAnnotations annotations;
};

inline RandomCorpus random_corpus(std::mt19937_64& rng, std::size_t max_docs, std::size_t max_entities) {
  std::uniform_int_distribution<std::size_t> ndocs(1, max_docs);
  std::uniform_int_distribution<std::size_t> nents(1, max_entities);
  std::uniform_int_distribution<int> word(0, 7);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_int_distribution<int> label(0, 2);
  std::uniform_int_distribution<int> coin(0, 3);

  std::vector<Tokens> entities;
  const auto e = nents(rng);
  for (std::size_t i = 0; i < e; ++i) {
    Tokens s{"e" + std::to_string(i)};
    if (coin(rng) == 0) s.push_back("w" + std::to_string(word(rng)));
    entities.push_back(s);
  }
  std::uniform_int_distribution<std::size_t> pick(0, entities.size() - 1);

  RandomCorpus out;
  const auto n = ndocs(rng);
  for (std::size_t i = 0; i < n; ++i) {
    nesa::Document d;
    d.id = "d" + std::to_string(i);
    const int words = len(rng);
    for (int k = 0; k < words; ++k) d.tokens.push_back("w" + std::to_string(word(rng)));
    const int mentions = coin(rng);
    for (int k = 0; k < mentions; ++k) {
      const auto& s = entities[pick(rng)];
      std::uniform_int_distribution<std::size_t> at(0, d.tokens.size());
      d.tokens.insert(d.tokens.begin() + static_cast<long>(at(rng)), s.begin(), s.end());
      // Annotate most inserted mentions; some are left for the counter to find.
      if (coin(rng) != 0) out.annotations.add(d.id, nesa::NamedEntity{s, std::nullopt});
    }
    d.raw_text = nesa::join_tokens(d.tokens);
    const int l = label(rng);
    d.gold = l == 0 ? nesa::Polarity::Positive : l == 1 ? nesa::Polarity::Negative : nesa::Polarity::Neutral;
    d.split = coin(rng) == 0 ? nesa::Split::Test : nesa::Split::Train;
    out.corpus.docs.push_back(std::move(d));
  }
  out.corpus.docs.front().split = nesa::Split::Train;
  return out;
}

}  // namespace oracle

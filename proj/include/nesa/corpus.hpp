#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nesa {

enum class Polarity { Positive, Negative, Neutral };

enum class Split { Train, Test };

enum class CorpusFormat { Jsonl, Tsv };

using TokenList = std::vector<std::string>;

// Serialized forms are the lowercase names: "positive", "negative", "neutral".
std::string_view to_string(Polarity p);
std::string_view to_string(Split s);
std::optional<Polarity> parse_polarity(std::string_view s);
std::optional<Split> parse_split(std::string_view s);
std::optional<CorpusFormat> parse_corpus_format(std::string_view s);

inline bool is_binary(Polarity p) { return p != Polarity::Neutral; }

struct Document {
  std::string id;
  std::string raw_text;
  TokenList tokens;  // empty until preprocessing
  Polarity gold = Polarity::Neutral;
  Split split = Split::Train;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::vector<Document> docs;
  std::string provenance;

  std::size_t size() const { return docs.size(); }
  bool operator==(const Corpus&) const = default;
};

// Throws DuplicateId if two documents share an id.
void check_unique_ids(const Corpus& corpus);

// Record order is preserved. Errors: MissingField, DuplicateId, BadLabel,
// BadSplit, Io.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
Corpus parse_corpus(std::istream& in, CorpusFormat format, std::string provenance);

// Writes id/text/label/split records. When write_tokens is set, JSONL records
// also carry the token list (ignored on load).
void write_corpus(std::ostream& out, const Corpus& corpus, CorpusFormat format,
                  bool write_tokens = false);

class SplitSummary {
 public:
  std::size_t count(Split s, Polarity p) const {
    return counts_[static_cast<std::size_t>(s)][static_cast<std::size_t>(p)];
  }
  std::size_t split_total(Split s) const;
  std::size_t total() const;

  void add(Split s, Polarity p) { ++counts_[static_cast<std::size_t>(s)][static_cast<std::size_t>(p)]; }

  bool operator==(const SplitSummary&) const = default;

 private:
  std::array<std::array<std::size_t, 3>, 2> counts_{};
};

SplitSummary split_summary(const Corpus& corpus);

}  // namespace nesa

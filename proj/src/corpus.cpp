#include "nesa/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "nesa/error.hpp"

namespace nesa {

using nlohmann::json;

std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Neutral: return "neutral";
  }
  return "neutral";
}

std::string_view to_string(Split s) { return s == Split::Train ? "train" : "test"; }

std::optional<Polarity> parse_polarity(std::string_view s) {
  if (s == "positive") return Polarity::Positive;
  if (s == "negative") return Polarity::Negative;
  if (s == "neutral") return Polarity::Neutral;
  return std::nullopt;
}

std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "test") return Split::Test;
  return std::nullopt;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
  if (s == "jsonl") return CorpusFormat::Jsonl;
  if (s == "tsv") return CorpusFormat::Tsv;
  return std::nullopt;
}

void check_unique_ids(const Corpus& corpus) {
  std::unordered_set<std::string_view> seen;
  for (const auto& doc : corpus.docs) {
    if (!seen.insert(doc.id).second) throw Error(ErrorCode::DuplicateId, doc.id);
  }
}

namespace {

Document make_document(std::size_t record, std::string id, std::string text,
                       std::string_view label, std::string_view split) {
  auto pol = parse_polarity(label);
  if (!pol) throw Error(ErrorCode::BadLabel, "'" + std::string(label) + "' (record " + std::to_string(record) + ")");
  auto sp = parse_split(split);
  if (!sp) throw Error(ErrorCode::BadSplit, "'" + std::string(split) + "' (record " + std::to_string(record) + ")");
  return Document{std::move(id), std::move(text), {}, *pol, *sp};
}

std::string string_field(const json& rec, const char* name, std::size_t record) {
  auto it = rec.find(name);
  if (it == rec.end() || !it->is_string()) {
    throw Error(ErrorCode::MissingField, std::string(name) + " (record " + std::to_string(record) + ")");
  }
  return it->get<std::string>();
}

Document parse_jsonl_record(const std::string& line, std::size_t record) {
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MissingField, "record " + std::to_string(record) + " is not valid JSON: " + e.what());
  }
  if (!rec.is_object()) throw Error(ErrorCode::MissingField, "record " + std::to_string(record) + " is not an object");
  auto id = string_field(rec, "id", record);
  auto text = string_field(rec, "text", record);
  auto label = string_field(rec, "label", record);
  auto split = string_field(rec, "split", record);
  return make_document(record, std::move(id), std::move(text), label, split);
}

Document parse_tsv_record(const std::string& line, std::size_t record) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  if (cols.size() != 4) {
    throw Error(ErrorCode::MissingField, "record " + std::to_string(record) + " has " +
                                             std::to_string(cols.size()) + " columns, expected 4");
  }
  return make_document(record, std::move(cols[0]), std::move(cols[1]), cols[2], cols[3]);
}

}  // namespace

Corpus parse_corpus(std::istream& in, CorpusFormat format, std::string provenance) {
  Corpus corpus;
  corpus.provenance = std::move(provenance);
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++record;
    corpus.docs.push_back(format == CorpusFormat::Jsonl ? parse_jsonl_record(line, record)
                                                        : parse_tsv_record(line, record));
  }
  check_unique_ids(corpus);
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open corpus " + path.string());
  return parse_corpus(in, format, path.string());
}

void write_corpus(std::ostream& out, const Corpus& corpus, CorpusFormat format, bool write_tokens) {
  for (const auto& doc : corpus.docs) {
    if (format == CorpusFormat::Jsonl) {
      json rec = {{"id", doc.id},
                  {"text", doc.raw_text},
                  {"label", std::string(to_string(doc.gold))},
                  {"split", std::string(to_string(doc.split))}};
      if (write_tokens) rec["tokens"] = doc.tokens;
      out << rec.dump() << '\n';
    } else {
      if (doc.id.find_first_of("\t\n") != std::string::npos ||
          doc.raw_text.find_first_of("\t\n") != std::string::npos) {
        throw Error(ErrorCode::Io, "document " + doc.id + " cannot be written as TSV (embedded tab or newline)");
      }
      out << doc.id << '\t' << doc.raw_text << '\t' << to_string(doc.gold) << '\t' << to_string(doc.split) << '\n';
    }
  }
}

std::size_t SplitSummary::split_total(Split s) const {
  const auto& row = counts_[static_cast<std::size_t>(s)];
  return row[0] + row[1] + row[2];
}

std::size_t SplitSummary::total() const { return split_total(Split::Train) + split_total(Split::Test); }

SplitSummary split_summary(const Corpus& corpus) {
  SplitSummary summary;
  for (const auto& doc : corpus.docs) summary.add(doc.split, doc.gold);
  return summary;
}

}  // namespace nesa

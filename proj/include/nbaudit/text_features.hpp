#ifndef NBAUDIT_TEXT_FEATURES_HPP
#define NBAUDIT_TEXT_FEATURES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nbaudit/dataset.hpp"
#include "nbaudit/detail/csv.hpp"
#include "nbaudit/error.hpp"

namespace nbaudit {

/// Label column used by vectorized message datasets. Tokens are lowercase
/// alphanumerics, so it never collides with a keyword column.
inline const std::string kMessageLabelColumn = "_label";

/// Lowercases and splits on runs of non-[A-Za-z0-9] bytes.
inline std::vector<std::string> tokenize(std::string_view message) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : message) {
    auto u = static_cast<unsigned char>(ch);
    bool alnum = (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z');
    if (alnum) {
      cur.push_back(static_cast<char>(u >= 'A' && u <= 'Z' ? u - 'A' + 'a' : u));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

/// Common English function words. The same list ships as data/stopwords.txt.
inline std::set<std::string> default_stopwords() {
  return {"a",    "about", "after", "all",   "also",  "am",    "an",    "and",   "any",
          "are",  "as",    "at",    "be",    "been",  "but",   "by",    "can",   "do",
          "for",  "from",  "had",   "has",   "have",  "he",    "her",   "him",   "his",
          "i",    "if",    "in",    "into",  "is",    "it",    "its",   "me",    "my",
          "no",   "not",   "of",    "on",    "or",    "our",   "she",   "so",    "than",
          "that", "the",   "their", "them",  "then",  "there", "they",  "this",  "to",
          "too",  "u",     "up",    "us",    "was",   "we",    "were",  "what",  "when",
          "which","who",   "will",  "with",  "would", "you",   "your"};
}

/// One token per line; blank lines and '#' comments ignored.
inline std::set<std::string> parse_stopwords(std::string_view text) {
  std::set<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = detail::trim(text.substr(pos, nl == text.npos ? text.npos : nl - pos));
    pos = nl == text.npos ? text.size() : nl + 1;
    if (line.empty() || line.front() == '#') continue;
    for (auto& t : tokenize(line)) out.insert(t);
  }
  return out;
}

class KeywordDictionary {
public:
  KeywordDictionary(std::vector<std::string> keywords, std::set<std::string> stopwords)
      : keywords_(std::move(keywords)), stopwords_(std::move(stopwords)) {
    if (keywords_.empty()) throw Error(ErrorKind::data, "keyword dictionary is empty");
    for (std::size_t i = 0; i < keywords_.size(); ++i) {
      if (stopwords_.count(keywords_[i]))
        throw Error(ErrorKind::data, "keyword '" + keywords_[i] + "' is a stopword");
      if (!index_.emplace(keywords_[i], i).second)
        throw Error(ErrorKind::data, "duplicate keyword '" + keywords_[i] + "'");
    }
  }

  const std::vector<std::string>& keywords() const noexcept { return keywords_; }
  const std::set<std::string>& stopwords() const noexcept { return stopwords_; }
  std::size_t size() const noexcept { return keywords_.size(); }

  std::optional<std::size_t> index_of(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  AttributeSchema schema() const {
    std::vector<Column> cols;
    for (const auto& k : keywords_) cols.push_back({k, AttributeKind::count});
    return AttributeSchema(std::move(cols), kMessageLabelColumn);
  }

private:
  std::vector<std::string> keywords_;
  std::set<std::string> stopwords_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Tokens with corpus frequency >= min_count, stopwords removed,
/// ordered by descending frequency then lexicographically.
inline KeywordDictionary build_dictionary(std::span<const std::string> corpus,
                                          const std::set<std::string>& stopwords,
                                          std::size_t min_count = 2) {
  if (corpus.empty()) throw Error(ErrorKind::data, "empty corpus");
  std::map<std::string, std::uint64_t> freq;
  for (const auto& msg : corpus)
    for (auto& t : tokenize(msg)) ++freq[t];
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [tok, n] : freq)
    if (n >= min_count && !stopwords.count(tok)) kept.emplace_back(tok, n);
  if (kept.empty())
    throw Error(ErrorKind::data, "no token reaches min_count " + std::to_string(min_count));
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> keywords;
  for (auto& [tok, n] : kept) keywords.push_back(tok);
  return KeywordDictionary(std::move(keywords), stopwords);
}

/// Per-message keyword counts aligned with dictionary order.
using TokenCounts = std::vector<std::vector<std::uint64_t>>;

inline std::vector<std::uint64_t> count_keywords(std::string_view message,
                                                 const KeywordDictionary& dict) {
  std::vector<std::uint64_t> v(dict.size(), 0);
  for (const auto& t : tokenize(message))
    if (auto k = dict.index_of(t)) ++v[*k];
  return v;
}

inline TokenCounts count_all(std::span<const std::string> messages,
                             const KeywordDictionary& dict) {
  TokenCounts out;
  out.reserve(messages.size());
  for (const auto& m : messages) out.push_back(count_keywords(m, dict));
  return out;
}

/// Count records ready for the classifier; out-of-dictionary tokens are ignored.
inline LabeledDataset vectorize(std::span<const std::string> messages,
                                std::span<const ClassLabel> labels,
                                const KeywordDictionary& dict) {
  if (messages.size() != labels.size())
    throw Error(ErrorKind::data, "messages and labels differ in length");
  std::vector<Record> recs;
  recs.reserve(messages.size());
  for (std::size_t i = 0; i < messages.size(); ++i) {
    auto counts = count_keywords(messages[i], dict);
    recs.push_back({std::vector<double>(counts.begin(), counts.end()), std::to_string(i)});
  }
  return LabeledDataset(dict.schema(), std::move(recs),
                        std::vector<ClassLabel>(labels.begin(), labels.end()));
}

/// Column sums over the rows in `subset`.
inline std::vector<std::uint64_t> aggregate(const TokenCounts& counts,
                                            std::span<const std::size_t> subset) {
  std::vector<std::uint64_t> out(counts.empty() ? 0 : counts.front().size(), 0);
  for (auto i : subset) {
    const auto& row = counts.at(i);
    for (std::size_t k = 0; k < row.size(); ++k) out[k] += row[k];
  }
  return out;
}

inline std::vector<std::uint64_t> aggregate(const TokenCounts& counts) {
  std::vector<std::size_t> all(counts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return aggregate(counts, all);
}

using KeywordRanking = std::vector<std::pair<std::string, std::uint64_t>>;

/// Top k keywords with non-zero aggregate count; ties broken lexicographically.
inline KeywordRanking top_keywords(const KeywordDictionary& dict,
                                   std::span<const std::uint64_t> totals, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::config, "top_keywords needs k >= 1");
  if (totals.size() != dict.size())
    throw Error(ErrorKind::data, "aggregate counts do not match the dictionary");
  KeywordRanking r;
  for (std::size_t i = 0; i < totals.size(); ++i)
    if (totals[i] > 0) r.emplace_back(dict.keywords()[i], totals[i]);
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (r.size() > k) r.resize(k);
  return r;
}

/// True when `sample` lists the same tokens as `reference` in the same order.
inline bool ranking_preserved(const KeywordRanking& reference, const KeywordRanking& sample) {
  if (reference.size() != sample.size()) return false;
  for (std::size_t i = 0; i < reference.size(); ++i)
    if (reference[i].first != sample[i].first) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Corpus input and dictionary documents

struct Corpus {
  std::vector<std::string> messages;
  std::vector<ClassLabel> labels;
};

/// CSV with a header containing `label` and `text` columns.
inline Corpus parse_message_csv(std::string_view text) {
  auto rows = detail::parse_csv(text);
  if (rows.size() < 2) throw Error(ErrorKind::data, "empty corpus");
  const auto& h = rows.front();
  auto li = std::find(h.begin(), h.end(), "label");
  auto ti = std::find(h.begin(), h.end(), "text");
  if (li == h.end() || ti == h.end())
    throw Error(ErrorKind::schema, "corpus CSV needs 'label' and 'text' columns");
  auto lp = static_cast<std::size_t>(li - h.begin()), tp = static_cast<std::size_t>(ti - h.begin());
  Corpus c;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != h.size())
      throw Error(ErrorKind::parse, "wrong number of cells", r);
    if (rows[r][lp].empty()) throw Error(ErrorKind::parse, "empty label", r);
    c.labels.emplace_back(rows[r][lp]);
    c.messages.push_back(rows[r][tp]);
  }
  return c;
}

/// One message per line plus a sidecar file with one label per line.
inline Corpus parse_message_lines(std::string_view messages, std::string_view labels) {
  auto split_lines = [](std::string_view t) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < t.size()) {
      auto nl = t.find('\n', pos);
      auto line = t.substr(pos, nl == t.npos ? t.npos : nl - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      out.emplace_back(line);
      pos = nl == t.npos ? t.size() : nl + 1;
    }
    return out;
  };
  auto msgs = split_lines(messages);
  auto labs = split_lines(labels);
  if (msgs.size() != labs.size())
    throw Error(ErrorKind::data, "message file has " + std::to_string(msgs.size()) +
                                     " lines, label file " + std::to_string(labs.size()));
  if (msgs.empty()) throw Error(ErrorKind::data, "empty corpus");
  Corpus c;
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    auto l = detail::trim(labs[i]);
    if (l.empty()) throw Error(ErrorKind::parse, "empty label", i + 1);
    c.labels.emplace_back(std::string(l));
    c.messages.push_back(std::move(msgs[i]));
  }
  return c;
}

inline nlohmann::ordered_json dictionary_to_json(const KeywordDictionary& d) {
  nlohmann::ordered_json j;
  j["format"] = "nbaudit-keyword-dictionary";
  j["schema_version"] = 1;
  j["keywords"] = d.keywords();
  j["stopwords"] = std::vector<std::string>(d.stopwords().begin(), d.stopwords().end());
  return j;
}

inline KeywordDictionary dictionary_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "nbaudit-keyword-dictionary")
      throw Error(ErrorKind::parse, "not a keyword dictionary document");
    auto sw = j.at("stopwords").get<std::vector<std::string>>();
    return KeywordDictionary(j.at("keywords").get<std::vector<std::string>>(),
                             std::set<std::string>(sw.begin(), sw.end()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed dictionary document: ") + e.what());
  }
}

}  // namespace nbaudit

#endif  // NBAUDIT_TEXT_FEATURES_HPP

#ifndef NBAUDIT_CONFIG_HPP
#define NBAUDIT_CONFIG_HPP

// Run configuration: a flat "key = value" text file, one entry per line,
// '#' starts a comment, values may be double-quoted. Command-line
// overrides are applied on top with the same keys.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbaudit/detail/csv.hpp"
#include "nbaudit/error.hpp"

namespace nbaudit {

using ConfigMap = std::map<std::string, std::string>;

inline ConfigMap parse_config(std::string_view text) {
  ConfigMap out;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == text.npos ? text.npos : nl - pos);
    pos = nl == text.npos ? text.size() : nl + 1;
    ++line_no;
    // strip comments outside quotes
    bool q = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') q = !q;
      if (line[i] == '#' && !q) {
        line = line.substr(0, i);
        break;
      }
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == line.npos) throw Error(ErrorKind::config, "expected 'key = value'", line_no);
    auto key = std::string(detail::trim(line.substr(0, eq)));
    auto val = detail::trim(line.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
    if (key.empty()) throw Error(ErrorKind::config, "empty key", line_no);
    if (out.count(key)) throw Error(ErrorKind::config, "duplicate key '" + key + "'", line_no);
    out[key] = std::string(val);
  }
  return out;
}

struct RunConfig {
  std::string mode = "tabular";  // tabular | text | graph
  std::string input;
  std::string format = "csv";  // tabular: csv | jsonl; text: csv | lines
  std::string labels_file;     // text/lines sidecar
  std::string label_column = "label";
  std::optional<std::string> id_column;
  std::string columns;  // "name:kind, ..."; empty means every other column, continuous
  double train_fraction = 2.0 / 3.0;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  double alpha = 1.0;

  std::string strategy = "user";  // user | item | hybrid
  std::string target_class;       // empty: every class
  std::optional<double> confidence, lower, upper;
  std::optional<double> sigma1, sigma2, sigma3;
  std::size_t max_k = 3;
  std::size_t candidate_cap = 1'000'000;

  std::string stopwords;  // empty: built-in list
  std::size_t min_count = 2;
  std::size_t top_k = 20;
  std::string binning;  // empty: built-in degree/clustering table

  std::string model;       // default <out>/model.json
  std::string evidence;    // default <out>/evidence.json
  std::string dictionary;  // default <out>/dictionary.json
  std::optional<std::size_t> ks_m;
  std::size_t histogram_bins = 10;

  std::string model_path() const { return model.empty() ? out + "/model.json" : model; }
  std::string evidence_path() const { return evidence.empty() ? out + "/evidence.json" : evidence; }
  std::string dictionary_path() const {
    return dictionary.empty() ? out + "/dictionary.json" : dictionary;
  }

  void require_seed() const {
    if (!seed) throw Error(ErrorKind::config, "seed is mandatory (config 'seed' or --seed)");
  }

  /// Checks the parameters the chosen sampling strategy needs.
  void validate_sampling() const {
    auto in_unit = [](double s) { return s > 0.0 && s <= 1.0; };
    if (strategy == "user" || strategy == "hybrid") {
      if (!confidence && !(lower && upper))
        throw Error(ErrorKind::config, strategy + " strategy needs 'confidence' or 'lower'+'upper'");
      if (confidence && (lower || upper))
        throw Error(ErrorKind::config, "give either 'confidence' or 'lower'+'upper', not both");
    }
    if (strategy == "item" || strategy == "hybrid") {
      if (!sigma1) throw Error(ErrorKind::config, strategy + " strategy needs 'sigma1'");
    }
    if (strategy != "user" && strategy != "item" && strategy != "hybrid")
      throw Error(ErrorKind::config, "unknown strategy '" + strategy + "'");
    if (sigma1 && !in_unit(*sigma1)) throw Error(ErrorKind::config, "sigma1 must lie in (0,1]");
    if (sigma2 && !(*sigma2 > 0)) throw Error(ErrorKind::config, "sigma2 must be > 0");
    if (sigma3 && !(*sigma3 > 0)) throw Error(ErrorKind::config, "sigma3 must be > 0");
    if (sigma3 && !sigma2) throw Error(ErrorKind::config, "sigma3 needs sigma2");
    if (max_k < 2) throw Error(ErrorKind::config, "max_k must be >= 2");
  }
};

namespace detail {

inline double config_real(const std::string& key, const std::string& v) {
  double d = 0;
  if (!parse_double(v, d)) throw Error(ErrorKind::config, "'" + key + "' needs a number, got '" + v + "'");
  return d;
}

inline std::uint64_t config_uint(const std::string& key, const std::string& v) {
  std::uint64_t u = 0;
  auto s = trim(v);
  auto res = std::from_chars(s.data(), s.data() + s.size(), u);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::config, "'" + key + "' needs a non-negative integer, got '" + v + "'");
  return u;
}

inline std::string resolve_path(const std::string& v, const std::filesystem::path& base) {
  if (v.empty() || base.empty()) return v;
  std::filesystem::path p(v);
  if (p.is_absolute()) return v;
  return (base / p).lexically_normal().string();
}

}  // namespace detail

/// Applies `entries` to `cfg`. Relative paths resolve against `base_dir` when it is non-empty.
inline void apply_config(RunConfig& cfg, const ConfigMap& entries,
                         const std::filesystem::path& base_dir = {}) {
  using namespace detail;
  for (const auto& [k, v] : entries) {
    auto path = [&] { return resolve_path(v, base_dir); };
    if (k == "mode") cfg.mode = v;
    else if (k == "input") cfg.input = path();
    else if (k == "format") cfg.format = v;
    else if (k == "labels_file") cfg.labels_file = path();
    else if (k == "label_column") cfg.label_column = v;
    else if (k == "id_column") cfg.id_column = v.empty() ? std::nullopt : std::optional(v);
    else if (k == "columns") cfg.columns = v;
    else if (k == "train_fraction") cfg.train_fraction = config_real(k, v);
    else if (k == "seed") cfg.seed = config_uint(k, v);
    else if (k == "out") cfg.out = path();
    else if (k == "alpha") cfg.alpha = config_real(k, v);
    else if (k == "strategy") cfg.strategy = v;
    else if (k == "class") cfg.target_class = v;
    else if (k == "confidence") cfg.confidence = config_real(k, v);
    else if (k == "lower") cfg.lower = config_real(k, v);
    else if (k == "upper") cfg.upper = config_real(k, v);
    else if (k == "sigma1") cfg.sigma1 = config_real(k, v);
    else if (k == "sigma2") cfg.sigma2 = config_real(k, v);
    else if (k == "sigma3") cfg.sigma3 = config_real(k, v);
    else if (k == "max_k") cfg.max_k = config_uint(k, v);
    else if (k == "candidate_cap") cfg.candidate_cap = config_uint(k, v);
    else if (k == "stopwords") cfg.stopwords = path();
    else if (k == "min_count") cfg.min_count = config_uint(k, v);
    else if (k == "top_k") cfg.top_k = config_uint(k, v);
    else if (k == "binning") cfg.binning = path();
    else if (k == "model") cfg.model = path();
    else if (k == "evidence") cfg.evidence = path();
    else if (k == "dictionary") cfg.dictionary = path();
    else if (k == "ks_m") cfg.ks_m = config_uint(k, v);
    else if (k == "histogram_bins") cfg.histogram_bins = config_uint(k, v);
    else throw Error(ErrorKind::config, "unknown config key '" + k + "'");
  }
  if (cfg.mode != "tabular" && cfg.mode != "text" && cfg.mode != "graph")
    throw Error(ErrorKind::config, "mode must be tabular, text or graph");
}

inline RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  auto entries = parse_config(detail::read_file(path));
  apply_config(cfg, entries, std::filesystem::path(path).parent_path());
  return cfg;
}

/// "name:kind, name:kind" (kind defaults to continuous).
inline std::vector<std::pair<std::string, std::string>> parse_column_list(std::string_view s) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    auto item = detail::trim(s.substr(pos, comma == s.npos ? s.npos : comma - pos));
    pos = comma == s.npos ? s.size() + 1 : comma + 1;
    if (item.empty()) continue;
    auto colon = item.rfind(':');
    if (colon == item.npos) {
      out.emplace_back(std::string(item), "continuous");
    } else {
      out.emplace_back(std::string(detail::trim(item.substr(0, colon))),
                       std::string(detail::trim(item.substr(colon + 1))));
    }
  }
  return out;
}

}  // namespace nbaudit

#endif  // NBAUDIT_CONFIG_HPP

#ifndef NBAUDIT_DATASET_HPP
#define NBAUDIT_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nbaudit/detail/csv.hpp"
#include "nbaudit/error.hpp"
#include "nbaudit/random.hpp"

namespace nbaudit {

enum class AttributeKind { continuous, count };

inline std::string_view to_string(AttributeKind k) {
  return k == AttributeKind::continuous ? "continuous" : "count";
}

inline AttributeKind parse_attribute_kind(std::string_view s) {
  if (s == "continuous") return AttributeKind::continuous;
  if (s == "count") return AttributeKind::count;
  throw Error(ErrorKind::schema, "unknown attribute kind '" + std::string(s) + "'");
}

struct Column {
  std::string name;
  AttributeKind kind = AttributeKind::continuous;

  bool operator==(const Column&) const = default;
};

class ClassLabel {
public:
  explicit ClassLabel(std::string name) : name_(std::move(name)) {
    if (name_.empty()) throw Error(ErrorKind::data, "class label must be non-empty");
  }

  const std::string& name() const noexcept { return name_; }

  auto operator<=>(const ClassLabel&) const = default;
  bool operator==(const ClassLabel&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const ClassLabel& l) {
    return os << l.name_;
  }

private:
  std::string name_;
};

/// Ordered attribute columns plus the label column (and optional id column).
class AttributeSchema {
public:
  AttributeSchema(std::vector<Column> columns, std::string label_column,
                  std::optional<std::string> id_column = std::nullopt)
      : columns_(std::move(columns)),
        label_column_(std::move(label_column)),
        id_column_(std::move(id_column)) {
    if (columns_.empty())
      throw Error(ErrorKind::schema, "schema needs at least one attribute column");
    if (label_column_.empty()) throw Error(ErrorKind::schema, "label column name is empty");
    std::unordered_set<std::string> seen;
    for (const auto& c : columns_) {
      if (c.name.empty()) throw Error(ErrorKind::schema, "empty column name");
      if (!seen.insert(c.name).second)
        throw Error(ErrorKind::schema, "duplicate column '" + c.name + "'");
    }
    if (seen.count(label_column_))
      throw Error(ErrorKind::schema,
                  "label column '" + label_column_ + "' is also an attribute column");
    if (id_column_) {
      if (seen.count(*id_column_) || *id_column_ == label_column_)
        throw Error(ErrorKind::schema, "id column '" + *id_column_ + "' clashes");
    }
  }

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::string& label_column() const noexcept { return label_column_; }
  const std::optional<std::string>& id_column() const noexcept { return id_column_; }
  std::size_t size() const noexcept { return columns_.size(); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      if (columns_[i].name == name) return i;
    return std::nullopt;
  }

  bool operator==(const AttributeSchema&) const = default;

private:
  std::vector<Column> columns_;
  std::string label_column_;
  std::optional<std::string> id_column_;
};

struct Record {
  std::vector<double> values;
  std::string id;

  bool operator==(const Record&) const = default;
};

inline void validate_record(const AttributeSchema& schema, const Record& r) {
  if (r.values.size() != schema.size())
    throw Error(ErrorKind::schema, "record '" + r.id + "' has " +
                                       std::to_string(r.values.size()) + " values, schema has " +
                                       std::to_string(schema.size()));
  for (std::size_t j = 0; j < r.values.size(); ++j) {
    double v = r.values[j];
    const auto& col = schema.columns()[j];
    if (!std::isfinite(v))
      throw Error(ErrorKind::data, "non-finite value in column '" + col.name + "'");
    if (col.kind == AttributeKind::count && (v < 0 || v != std::floor(v)))
      throw Error(ErrorKind::data,
                  "count column '" + col.name + "' needs a non-negative integer");
  }
}

/// N records paired with class labels. Immutable once constructed.
class LabeledDataset {
public:
  LabeledDataset(AttributeSchema schema, std::vector<Record> records,
                 std::vector<ClassLabel> labels)
      : schema_(std::move(schema)), records_(std::move(records)), labels_(std::move(labels)) {
    if (records_.empty()) throw Error(ErrorKind::data, "empty dataset");
    if (records_.size() != labels_.size())
      throw Error(ErrorKind::data, "records and labels differ in length");
    for (const auto& r : records_) validate_record(schema_, r);
  }

  const AttributeSchema& schema() const noexcept { return schema_; }
  const std::vector<Record>& records() const noexcept { return records_; }
  const std::vector<ClassLabel>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return records_.size(); }

  /// Distinct labels in lexicographic order.
  std::vector<ClassLabel> label_set() const {
    std::set<ClassLabel> s(labels_.begin(), labels_.end());
    return {s.begin(), s.end()};
  }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.values.at(j));
    return out;
  }

  /// Rows at `indices`, in the given order.
  LabeledDataset subset(std::span<const std::size_t> indices) const {
    std::vector<Record> recs;
    std::vector<ClassLabel> labs;
    recs.reserve(indices.size());
    labs.reserve(indices.size());
    for (auto i : indices) {
      recs.push_back(records_.at(i));
      labs.push_back(labels_.at(i));
    }
    return LabeledDataset(schema_, std::move(recs), std::move(labs));
  }

  bool operator==(const LabeledDataset&) const = default;

private:
  AttributeSchema schema_;
  std::vector<Record> records_;
  std::vector<ClassLabel> labels_;
};

inline void require_two_classes(const LabeledDataset& d) {
  if (d.label_set().size() < 2)
    throw Error(ErrorKind::data, "need >= 2 classes, found " +
                                     std::to_string(d.label_set().size()));
}

// ---------------------------------------------------------------------------
// CSV

/// Schema with every header column other than label/id treated as continuous.
inline AttributeSchema infer_schema(std::string_view csv_text, const std::string& label_column,
                                    std::optional<std::string> id_column = std::nullopt) {
  auto rows = detail::parse_csv(csv_text);
  if (rows.empty()) throw Error(ErrorKind::data, "empty dataset");
  std::vector<Column> cols;
  bool has_label = false;
  for (const auto& name : rows.front()) {
    if (name == label_column) {
      has_label = true;
      continue;
    }
    if (id_column && name == *id_column) continue;
    cols.push_back({name, AttributeKind::continuous});
  }
  if (!has_label)
    throw Error(ErrorKind::schema, "missing label column '" + label_column + "'");
  return AttributeSchema(std::move(cols), label_column, std::move(id_column));
}

/// Parses CSV text per `schema`. Header columns not named by the schema are ignored.
inline LabeledDataset parse_csv_dataset(std::string_view text, const AttributeSchema& schema) {
  auto rows = detail::parse_csv(text);
  if (rows.empty()) throw Error(ErrorKind::data, "empty dataset");
  const auto& header = rows.front();

  auto find = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorKind::schema, "missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  std::vector<std::size_t> attr_pos;
  for (const auto& c : schema.columns()) attr_pos.push_back(find(c.name));
  std::size_t label_pos = find(schema.label_column());
  std::optional<std::size_t> id_pos;
  if (schema.id_column()) id_pos = find(*schema.id_column());

  if (rows.size() == 1) throw Error(ErrorKind::data, "empty dataset");

  std::vector<Record> records;
  std::vector<ClassLabel> labels;
  records.reserve(rows.size() - 1);
  labels.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      throw Error(ErrorKind::parse,
                  "expected " + std::to_string(header.size()) + " cells, got " +
                      std::to_string(row.size()),
                  r);
    Record rec;
    rec.values.reserve(attr_pos.size());
    for (std::size_t j = 0; j < attr_pos.size(); ++j) {
      const auto& cell = row[attr_pos[j]];
      const auto& col = schema.columns()[j];
      double v = 0;
      if (!detail::parse_double(cell, v) || !std::isfinite(v))
        throw Error(ErrorKind::parse,
                    "cannot parse '" + cell + "' in column '" + col.name + "'", r);
      if (col.kind == AttributeKind::count && (v < 0 || v != std::floor(v)))
        throw Error(ErrorKind::parse,
                    "count column '" + col.name + "' holds '" + cell + "'", r);
      rec.values.push_back(v);
    }
    rec.id = id_pos ? row[*id_pos] : std::to_string(r - 1);
    const auto& lab = row[label_pos];
    if (lab.empty()) throw Error(ErrorKind::parse, "empty label", r);
    records.push_back(std::move(rec));
    labels.emplace_back(lab);
  }
  LabeledDataset out(schema, std::move(records), std::move(labels));
  require_two_classes(out);
  return out;
}

inline LabeledDataset load_csv(const std::string& path, const AttributeSchema& schema) {
  return parse_csv_dataset(detail::read_file(path), schema);
}

/// Canonical CSV: [id,] attributes..., label. Values use shortest round-trip form.
inline std::string to_csv(const LabeledDataset& d) {
  const auto& s = d.schema();
  std::string out;
  detail::CsvRow header;
  if (s.id_column()) header.push_back(*s.id_column());
  for (const auto& c : s.columns()) header.push_back(c.name);
  header.push_back(s.label_column());
  detail::append_row(out, header);
  for (std::size_t i = 0; i < d.size(); ++i) {
    detail::CsvRow row;
    if (s.id_column()) row.push_back(d.records()[i].id);
    for (double v : d.records()[i].values) row.push_back(detail::format_double(v));
    row.push_back(d.labels()[i].name());
    detail::append_row(out, row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON lines: one object per line, keys matching schema names.

inline LabeledDataset parse_jsonl_dataset(std::string_view text, const AttributeSchema& schema) {
  std::vector<Record> records;
  std::vector<ClassLabel> labels;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = detail::trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse, std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw Error(ErrorKind::parse, "expected a JSON object", line_no);
    Record rec;
    for (const auto& c : schema.columns()) {
      auto it = obj.find(c.name);
      if (it == obj.end())
        throw Error(ErrorKind::schema, "missing field '" + c.name + "'", line_no);
      if (!it->is_number())
        throw Error(ErrorKind::parse, "field '" + c.name + "' is not a number", line_no);
      double v = it->get<double>();
      if (c.kind == AttributeKind::count && (v < 0 || v != std::floor(v)))
        throw Error(ErrorKind::parse, "count field '" + c.name + "' is not a count", line_no);
      rec.values.push_back(v);
    }
    auto lab = obj.find(schema.label_column());
    if (lab == obj.end() || !lab->is_string())
      throw Error(ErrorKind::schema, "missing string label '" + schema.label_column() + "'",
                  line_no);
    if (schema.id_column()) {
      auto id = obj.find(*schema.id_column());
      if (id == obj.end()) throw Error(ErrorKind::schema, "missing id field", line_no);
      rec.id = id->is_string() ? id->get<std::string>() : id->dump();
    } else {
      rec.id = std::to_string(records.size());
    }
    records.push_back(std::move(rec));
    labels.emplace_back(lab->get<std::string>());
  }
  if (records.empty()) throw Error(ErrorKind::data, "empty dataset");
  LabeledDataset out(schema, std::move(records), std::move(labels));
  require_two_classes(out);
  return out;
}

inline LabeledDataset load_jsonl(const std::string& path, const AttributeSchema& schema) {
  return parse_jsonl_dataset(detail::read_file(path), schema);
}

// ---------------------------------------------------------------------------
// Splitting and class membership

struct SplitSpec {
  double train_fraction = 2.0 / 3.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
      throw Error(ErrorKind::config, "train_fraction must lie in (0,1)");
  }
};

/// round-half-up(fraction * n), clamped to [1, n-1] so neither side is empty.
inline std::size_t train_size(std::size_t n, double fraction) {
  auto t = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));
  return std::clamp<std::size_t>(t, 1, n - 1);
}

/// Index partition behind split(): shuffled with SplitMix64 + Fisher-Yates,
/// the first train_size() positions go to train. Each side is sorted.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, const SplitSpec& spec) {
  spec.validate();
  if (n < 2) throw Error(ErrorKind::data, "split needs at least 2 records");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  SplitMix64 rng(spec.seed);
  fisher_yates(std::span<std::size_t>(perm), rng);
  auto t = train_size(n, spec.train_fraction);
  std::vector<std::size_t> train(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(t));
  std::vector<std::size_t> test(perm.begin() + static_cast<std::ptrdiff_t>(t), perm.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

inline std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data,
                                                       const SplitSpec& spec) {
  auto [tr, te] = split_indices(data.size(), spec);
  return {data.subset(tr), data.subset(te)};
}

inline std::vector<std::size_t> class_members(const LabeledDataset& data,
                                              const ClassLabel& label) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data.labels()[i] == label) out.push_back(i);
  if (out.empty()) throw Error(ErrorKind::data, "unknown label '" + label.name() + "'");
  return out;
}

}  // namespace nbaudit

#endif  // NBAUDIT_DATASET_HPP

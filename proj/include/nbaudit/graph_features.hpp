#ifndef NBAUDIT_GRAPH_FEATURES_HPP
#define NBAUDIT_GRAPH_FEATURES_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nbaudit/dataset.hpp"
#include "nbaudit/detail/csv.hpp"
#include "nbaudit/error.hpp"

namespace nbaudit {

/// Undirected multigraph: each unordered vertex pair carries an edge multiplicity.
/// Edge direction in the input is dropped; parallel edges are kept as counts.
class MultiGraph {
public:
  std::size_t add_vertex(const std::string& id) {
    auto [it, inserted] = index_.emplace(id, ids_.size());
    if (inserted) {
      ids_.push_back(id);
      adj_.emplace_back();
    }
    return it->second;
  }

  void add_edge(const std::string& a, const std::string& b, std::uint64_t multiplicity = 1) {
    if (a == b) throw Error(ErrorKind::data, "self-loop on '" + a + "'");
    if (multiplicity == 0) throw Error(ErrorKind::data, "edge multiplicity must be >= 1");
    auto u = add_vertex(a), v = add_vertex(b);
    adj_[u][v] += multiplicity;
    adj_[v][u] += multiplicity;
    total_multiplicity_ += multiplicity;
  }

  std::size_t vertex_count() const noexcept { return ids_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return ids_; }
  std::uint64_t total_multiplicity() const noexcept { return total_multiplicity_; }

  std::size_t vertex(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw Error(ErrorKind::data, "unknown vertex '" + std::string(id) + "'");
    return it->second;
  }

  /// Neighbor -> multiplicity, ordered by neighbor index.
  const std::map<std::size_t, std::uint64_t>& neighbors(std::size_t v) const { return adj_.at(v); }

  std::uint64_t multiplicity(std::size_t u, std::size_t v) const {
    const auto& n = adj_.at(u);
    auto it = n.find(v);
    return it == n.end() ? 0 : it->second;
  }

private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::map<std::size_t, std::uint64_t>> adj_;
  std::uint64_t total_multiplicity_ = 0;
};

/// Edge list: one "source,target" (or whitespace separated) pair per line.
/// A line with a single id declares an isolated vertex. Blank lines, '#'
/// comments and a leading "source,target" header are skipped.
inline MultiGraph parse_edges(std::string_view text) {
  MultiGraph g;
  std::size_t line_no = 0, pos = 0;
  bool first = true;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = detail::trim(text.substr(pos, nl == text.npos ? text.npos : nl - pos));
    pos = nl == text.npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    if (line.find(',') != std::string_view::npos) {
      auto rows = detail::parse_csv(line);
      if (rows.size() != 1) throw Error(ErrorKind::parse, "malformed edge line", line_no);
      for (auto& f : rows.front()) fields.emplace_back(detail::trim(f));
    } else {
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) fields.emplace_back(line.substr(i, j - i));
        i = j;
      }
    }
    if (first && fields.size() == 2 && fields[0] == "source" && fields[1] == "target") {
      first = false;
      continue;
    }
    first = false;
    for (const auto& f : fields)
      if (f.empty()) throw Error(ErrorKind::parse, "empty vertex id", line_no);
    if (fields.size() == 1) {
      g.add_vertex(fields[0]);
    } else if (fields.size() == 2) {
      if (fields[0] == fields[1])
        throw Error(ErrorKind::parse, "self-loop on '" + fields[0] + "'", line_no);
      g.add_edge(fields[0], fields[1]);
    } else {
      throw Error(ErrorKind::parse, "expected 'source,target'", line_no);
    }
  }
  return g;
}

inline MultiGraph load_edges(const std::string& path) {
  return parse_edges(detail::read_file(path));
}

/// Sum of incident edge multiplicities.
inline std::uint64_t degree_centrality(const MultiGraph& g, std::size_t v) {
  std::uint64_t d = 0;
  for (const auto& [u, m] : g.neighbors(v)) d += m;
  return d;
}

/// Closed fraction of distinct neighbor pairs on the underlying simple graph;
/// 0 when there are fewer than two distinct neighbors.
inline double clustering_coefficient(const MultiGraph& g, std::size_t v) {
  const auto& nb = g.neighbors(v);
  const std::size_t k = nb.size();
  if (k < 2) return 0.0;
  std::vector<std::size_t> ids;
  ids.reserve(k);
  for (const auto& [u, m] : nb) ids.push_back(u);
  std::size_t closed = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (g.multiplicity(ids[a], ids[b]) > 0) ++closed;
  return 2.0 * static_cast<double>(closed) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

struct VertexFeatures {
  std::uint64_t degree = 0;
  double clustering = 0.0;
};

inline std::vector<VertexFeatures> vertex_features(const MultiGraph& g) {
  std::vector<VertexFeatures> out;
  out.reserve(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out.push_back({degree_centrality(g, v), clustering_coefficient(g, v)});
  return out;
}

/// D in [d_min, d_max) and c in [c_min, c_max]; d_max may be +inf.
struct BinRow {
  double d_min = 0;
  double d_max = std::numeric_limits<double>::infinity();
  double c_min = 0;
  double c_max = 1;
  std::string label;
};

class ClassBinning {
public:
  explicit ClassBinning(std::vector<BinRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw Error(ErrorKind::config, "binning has no rows");
    if (rows_.front().d_min != 0.0)
      throw Error(ErrorKind::config, "binning degree intervals must start at 0");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& r = rows_[i];
      if (r.label.empty()) throw Error(ErrorKind::config, "binning row without label");
      if (!(r.d_min < r.d_max) || !(r.c_min <= r.c_max))
        throw Error(ErrorKind::config, "binning row " + std::to_string(i + 1) + " is empty");
      if (i + 1 < rows_.size() && r.d_max != rows_[i + 1].d_min)
        throw Error(ErrorKind::config, "binning degree intervals must be contiguous");
    }
    if (!std::isinf(rows_.back().d_max))
      throw Error(ErrorKind::config, "last binning degree interval must be unbounded");
  }

  /// Default degree/clustering classes:
  /// D in [0,2) [2,4) [4,6) [6,10) [10,inf) with clustering caps 1, 1, .417, .367, .28.
  static ClassBinning money_flow_default() {
    const double inf = std::numeric_limits<double>::infinity();
    return ClassBinning({{0, 2, 0, 1, "1"},
                         {2, 4, 0, 1, "2"},
                         {4, 6, 0, 0.417, "3"},
                         {6, 10, 0, 0.367, "4"},
                         {10, inf, 0, 0.28, "5"}});
  }

  const std::vector<BinRow>& rows() const noexcept { return rows_; }

  std::size_t row_for_degree(double d) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (d >= rows_[i].d_min && d < rows_[i].d_max) return i;
    throw Error(ErrorKind::data, "degree outside binning");
  }

private:
  std::vector<BinRow> rows_;
};

/// CSV with header d_min,d_max,c_min,c_max,label; "inf" allowed for d_max.
inline ClassBinning parse_binning(std::string_view text) {
  auto rows = detail::parse_csv(text);
  if (rows.size() < 2) throw Error(ErrorKind::config, "binning file has no rows");
  const detail::CsvRow expect{"d_min", "d_max", "c_min", "c_max", "label"};
  if (rows.front() != expect)
    throw Error(ErrorKind::schema, "binning header must be d_min,d_max,c_min,c_max,label");
  std::vector<BinRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != 5) throw Error(ErrorKind::parse, "binning row needs 5 cells", r);
    BinRow b;
    auto num = [&](const std::string& s, double& v) {
      if (s == "inf" || s == "Inf" || s == "infinity") {
        v = std::numeric_limits<double>::infinity();
        return;
      }
      if (!detail::parse_double(s, v)) throw Error(ErrorKind::parse, "bad number '" + s + "'", r);
    };
    num(f[0], b.d_min);
    num(f[1], b.d_max);
    num(f[2], b.c_min);
    num(f[3], b.c_max);
    b.label = f[4];
    out.push_back(std::move(b));
  }
  return ClassBinning(std::move(out));
}

struct BinAssignment {
  std::size_t row = 0;               // binning row selected by degree
  std::optional<std::string> label;  // empty when c falls outside that row's interval
  bool out_of_binning() const noexcept { return !label.has_value(); }
};

/// Matches on degree first, then checks clustering against the same row.
inline std::vector<BinAssignment> bin_vertices(const std::vector<VertexFeatures>& features,
                                               const ClassBinning& binning) {
  std::vector<BinAssignment> out;
  out.reserve(features.size());
  for (const auto& f : features) {
    BinAssignment a;
    a.row = binning.row_for_degree(static_cast<double>(f.degree));
    const auto& r = binning.rows()[a.row];
    if (f.clustering >= r.c_min && f.clustering <= r.c_max) a.label = r.label;
    out.push_back(std::move(a));
  }
  return out;
}

/// vertex,D,c,class with an empty class for out-of-binning vertices.
inline std::string features_csv(const MultiGraph& g, const std::vector<VertexFeatures>& features,
                                const std::vector<BinAssignment>& bins) {
  std::string out;
  detail::append_row(out, {"vertex", "D", "c", "class"});
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    detail::append_row(out, {g.vertices()[v], std::to_string(features[v].degree),
                             detail::format_double(features[v].clustering),
                             bins[v].label.value_or("")});
  return out;
}

/// Binned vertices as a two-attribute dataset (D, c); out-of-binning vertices are skipped.
inline LabeledDataset graph_dataset(const MultiGraph& g, const std::vector<VertexFeatures>& features,
                                    const std::vector<BinAssignment>& bins) {
  AttributeSchema schema({{"D", AttributeKind::continuous}, {"c", AttributeKind::continuous}},
                         "class", "vertex");
  std::vector<Record> recs;
  std::vector<ClassLabel> labels;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!bins[v].label) continue;
    recs.push_back({{static_cast<double>(features[v].degree), features[v].clustering},
                    g.vertices()[v]});
    labels.emplace_back(*bins[v].label);
  }
  return LabeledDataset(std::move(schema), std::move(recs), std::move(labels));
}

}  // namespace nbaudit

#endif  // NBAUDIT_GRAPH_FEATURES_HPP

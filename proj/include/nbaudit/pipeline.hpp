#ifndef NBAUDIT_PIPELINE_HPP
#define NBAUDIT_PIPELINE_HPP

// End-to-end commands behind the nbaudit CLI. Each command reads a RunConfig,
// writes its artifacts under cfg.out and returns the paths it wrote.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nbaudit/classifier.hpp"
#include "nbaudit/config.hpp"
#include "nbaudit/dataset.hpp"
#include "nbaudit/graph_features.hpp"
#include "nbaudit/metrics.hpp"
#include "nbaudit/sampling.hpp"
#include "nbaudit/text_features.hpp"

namespace nbaudit {

inline constexpr int kReportSchemaVersion = 1;

using ojson = nlohmann::ordered_json;

namespace detail {

inline ojson maybe(const MaybeReal& v) { return v ? ojson(*v) : ojson(nullptr); }

inline ojson metrics_json(const BinaryMetrics& m) {
  return {{"accuracy", maybe(m.accuracy)},
          {"precision", maybe(m.precision)},
          {"recall", maybe(m.recall)},
          {"specificity", maybe(m.specificity)},
          {"f1", maybe(m.f1)}};
}

inline ojson variability_json(const VariabilityReport& v) {
  return {{"range", {v.min, v.max}},
          {"mean", v.mean},
          {"standard_deviation", v.standard_deviation},
          {"interquartile_range", v.interquartile_range},
          {"skewness", maybe(v.skewness)},
          {"coefficient_of_variation", maybe(v.coefficient_of_variation)}};
}

inline ojson ks_json(const KsResult& k) {
  return {{"d", k.d}, {"critical", k.critical}, {"m", k.m}, {"rejected", k.rejected()}};
}

inline std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

/// Report skeleton; "timestamp" is the only field that varies between identical runs.
class ReportBuilder {
public:
  ReportBuilder(std::string command, const RunConfig& cfg)
      : start_(std::chrono::steady_clock::now()), started_at_(utc_now()) {
    doc_["schema_version"] = kReportSchemaVersion;
    doc_["command"] = std::move(command);
    doc_["seed"] = *cfg.seed;
    doc_["mode"] = cfg.mode;
  }

  ojson& doc() { return doc_; }

  std::string finish() {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_);
    doc_["timestamp"] = {{"generated_at", started_at_}, {"elapsed_ms", ms.count()}};
    return doc_.dump(2) + "\n";
  }

private:
  std::chrono::steady_clock::time_point start_;
  std::string started_at_;
  ojson doc_;
};

inline void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create directory '" + dir + "': " + ec.message());
}

inline nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, "invalid JSON in '" + path + "': " + e.what());
  }
}

inline std::string joint_score_note() { return "joint scores may exceed 1 (bounded by 1/prior^(k-1))"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Population loading

struct Population {
  LabeledDataset data;
  std::optional<KeywordDictionary> dictionary;  // text mode
  std::size_t out_of_binning = 0;               // graph mode
};

inline AttributeSchema schema_for(const RunConfig& cfg, std::string_view csv_text) {
  if (cfg.columns.empty()) return infer_schema(csv_text, cfg.label_column, cfg.id_column);
  std::vector<Column> cols;
  for (auto& [name, kind] : parse_column_list(cfg.columns))
    cols.push_back({name, parse_attribute_kind(kind)});
  return AttributeSchema(std::move(cols), cfg.label_column, cfg.id_column);
}

inline Corpus load_corpus(const RunConfig& cfg) {
  if (cfg.input.empty()) throw Error(ErrorKind::config, "'input' is required");
  if (cfg.format == "csv") return parse_message_csv(detail::read_file(cfg.input));
  if (cfg.format == "lines") {
    if (cfg.labels_file.empty()) throw Error(ErrorKind::config, "lines format needs 'labels_file'");
    return parse_message_lines(detail::read_file(cfg.input), detail::read_file(cfg.labels_file));
  }
  throw Error(ErrorKind::config, "text format must be csv or lines");
}

inline std::set<std::string> load_stopword_set(const RunConfig& cfg) {
  if (cfg.stopwords.empty()) return default_stopwords();
  return parse_stopwords(detail::read_file(cfg.stopwords));
}

inline ClassBinning load_binning(const RunConfig& cfg) {
  if (cfg.binning.empty()) return ClassBinning::money_flow_default();
  return parse_binning(detail::read_file(cfg.binning));
}

/// Tabular/graph populations; text needs a dictionary (see load_text_population).
inline Population load_population(const RunConfig& cfg,
                                  const std::optional<KeywordDictionary>& dict = std::nullopt) {
  if (cfg.input.empty()) throw Error(ErrorKind::config, "'input' is required");
  if (cfg.mode == "tabular") {
    auto text = detail::read_file(cfg.input);
    if (cfg.format == "csv") return {parse_csv_dataset(text, schema_for(cfg, text)), {}, 0};
    if (cfg.format == "jsonl") {
      if (cfg.columns.empty()) throw Error(ErrorKind::config, "jsonl input needs 'columns'");
      return {parse_jsonl_dataset(text, schema_for(cfg, "")), {}, 0};
    }
    throw Error(ErrorKind::config, "tabular format must be csv or jsonl");
  }
  if (cfg.mode == "graph") {
    auto g = load_edges(cfg.input);
    auto feats = vertex_features(g);
    auto bins = bin_vertices(feats, load_binning(cfg));
    std::size_t dropped = 0;
    for (const auto& b : bins) dropped += b.out_of_binning();
    if (dropped == bins.size()) throw Error(ErrorKind::data, "no vertex falls inside the binning");
    return {graph_dataset(g, feats, bins), {}, dropped};
  }
  // text
  if (!dict) throw Error(ErrorKind::config, "text population needs a keyword dictionary");
  auto corpus = load_corpus(cfg);
  return {vectorize(corpus.messages, corpus.labels, *dict), *dict, 0};
}

inline Population load_text_population_with_saved_dictionary(const RunConfig& cfg) {
  auto dict = dictionary_from_json(detail::read_json(cfg.dictionary_path()));
  return load_population(cfg, dict);
}

inline Population load_any_population(const RunConfig& cfg) {
  if (cfg.mode == "text") return load_text_population_with_saved_dictionary(cfg);
  return load_population(cfg);
}

// ---------------------------------------------------------------------------
// Shared report pieces

inline ojson classification_json(const PosteriorTable& table, std::span<const ClassLabel> truth) {
  auto cm = confusion(table, truth);
  ojson j;
  auto& labels = j["labels"] = ojson::array();
  for (const auto& l : cm.labels) labels.push_back(l.name());
  j["confusion_matrix"] = cm.counts;
  j["confusion_matrix_normalized"] = cm.normalized();
  j["total"] = cm.total();
  std::uint64_t diag = 0;
  for (std::size_t c = 0; c < cm.counts.size(); ++c) diag += cm.counts[c][c];
  j["accuracy"] = cm.total() ? static_cast<double>(diag) / static_cast<double>(cm.total()) : 0.0;
  auto& per = j["per_class"] = ojson::object();
  for (const auto& l : cm.labels) per[l.name()] = detail::metrics_json(binary_metrics(cm, l));
  j["macro"] = detail::metrics_json(macro_metrics(cm));
  std::set<ClassLabel> present(truth.begin(), truth.end());
  if (present.size() >= 2) {
    auto auc = macro_auc(table, truth);
    auto& pa = j["auc_per_class"] = ojson::object();
    for (std::size_t c = 0; c < table.labels.size(); ++c)
      pa[table.labels[c].name()] =
          auc.per_class[c] ? ojson(*auc.per_class[c]) : ojson(nullptr);
    j["auc_macro"] = auc.auc;
  } else {
    j["auc_macro"] = nullptr;
  }
  return j;
}

inline std::string roc_csv(const PosteriorTable& table, std::span<const ClassLabel> truth) {
  std::string out;
  detail::append_row(out, {"class", "fpr", "tpr", "threshold"});
  for (const auto& l : table.labels) {
    bool present = std::find(truth.begin(), truth.end(), l) != truth.end();
    bool all = std::all_of(truth.begin(), truth.end(), [&](const ClassLabel& t) { return t == l; });
    if (!present || all) continue;
    for (const auto& p : roc_auc(table, truth, l).points)
      detail::append_row(out, {l.name(), detail::format_double(p.fpr), detail::format_double(p.tpr),
                               detail::format_double(p.threshold)});
  }
  return out;
}

inline ojson model_summary_json(const NaiveBayesModel& m) {
  ojson j;
  auto& pri = j["priors"] = ojson::object();
  for (std::size_t c = 0; c < m.num_classes(); ++c) pri[m.labels()[c].name()] = m.prior(c);
  j["attributes"] = m.attributes().size();
  j["continuous_attributes"] = m.continuous_attributes().size();
  j["count_attributes"] = m.count_attributes().size();
  return j;
}

// ---------------------------------------------------------------------------
// train

inline std::vector<std::string> cmd_train(const RunConfig& cfg) {
  cfg.require_seed();
  detail::ReportBuilder report("train", cfg);
  SplitSpec spec{cfg.train_fraction, *cfg.seed};
  spec.validate();

  std::optional<Population> pop;
  std::vector<std::size_t> train_idx, test_idx;
  if (cfg.mode == "text") {
    auto corpus = load_corpus(cfg);
    std::tie(train_idx, test_idx) = split_indices(corpus.messages.size(), spec);
    std::vector<std::string> train_msgs;
    for (auto i : train_idx) train_msgs.push_back(corpus.messages[i]);
    auto dict = build_dictionary(train_msgs, load_stopword_set(cfg), cfg.min_count);
    pop = Population{vectorize(corpus.messages, corpus.labels, dict), dict, 0};
  } else {
    pop = load_population(cfg);
    std::tie(train_idx, test_idx) = split_indices(pop->data.size(), spec);
  }
  auto train = pop->data.subset(train_idx);
  auto test = pop->data.subset(test_idx);
  auto model = fit(train, FitOptions{cfg.alpha});
  auto table = classify_all(model, test);

  auto& doc = report.doc();
  doc["data"] = {{"records", pop->data.size()},
                 {"attributes", pop->data.schema().size()},
                 {"train_records", train.size()},
                 {"test_records", test.size()},
                 {"train_fraction", cfg.train_fraction}};
  if (cfg.mode == "graph") doc["data"]["out_of_binning_vertices"] = pop->out_of_binning;
  doc["model"] = model_summary_json(model);
  doc["test"] = classification_json(table, test.labels());

  detail::ensure_dir(cfg.out);
  std::vector<std::string> written;
  auto put = [&](const std::string& path, const std::string& content) {
    detail::write_file(path, content);
    written.push_back(path);
  };
  put(cfg.model_path(), model_to_json(model).dump(2) + "\n");
  if (pop->dictionary) put(cfg.dictionary_path(), dictionary_to_json(*pop->dictionary).dump(2) + "\n");
  put(cfg.out + "/roc.csv", roc_csv(table, test.labels()));
  put(cfg.out + "/train_report.json", report.finish());
  return written;
}

// ---------------------------------------------------------------------------
// classify

inline std::vector<std::string> cmd_classify(const RunConfig& cfg) {
  cfg.require_seed();
  detail::ReportBuilder report("classify", cfg);
  auto model = model_from_json(detail::read_json(cfg.model_path()));
  auto pop = load_any_population(cfg);
  auto table = classify_all(model, pop.data);

  std::string csv;
  detail::CsvRow header{"id", "label", "predicted"};
  for (const auto& l : table.labels) header.push_back("p_" + l.name());
  detail::append_row(csv, header);
  for (std::size_t i = 0; i < table.size(); ++i) {
    detail::CsvRow row{pop.data.records()[i].id, pop.data.labels()[i].name(),
                       table.predicted_label(i).name()};
    for (double p : table.rows[i]) row.push_back(detail::format_double(p));
    detail::append_row(csv, row);
  }

  report.doc()["records"] = pop.data.size();
  report.doc()["population"] = classification_json(table, pop.data.labels());
  detail::ensure_dir(cfg.out);
  detail::write_file(cfg.out + "/posteriors.csv", csv);
  detail::write_file(cfg.out + "/classify_report.json", report.finish());
  return {cfg.out + "/posteriors.csv", cfg.out + "/classify_report.json"};
}

// ---------------------------------------------------------------------------
// sample

inline ojson evidence_json(const EvidenceSet& ev, const LabeledDataset& data,
                           std::size_t class_size) {
  ojson j;
  j["strategy"] = std::string(to_string(ev.strategy));
  j["class"] = ev.label.name();
  auto& params = j["params"] = ojson::object();
  if (ev.bounds) {
    params["lower_percentile"] = ev.bounds->lower();
    params["upper_percentile"] = ev.bounds->upper();
    params["confidence"] = ev.bounds->confidence();
  }
  if (ev.thresholds) {
    params["sigma1"] = ev.thresholds->sigma1;
    if (ev.strategy != Strategy::item && ev.strategy != Strategy::hybrid) {
      params["sigma2"] = ev.thresholds->sigma2;
      params["sigma3"] = ev.thresholds->sigma3;
    }
  }
  if (ev.joint_score) {
    j["joint_score"] = *ev.joint_score;
    j["joint_score_note"] = detail::joint_score_note();
  }
  j["class_size"] = class_size;
  j["size"] = ev.size();
  j["ri"] = ev.ri ? ojson(*ev.ri) : ojson(nullptr);
  j["record_indices"] = ev.indices;
  auto& ids = j["record_ids"] = ojson::array();
  for (auto i : ev.indices) ids.push_back(data.records()[i].id);
  j["scores"] = ev.scores;
  j["warnings"] = ev.warnings;
  return j;
}

inline std::string histogram_csv(const std::vector<std::pair<ClassPosteriorDistribution, EvidenceSet>>& sets,
                                 std::size_t bins) {
  if (bins == 0) throw Error(ErrorKind::config, "histogram_bins must be >= 1");
  std::string out;
  detail::append_row(out, {"class", "bin_lower", "bin_upper", "class_count", "evidence_count"});
  auto bin_of = [&](double s) {
    auto b = static_cast<std::size_t>(std::floor(s * static_cast<double>(bins)));
    return std::min(b, bins - 1);
  };
  for (const auto& [dist, ev] : sets) {
    std::vector<std::uint64_t> cc(bins, 0), ec(bins, 0);
    for (double s : dist.scores) ++cc[bin_of(s)];
    for (double s : ev.scores) ++ec[bin_of(s)];
    for (std::size_t b = 0; b < bins; ++b)
      detail::append_row(out, {dist.label.name(),
                               detail::format_double(static_cast<double>(b) / static_cast<double>(bins)),
                               detail::format_double(static_cast<double>(b + 1) / static_cast<double>(bins)),
                               std::to_string(cc[b]), std::to_string(ec[b])});
  }
  return out;
}

inline std::vector<std::string> cmd_sample(const RunConfig& cfg) {
  cfg.require_seed();
  cfg.validate_sampling();
  detail::ReportBuilder report("sample", cfg);
  auto model = model_from_json(detail::read_json(cfg.model_path()));
  auto pop = load_any_population(cfg);
  auto table = classify_all(model, pop.data);

  std::vector<ClassLabel> targets;
  if (cfg.target_class.empty()) {
    for (const auto& l : pop.data.label_set())
      if (std::find(table.labels.begin(), table.labels.end(), l) != table.labels.end())
        targets.push_back(l);
  } else {
    targets.emplace_back(cfg.target_class);
  }

  std::optional<PercentileBounds> bounds;
  if (cfg.strategy != "item")
    bounds = cfg.confidence ? PercentileBounds::from_confidence(*cfg.confidence)
                            : PercentileBounds(*cfg.lower, *cfg.upper);
  Thresholds th;
  if (cfg.sigma1) th.sigma1 = *cfg.sigma1;
  if (cfg.sigma2) th.sigma2 = *cfg.sigma2;
  th.sigma3 = cfg.sigma3.value_or(th.sigma2);

  auto& doc = report.doc();
  doc["format"] = "nbaudit-evidence";
  doc["strategy"] = cfg.strategy;
  doc["records"] = pop.data.size();
  auto& sets = doc["evidence_sets"] = ojson::array();
  std::vector<std::pair<ClassPosteriorDistribution, EvidenceSet>> for_hist;
  for (const auto& label : targets) {
    auto dist = build_distribution(table, pop.data, label);
    std::optional<EvidenceSet> ev;
    if (cfg.strategy == "user") ev = user_based_sample(dist, *bounds);
    else if (cfg.strategy == "hybrid") ev = hybrid_sample(dist, *bounds, th);
    else ev = item_based_sample(dist, th.sigma1);
    auto j = evidence_json(*ev, pop.data, dist.size());
    j["prior"] = dist.prior;
    if (cfg.strategy == "item" && cfg.sigma2) {
      auto gs = item_based_group_search(dist, th, {cfg.max_k, cfg.candidate_cap});
      auto& groups = j["groups"] = ojson::array();
      for (const auto& level : gs.levels)
        for (const auto& g : level) groups.push_back(evidence_json(g, pop.data, dist.size()));
    }
    sets.push_back(std::move(j));
    for_hist.emplace_back(std::move(dist), std::move(*ev));
  }

  detail::ensure_dir(cfg.out);
  detail::write_file(cfg.out + "/histogram.csv", histogram_csv(for_hist, cfg.histogram_bins));
  detail::write_file(cfg.evidence_path(), report.finish());
  return {cfg.evidence_path(), cfg.out + "/histogram.csv"};
}

// ---------------------------------------------------------------------------
// evaluate

inline std::vector<std::string> cmd_evaluate(const RunConfig& cfg) {
  cfg.require_seed();
  detail::ReportBuilder report("evaluate", cfg);
  auto pop = load_any_population(cfg);
  auto evidence_doc = detail::read_json(cfg.evidence_path());
  const auto& data = pop.data;
  const auto& cols = data.schema().columns();

  auto& doc = report.doc();
  auto& out_sets = doc["evidence_sets"] = ojson::array();
  std::vector<std::size_t> pooled_class, pooled_evidence;

  try {
    if (evidence_doc.at("records").get<std::size_t>() != data.size())
      throw Error(ErrorKind::data, "evidence was drawn from a population of different size");
    for (const auto& es : evidence_doc.at("evidence_sets")) {
      ClassLabel label(es.at("class").get<std::string>());
      auto members = class_members(data, label);
      auto drawn = es.at("record_indices").get<std::vector<std::size_t>>();
      auto ids = es.at("record_ids").get<std::vector<std::string>>();
      for (std::size_t t = 0; t < drawn.size(); ++t)
        if (drawn[t] >= data.size() || data.records()[drawn[t]].id != ids[t])
          throw Error(ErrorKind::data, "evidence record " + ids[t] + " does not match the population");

      ojson j;
      j["class"] = label.name();
      j["strategy"] = es.at("strategy");
      j["class_size"] = members.size();
      j["size"] = drawn.size();
      j["ri"] = es.at("ri");
      if (drawn.empty()) {
        j["warnings"] = {"empty evidence set: nothing to compare"};
        out_sets.push_back(std::move(j));
        continue;
      }
      auto cls = data.subset(members);
      auto ev = data.subset(drawn);
      auto ks = ks_multivariate(cls, ev, cfg.ks_m);
      auto& ksj = j["ks"];
      ksj["summary"] = detail::ks_json(ks.summary);
      auto& per = ksj["per_attribute"] = ojson::object();
      for (std::size_t a = 0; a < cols.size(); ++a) per[cols[a].name] = detail::ks_json(ks.per_attribute[a]);

      auto& var = j["variability"] = ojson::object();
      for (std::size_t a = 0; a < cols.size(); ++a) {
        ojson v;
        auto cc = cls.column(a);
        v["class"] = cc.size() >= 2 ? detail::variability_json(variability(cc)) : ojson(nullptr);
        auto ec = ev.column(a);
        v["evidence"] = ec.size() >= 2 ? detail::variability_json(variability(ec)) : ojson(nullptr);
        var[cols[a].name] = std::move(v);
      }

      if (pop.dictionary) {
        TokenCounts counts;
        for (const auto& r : data.records())
          counts.emplace_back(r.values.begin(), r.values.end());
        auto top_c = top_keywords(*pop.dictionary, aggregate(counts, members), cfg.top_k);
        auto top_e = top_keywords(*pop.dictionary, aggregate(counts, drawn), cfg.top_k);
        auto rank_json = [](const KeywordRanking& r) {
          auto a = ojson::array();
          for (const auto& [t, n] : r) a.push_back({t, n});
          return a;
        };
        j["top_keywords"] = {{"class", rank_json(top_c)},
                             {"evidence", rank_json(top_e)},
                             {"ranking_preserved", ranking_preserved(top_c, top_e)}};
      }
      pooled_class.insert(pooled_class.end(), members.begin(), members.end());
      pooled_evidence.insert(pooled_evidence.end(), drawn.begin(), drawn.end());
      out_sets.push_back(std::move(j));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed evidence document: ") + e.what());
  }

  if (!pooled_evidence.empty()) {
    std::sort(pooled_class.begin(), pooled_class.end());
    std::sort(pooled_evidence.begin(), pooled_evidence.end());
    auto ks = ks_multivariate(data.subset(pooled_class), data.subset(pooled_evidence), cfg.ks_m);
    auto& p = doc["pooled"];
    p["population_size"] = pooled_class.size();
    p["evidence_size"] = pooled_evidence.size();
    p["ks_summary"] = detail::ks_json(ks.summary);
    auto& per = p["ks_per_attribute"] = ojson::object();
    for (std::size_t a = 0; a < cols.size(); ++a) per[cols[a].name] = detail::ks_json(ks.per_attribute[a]);
  }

  detail::ensure_dir(cfg.out);
  detail::write_file(cfg.out + "/evaluate_report.json", report.finish());
  return {cfg.out + "/evaluate_report.json"};
}

// ---------------------------------------------------------------------------
// graph-features

inline std::vector<std::string> cmd_graph_features(const RunConfig& cfg) {
  cfg.require_seed();
  if (cfg.input.empty()) throw Error(ErrorKind::config, "'input' is required");
  detail::ReportBuilder report("graph-features", cfg);
  auto g = load_edges(cfg.input);
  auto binning = load_binning(cfg);
  auto feats = vertex_features(g);
  auto bins = bin_vertices(feats, binning);

  std::uint64_t degree_sum = 0;
  for (const auto& f : feats) degree_sum += f.degree;
  auto& doc = report.doc();
  doc["vertices"] = g.vertex_count();
  doc["edge_multiplicity"] = g.total_multiplicity();
  doc["degree_sum"] = degree_sum;
  auto& per = doc["class_counts"] = ojson::object();
  std::size_t out_of = 0;
  for (const auto& row : binning.rows()) per[row.label] = 0;
  for (const auto& b : bins) {
    if (b.label) per[*b.label] = per[*b.label].get<std::size_t>() + 1;
    else ++out_of;
  }
  doc["out_of_binning"] = out_of;

  detail::ensure_dir(cfg.out);
  detail::write_file(cfg.out + "/features.csv", features_csv(g, feats, bins));
  detail::write_file(cfg.out + "/graph_report.json", report.finish());
  return {cfg.out + "/features.csv", cfg.out + "/graph_report.json"};
}

// ---------------------------------------------------------------------------
// text-features

inline std::vector<std::string> cmd_text_features(const RunConfig& cfg) {
  cfg.require_seed();
  detail::ReportBuilder report("text-features", cfg);
  auto corpus = load_corpus(cfg);
  auto dict = build_dictionary(corpus.messages, load_stopword_set(cfg), cfg.min_count);
  auto data = vectorize(corpus.messages, corpus.labels, dict);
  auto counts = count_all(corpus.messages, dict);

  auto rank_json = [](const KeywordRanking& r) {
    auto a = ojson::array();
    for (const auto& [t, n] : r) a.push_back({t, n});
    return a;
  };
  auto& doc = report.doc();
  doc["messages"] = corpus.messages.size();
  doc["dictionary_size"] = dict.size();
  doc["top_keywords_overall"] = rank_json(top_keywords(dict, aggregate(counts), cfg.top_k));
  auto& per = doc["top_keywords_per_class"] = ojson::object();
  for (const auto& l : data.label_set())
    per[l.name()] = rank_json(top_keywords(dict, aggregate(counts, class_members(data, l)), cfg.top_k));

  detail::ensure_dir(cfg.out);
  detail::write_file(cfg.dictionary_path(), dictionary_to_json(dict).dump(2) + "\n");
  detail::write_file(cfg.out + "/counts.csv", to_csv(data));
  detail::write_file(cfg.out + "/text_report.json", report.finish());
  return {cfg.dictionary_path(), cfg.out + "/counts.csv", cfg.out + "/text_report.json"};
}

/// Exit code for a failure category: 2 for usage/config/schema, 1 otherwise.
inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage:
    case ErrorKind::config:
    case ErrorKind::schema: return 2;
    default: return 1;
  }
}

}  // namespace nbaudit

#endif  // NBAUDIT_PIPELINE_HPP

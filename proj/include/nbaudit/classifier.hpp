#ifndef NBAUDIT_CLASSIFIER_HPP
#define NBAUDIT_CLASSIFIER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nbaudit/dataset.hpp"
#include "nbaudit/error.hpp"

namespace nbaudit {

struct GaussianParams {
  double mean = 0.0;
  double variance = 1.0;
};

/// One multinomial over all count attributes of a class.
struct MultinomialParams {
  std::vector<double> token_log_probs;  // aligned with the model's count attributes
  double alpha = 1.0;
};

struct FitOptions {
  double alpha = 1.0;                // Laplace smoothing for count attributes
  double variance_rel_floor = 1e-9;  // times (attribute range)^2
  double variance_abs_floor = 1e-12;
};

/// Naive Bayes with a Gaussian likelihood per continuous attribute and a
/// multinomial likelihood over the count attributes. Immutable after construction.
class NaiveBayesModel {
public:
  NaiveBayesModel(std::vector<ClassLabel> labels, std::vector<double> log_priors,
                  std::vector<Column> attributes,
                  std::vector<std::vector<GaussianParams>> gaussian,
                  std::vector<MultinomialParams> multinomial)
      : labels_(std::move(labels)),
        log_priors_(std::move(log_priors)),
        attributes_(std::move(attributes)),
        gaussian_(std::move(gaussian)),
        multinomial_(std::move(multinomial)) {
    for (std::size_t j = 0; j < attributes_.size(); ++j)
      (attributes_[j].kind == AttributeKind::continuous ? continuous_ : count_).push_back(j);
    validate();
  }

  const std::vector<ClassLabel>& labels() const noexcept { return labels_; }
  const std::vector<double>& log_priors() const noexcept { return log_priors_; }
  const std::vector<Column>& attributes() const noexcept { return attributes_; }
  std::size_t num_classes() const noexcept { return labels_.size(); }

  /// [class][k] for the k-th continuous attribute.
  const std::vector<std::vector<GaussianParams>>& gaussian() const noexcept { return gaussian_; }
  /// [class]; empty when the schema has no count attributes.
  const std::vector<MultinomialParams>& multinomial() const noexcept { return multinomial_; }
  const std::vector<std::size_t>& continuous_attributes() const noexcept { return continuous_; }
  const std::vector<std::size_t>& count_attributes() const noexcept { return count_; }

  std::size_t label_index(const ClassLabel& l) const {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) throw Error(ErrorKind::data, "label '" + l.name() + "' not in model");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  double prior(std::size_t c) const { return std::exp(log_priors_.at(c)); }

  /// log Pr(C_c) + sum_k log Pr(x_k | C_c), i.e. the log of the unnormalized posterior.
  std::vector<double> log_joint(std::span<const double> x) const {
    check_record(x);
    std::vector<double> out(labels_.size());
    for (std::size_t c = 0; c < labels_.size(); ++c) {
      double s = log_priors_[c];
      for (std::size_t k = 0; k < continuous_.size(); ++k) {
        const auto& g = gaussian_[c][k];
        double d = x[continuous_[k]] - g.mean;
        s += -0.5 * std::log(2.0 * std::numbers::pi * g.variance) - d * d / (2.0 * g.variance);
      }
      if (!count_.empty()) {
        const auto& lp = multinomial_[c].token_log_probs;
        for (std::size_t k = 0; k < count_.size(); ++k) {
          double n = x[count_[k]];
          if (n != 0.0) s += n * lp[k];
        }
      }
      out[c] = s;
    }
    return out;
  }

  void check_record(std::span<const double> x) const {
    if (x.size() != attributes_.size())
      throw Error(ErrorKind::schema, "record has " + std::to_string(x.size()) +
                                         " attributes, model expects " +
                                         std::to_string(attributes_.size()));
    for (auto j : count_)
      if (x[j] < 0 || x[j] != std::floor(x[j]))
        throw Error(ErrorKind::data, "attribute '" + attributes_[j].name + "' is not a count");
  }

private:
  void validate() const {
    std::size_t nc = labels_.size();
    if (nc < 2) throw Error(ErrorKind::data, "need >= 2 classes");
    if (log_priors_.size() != nc) throw Error(ErrorKind::data, "prior count mismatch");
    double total = 0;
    for (double lp : log_priors_) total += std::exp(lp);
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::data, "priors do not sum to 1");
    if (gaussian_.size() != (continuous_.empty() ? 0 : nc))
      throw Error(ErrorKind::data, "gaussian block count mismatch");
    for (const auto& row : gaussian_) {
      if (row.size() != continuous_.size())
        throw Error(ErrorKind::data, "gaussian parameter count mismatch");
      for (const auto& g : row)
        if (!(g.variance > 0) || !std::isfinite(g.mean))
          throw Error(ErrorKind::data, "invalid gaussian parameters");
    }
    if (multinomial_.size() != (count_.empty() ? 0 : nc))
      throw Error(ErrorKind::data, "multinomial block count mismatch");
    {
      for (const auto& m : multinomial_) {
        if (m.token_log_probs.size() != count_.size())
          throw Error(ErrorKind::data, "multinomial parameter count mismatch");
        if (!(m.alpha > 0)) throw Error(ErrorKind::data, "smoothing alpha must be > 0");
        double s = 0;
        for (double lp : m.token_log_probs) s += std::exp(lp);
        if (std::abs(s - 1.0) > 1e-12)
          throw Error(ErrorKind::data, "token probabilities do not sum to 1");
      }
    }
  }

  std::vector<ClassLabel> labels_;
  std::vector<double> log_priors_;
  std::vector<Column> attributes_;
  std::vector<std::vector<GaussianParams>> gaussian_;
  std::vector<MultinomialParams> multinomial_;
  std::vector<std::size_t> continuous_;
  std::vector<std::size_t> count_;
};

/// Per-record class posteriors and argmax decisions, in model label order.
struct PosteriorTable {
  std::vector<ClassLabel> labels;
  std::vector<double> priors;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> predicted;

  std::size_t size() const noexcept { return rows.size(); }

  std::size_t label_index(const ClassLabel& l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw Error(ErrorKind::data, "label '" + l.name() + "' not in table");
    return static_cast<std::size_t>(it - labels.begin());
  }

  std::vector<double> column(std::size_t c) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(c));
    return out;
  }

  const ClassLabel& predicted_label(std::size_t i) const { return labels.at(predicted.at(i)); }
};

// ---------------------------------------------------------------------------

inline NaiveBayesModel fit(const LabeledDataset& train, const FitOptions& opt = {}) {
  if (!(opt.alpha > 0)) throw Error(ErrorKind::config, "smoothing alpha must be > 0");
  auto labels = train.label_set();
  if (labels.size() < 2) throw Error(ErrorKind::data, "need >= 2 classes");
  const auto& cols = train.schema().columns();
  const std::size_t nc = labels.size();
  const double n = static_cast<double>(train.size());

  std::vector<std::size_t> cls(train.size());
  std::vector<double> class_n(nc, 0.0);
  for (std::size_t i = 0; i < train.size(); ++i) {
    cls[i] = static_cast<std::size_t>(
        std::lower_bound(labels.begin(), labels.end(), train.labels()[i]) - labels.begin());
    class_n[cls[i]] += 1.0;
  }
  std::vector<double> log_priors(nc);
  for (std::size_t c = 0; c < nc; ++c) log_priors[c] = std::log(class_n[c] / n);

  std::vector<std::size_t> cont, cnt;
  for (std::size_t j = 0; j < cols.size(); ++j)
    (cols[j].kind == AttributeKind::continuous ? cont : cnt).push_back(j);

  std::vector<std::vector<GaussianParams>> gaussian(cont.empty() ? 0 : nc,
                                                    std::vector<GaussianParams>(cont.size()));
  for (std::size_t k = 0; k < cont.size(); ++k) {
    const std::size_t j = cont[k];
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::vector<double> sum(nc, 0.0);
    for (std::size_t i = 0; i < train.size(); ++i) {
      double v = train.records()[i].values[j];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum[cls[i]] += v;
    }
    std::vector<double> sq(nc, 0.0);
    for (std::size_t c = 0; c < nc; ++c) gaussian[c][k].mean = sum[c] / class_n[c];
    for (std::size_t i = 0; i < train.size(); ++i) {
      double d = train.records()[i].values[j] - gaussian[cls[i]][k].mean;
      sq[cls[i]] += d * d;
    }
    const double range = hi - lo;
    const double floor = std::max(opt.variance_rel_floor * range * range, opt.variance_abs_floor);
    for (std::size_t c = 0; c < nc; ++c)
      gaussian[c][k].variance = std::max(sq[c] / class_n[c], floor);
  }

  std::vector<MultinomialParams> multinomial;
  if (!cnt.empty()) {
    const double vocab = static_cast<double>(cnt.size());
    std::vector<std::vector<double>> tot(nc, std::vector<double>(cnt.size(), 0.0));
    for (std::size_t i = 0; i < train.size(); ++i)
      for (std::size_t k = 0; k < cnt.size(); ++k)
        tot[cls[i]][k] += train.records()[i].values[cnt[k]];
    for (std::size_t c = 0; c < nc; ++c) {
      double total = std::accumulate(tot[c].begin(), tot[c].end(), 0.0);
      MultinomialParams m;
      m.alpha = opt.alpha;
      for (double t : tot[c])
        m.token_log_probs.push_back(std::log((t + opt.alpha) / (total + opt.alpha * vocab)));
      multinomial.push_back(std::move(m));
    }
  }
  return NaiveBayesModel(std::move(labels), std::move(log_priors), cols, std::move(gaussian),
                         std::move(multinomial));
}

/// Normalizes log scores into probabilities with log-sum-exp.
inline std::vector<double> softmax_log(std::span<const double> log_scores) {
  double m = *std::max_element(log_scores.begin(), log_scores.end());
  double s = 0;
  for (double v : log_scores) s += std::exp(v - m);
  double lse = m + std::log(s);
  std::vector<double> out;
  out.reserve(log_scores.size());
  for (double v : log_scores) out.push_back(std::exp(v - lse));
  return out;
}

inline std::vector<double> posterior(const NaiveBayesModel& model, const Record& x) {
  auto lj = model.log_joint(x.values);
  return softmax_log(lj);
}

/// Index of the maximal score; the first maximal entry wins ties.
inline std::size_t argmax_first(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

inline ClassLabel predict(const NaiveBayesModel& model, const Record& x) {
  auto lj = model.log_joint(x.values);
  return model.labels()[argmax_first(lj)];
}

inline void check_schema(const NaiveBayesModel& model, const AttributeSchema& schema) {
  if (schema.columns() != model.attributes())
    throw Error(ErrorKind::schema, "dataset attributes do not match the model");
}

inline PosteriorTable classify_all(const NaiveBayesModel& model, const LabeledDataset& data) {
  check_schema(model, data.schema());
  PosteriorTable t;
  t.labels = model.labels();
  for (std::size_t c = 0; c < model.num_classes(); ++c) t.priors.push_back(model.prior(c));
  t.rows.reserve(data.size());
  t.predicted.reserve(data.size());
  for (const auto& r : data.records()) {
    auto lj = model.log_joint(r.values);
    t.predicted.push_back(argmax_first(lj));
    t.rows.push_back(softmax_log(lj));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Versioned JSON document

inline constexpr int kModelSchemaVersion = 1;

inline nlohmann::ordered_json model_to_json(const NaiveBayesModel& m) {
  nlohmann::ordered_json j;
  j["format"] = "nbaudit-naive-bayes";
  j["schema_version"] = kModelSchemaVersion;
  auto& labels = j["labels"] = nlohmann::ordered_json::array();
  for (const auto& l : m.labels()) labels.push_back(l.name());
  j["log_priors"] = m.log_priors();
  auto& attrs = j["attributes"] = nlohmann::ordered_json::array();
  for (const auto& c : m.attributes())
    attrs.push_back({{"name", c.name}, {"kind", std::string(to_string(c.kind))}});
  auto& g = j["gaussian"] = nlohmann::ordered_json::array();
  for (const auto& row : m.gaussian()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : row) arr.push_back({{"mean", p.mean}, {"variance", p.variance}});
    g.push_back(std::move(arr));
  }
  auto& mn = j["multinomial"] = nlohmann::ordered_json::array();
  for (const auto& p : m.multinomial())
    mn.push_back({{"alpha", p.alpha}, {"token_log_probs", p.token_log_probs}});
  return j;
}

inline NaiveBayesModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "nbaudit-naive-bayes")
      throw Error(ErrorKind::parse, "not a naive Bayes model document");
    if (j.at("schema_version").get<int>() != kModelSchemaVersion)
      throw Error(ErrorKind::parse, "unsupported model schema_version");
    std::vector<ClassLabel> labels;
    for (const auto& l : j.at("labels")) labels.emplace_back(l.get<std::string>());
    std::vector<Column> attrs;
    for (const auto& a : j.at("attributes"))
      attrs.push_back({a.at("name").get<std::string>(),
                       parse_attribute_kind(a.at("kind").get<std::string>())});
    std::vector<std::vector<GaussianParams>> g;
    for (const auto& row : j.at("gaussian")) {
      std::vector<GaussianParams> r;
      for (const auto& p : row)
        r.push_back({p.at("mean").get<double>(), p.at("variance").get<double>()});
      g.push_back(std::move(r));
    }
    std::vector<MultinomialParams> mn;
    for (const auto& p : j.at("multinomial"))
      mn.push_back({p.at("token_log_probs").get<std::vector<double>>(), p.at("alpha").get<double>()});
    return NaiveBayesModel(std::move(labels), j.at("log_priors").get<std::vector<double>>(),
                           std::move(attrs), std::move(g), std::move(mn));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed model document: ") + e.what());
  }
}

}  // namespace nbaudit

#endif  // NBAUDIT_CLASSIFIER_HPP
